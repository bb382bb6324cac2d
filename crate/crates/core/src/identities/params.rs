//! Parameter specializations and seeded sampling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{rat, rat_int, Rat, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "formal-q")]
    FormalQ,
    #[serde(rename = "rational-point")]
    RationalPoint,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::FormalQ => "formal-q",
            Mode::RationalPoint => "rational-point",
        }
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "formal-q" | "formal" => Ok(Mode::FormalQ),
            "rational-point" | "rational" => Ok(Mode::RationalPoint),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// A named parameter: an integer, a rational, or `c·q^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Rat(Rat),
    QPow { c: Rat, e: i64 },
}

impl Value {
    pub fn qpow(e: i64) -> Value {
        Value::QPow { c: Rat::one(), e }
    }

    pub fn to_scalar(&self, ring: &Ring) -> Scalar {
        match self {
            Value::Int(i) => Scalar::constant(rat_int(*i)),
            Value::Rat(r) => Scalar::constant(r.clone()),
            Value::QPow { c, e } => ring.q_pow(*e).scale(c),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Rat(r) => write!(f, "{r}"),
            Value::QPow { c, e } if c.is_one() => write!(f, "q^{e}"),
            Value::QPow { c, e } => write!(f, "{c}*q^{e}"),
        }
    }
}

impl FromStr for Value {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("parameter value {s:?}"));
        let (c, pow) = match s.split_once('*') {
            Some((c, p)) => (Some(c), Some(p)),
            None if s.starts_with('q') => (None, Some(s)),
            None => (Some(s), None),
        };
        match pow {
            Some(p) => {
                let e = if p == "q" { 1 } else { p.strip_prefix("q^").ok_or_else(bad)?.parse().map_err(|_| bad())? };
                let c = match c {
                    Some(c) => c.parse().map_err(|_| bad())?,
                    None => Rat::one(),
                };
                Ok(Value::QPow { c, e })
            }
            None => {
                let c = c.unwrap_or_default();
                if let Ok(i) = c.parse::<i64>() {
                    return Ok(Value::Int(i));
                }
                Ok(Value::Rat(c.parse().map_err(|_| bad())?))
            }
        }
    }
}

/// A complete specialization of one verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub mode: Mode,
    pub n: usize,
    /// `t = q^k`; required in formal mode.
    pub k: Option<u32>,
    /// Rational-point values of `q` and `t`.
    pub q: Option<Rat>,
    pub t: Option<Rat>,
    pub params: BTreeMap<String, Value>,
    /// Exponents of an explicit argument `x_i = q^{χ_i}` (formal mode).
    pub chi: Vec<i64>,
    /// Partition whose coefficient a coefficient check compares.
    pub lambda: Option<Partition>,
    pub dq: i64,
    pub dz: i64,
}

impl ParamSpec {
    pub fn new(mode: Mode, n: usize) -> Self {
        ParamSpec {
            mode,
            n,
            k: Some(1),
            q: None,
            t: None,
            params: BTreeMap::new(),
            chi: Vec::new(),
            lambda: None,
            dq: 10,
            dz: 5,
        }
    }

    pub fn with(mut self, name: &str, v: Value) -> Self {
        self.params.insert(name.to_string(), v);
        self
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn has(&self, name: &str) -> bool {
        self.params.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Result<&Value> {
        self.params.get(name).ok_or_else(|| Error::Params(format!("parameter {name} is not set")))
    }

    pub fn scalar(&self, name: &str, ring: &Ring) -> Result<Scalar> {
        Ok(self.get(name)?.to_scalar(ring))
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        match self.get(name)? {
            Value::Int(i) => Ok(*i),
            v => Err(Error::Params(format!("parameter {name} = {v} must be an integer"))),
        }
    }

    /// The `q`-exponent of a unit-coefficient power, if it is one.
    pub fn unit_exponent(&self, name: &str) -> Option<i64> {
        match self.params.get(name)? {
            Value::QPow { c, e } if c.is_one() => Some(*e),
            _ => None,
        }
    }

    /// Comparison target: coefficients below `X^target` are compared.
    pub fn target(&self) -> i64 {
        match self.mode {
            Mode::FormalQ => self.dq + 1,
            Mode::RationalPoint => self.dz + 1,
        }
    }

    /// The arithmetic context at working precision `cap`.
    pub fn ring(&self, cap: i64) -> Result<Ring> {
        match self.mode {
            Mode::FormalQ => {
                let k = self.k.ok_or_else(|| Error::Params("formal mode needs k".into()))?;
                if k == 0 {
                    return Err(Error::Params("k must be positive".into()));
                }
                Ok(Ring::formal(self.n, k, cap))
            }
            Mode::RationalPoint => {
                let q = self.q.clone().ok_or_else(|| Error::Params("rational mode needs q".into()))?;
                match (&self.t, self.k) {
                    (Some(t), _) => Ring::rational(self.n, q, t.clone(), cap),
                    (None, Some(k)) => Ring::rational_qk(self.n, q, k, cap),
                    (None, None) => Err(Error::Params("rational mode needs t or k".into())),
                }
            }
        }
    }

    /// The rational value of a parameter at a rational point.
    pub fn point_value(&self, name: &str) -> Option<Rat> {
        let q = self.q.as_ref()?;
        Some(match self.params.get(name)? {
            Value::Int(i) => rat_int(*i),
            Value::Rat(r) => r.clone(),
            Value::QPow { c, e } => c * pow_z(q, i32::try_from(*e).ok()?),
        })
    }

    /// `t` at a rational point, from `t` itself or `q^k`.
    pub fn point_t(&self) -> Option<Rat> {
        let q = self.q.as_ref()?;
        self.t.clone().or_else(|| self.k.map(|k| num_traits::pow(q.clone(), k as usize)))
    }

    /// Ordered text fields, used for reports and fingerprints.
    pub fn fields(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("n".to_string(), self.n.to_string());
        if let Some(k) = self.k {
            if self.mode == Mode::FormalQ || self.t.is_none() {
                m.insert("k".to_string(), k.to_string());
            }
        }
        if let Some(q) = &self.q {
            m.insert("q".to_string(), q.to_string());
        }
        if let Some(t) = &self.t {
            m.insert("t".to_string(), t.to_string());
        }
        if !self.chi.is_empty() {
            let c: Vec<String> = self.chi.iter().map(|c| c.to_string()).collect();
            m.insert("chi".to_string(), c.join(","));
        }
        if let Some(l) = &self.lambda {
            let p: Vec<String> = l.parts().iter().map(|p| p.to_string()).collect();
            m.insert("lambda".to_string(), format!("({})", p.join(",")));
        }
        for (k, v) in &self.params {
            m.insert(k.clone(), v.to_string());
        }
        m
    }

    pub fn fingerprint(&self) -> String {
        let f: Vec<String> = self.fields().into_iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{};{};dq={};dz={}", self.mode.name(), f.join(";"), self.dq, self.dz)
    }
}

/// Seeded source of generic parameter values.
pub struct Sampler {
    rng: ChaCha8Rng,
}

const QS: [(i64, i64); 8] = [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (1, 4), (3, 4), (3, 7)];

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A small rational other than `0` and `±1`.
    pub fn rat(&mut self) -> Rat {
        loop {
            let p = self.rng.gen_range(-9i64..=9);
            let d = self.rng.gen_range(1i64..=9);
            let r = rat(p, d);
            if !r.is_zero() && r.abs() != Rat::one() {
                return r;
            }
        }
    }

    /// A value of `q` strictly between 0 and 1.
    pub fn q(&mut self) -> Rat {
        let (p, d) = QS[self.rng.gen_range(0..QS.len())];
        rat(p, d)
    }

    /// A `t` with no relation `t^l = ±q^m` for `1 <= l <= 4`, `|m| <= 10`.
    pub fn generic_t(&mut self, q: &Rat) -> Rat {
        let lattice: Vec<Rat> = (-10i32..=10).flat_map(|m| [pow_z(q, m), -pow_z(q, m)]).collect();
        loop {
            let t = self.rat();
            if t.is_zero() || (1..=4).any(|l| lattice.contains(&num_traits::pow(t.clone(), l))) {
                continue;
            }
            return t;
        }
    }

    /// A rational distinct from every value in `avoid`.
    pub fn rat_avoiding(&mut self, avoid: &[Rat]) -> Rat {
        loop {
            let r = self.rat();
            if !avoid.contains(&r) {
                return r;
            }
        }
    }

    /// A rational `v` such that neither `v` nor any `v/u`, `v·u` with `u`
    /// in `others` is `±q^m t^l` for small `m`, `l`, so that no factor
    /// `1 - v q^m t^l` vanishes by accident.
    pub fn generic_rat(&mut self, q: &Rat, t: &Rat, others: &[Rat]) -> Rat {
        let mut special = Vec::new();
        for l in -4i32..=4 {
            for m in -10i32..=10 {
                let v = pow_z(q, m) * pow_z(t, l);
                special.push(-v.clone());
                special.push(v);
            }
        }
        let mut avoid = special.clone();
        for u in others.iter().filter(|u| !u.is_zero()) {
            for v in &special {
                avoid.push(v * u);
                avoid.push(v / u);
            }
        }
        self.rat_avoiding(&avoid)
    }

    /// Whether `x` is `±q^m t^l` with `|m| <= 10`, `|l| <= 4`.
    pub fn on_lattice(q: &Rat, t: &Rat, x: &Rat) -> bool {
        (-4i32..=4).any(|l| {
            let r = x / pow_z(t, l);
            (-10i32..=10).any(|m| {
                let v = pow_z(q, m);
                r == v || r == -v
            })
        })
    }

    /// `c·q^e` with a generic coefficient.
    pub fn qpow(&mut self, e: i64) -> Value {
        Value::QPow { c: self.rat(), e }
    }
}

fn pow_z(x: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Stable per-case seed.
pub fn case_seed(seed: u64, id: &str, case: usize, point: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes().chain(case.to_le_bytes()).chain(point.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_round_trip() {
        for s in ["3", "-2", "2/7", "q^3", "q^-2", "2/7*q^3", "-3*q^0"] {
            let v: Value = s.parse().unwrap();
            assert_eq!(v.to_string().parse::<Value>().unwrap(), v, "{s}");
        }
        assert_eq!("q".parse::<Value>().unwrap(), Value::qpow(1));
        assert!("x^2".parse::<Value>().is_err());
    }

    #[test]
    fn value_scalars() {
        let ring = Ring::formal(2, 2, 10);
        let v: Value = "2*q^3".parse().unwrap();
        assert_eq!(v.to_scalar(&ring), Scalar::monomial(rat_int(2), 3));
        let ring = Ring::rational(2, rat(1, 2), rat(1, 3), 10).unwrap();
        assert_eq!(v.to_scalar(&ring), Scalar::constant(rat(1, 4)));
    }

    #[test]
    fn sampler_is_deterministic() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.rat(), b.rat());
        }
        assert_ne!(case_seed(1, "A", 0, 0), case_seed(1, "A", 0, 1));
    }
}
