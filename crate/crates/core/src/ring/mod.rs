//! Exact arithmetic substrate: scalars, Laurent polynomials and q-shifted
//! factorials.

pub mod mpoly;
pub mod qpoch;
pub mod scalar;

pub use mpoly::MPoly;
pub use qpoch::{Factored, InfProd};
pub use scalar::{rat, rat_int, Rat, Scalar, EXACT};

use crate::error::{Error, Result};

/// What the formal variable of a [`Scalar`] stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// Formal q-series: `q` is the variable itself.
    Q,
    /// Rational point: `q` and `t` are numbers and the variable is a formal
    /// argument `z` (constants when no argument is formal).
    Z,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::Z => "z",
        }
    }
}

/// Arithmetic context: the values of `q` and `t`, the variable count and
/// the working truncation.
#[derive(Clone, Debug)]
pub struct Ring {
    pub n: usize,
    pub var: Var,
    q: Scalar,
    t: Scalar,
    /// `t = q^k` when known.
    pub k: Option<u32>,
    /// Working precision: series are expanded below `X^cap`.
    pub cap: i64,
}

impl Ring {
    /// Formal q-series with `t = q^k`.
    pub fn formal(n: usize, k: u32, cap: i64) -> Self {
        Ring { n, var: Var::Q, q: Scalar::var_pow(1), t: Scalar::var_pow(k as i64), k: Some(k), cap }
    }

    /// Rational point `q`, `t`; the formal variable is an argument `z`.
    pub fn rational(n: usize, q: Rat, t: Rat, cap: i64) -> Result<Self> {
        use num_traits::{One, Signed, Zero};
        if q.is_zero() || q.abs() == Rat::one() {
            return Err(Error::Params(format!("q = {q} must be a nonzero rational other than ±1")));
        }
        let k = (1..=16u32).find(|&k| num_traits::pow(q.clone(), k as usize) == t);
        Ok(Ring { n, var: Var::Z, q: Scalar::constant(q), t: Scalar::constant(t), k, cap })
    }

    /// Rational point with `t = q^k`.
    pub fn rational_qk(n: usize, q: Rat, k: u32, cap: i64) -> Result<Self> {
        let t = num_traits::pow(q.clone(), k as usize);
        let mut r = Self::rational(n, q, t, cap)?;
        r.k = Some(k);
        Ok(r)
    }

    pub fn with_n(&self, n: usize) -> Self {
        Ring { n, ..self.clone() }
    }

    pub fn with_cap(&self, cap: i64) -> Self {
        Ring { cap, ..self.clone() }
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn t(&self) -> &Scalar {
        &self.t
    }

    /// `q^e`, exact.
    pub fn q_pow(&self, e: i64) -> Scalar {
        self.q.pow(e, self.cap).expect("q is an exact unit monomial")
    }

    /// `t^e`, exact.
    pub fn t_pow(&self, e: i64) -> Scalar {
        self.t.pow(e, self.cap).expect("t is an exact unit monomial")
    }

    /// Valuation of `q` in the formal variable.
    pub fn q_val(&self) -> i64 {
        self.q.val().unwrap_or(0)
    }

    pub fn t_val(&self) -> i64 {
        self.t.val().unwrap_or(0)
    }

    pub fn inv(&self, x: &Scalar) -> Result<Scalar> {
        x.inv(self.cap)
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        a.div(b, self.cap)
    }

    pub fn pow(&self, x: &Scalar, e: i64) -> Result<Scalar> {
        x.pow(e, self.cap)
    }

    /// Truncates a product to the working precision.
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        (a * b).truncate_to_cap(self.cap)
    }

    /// `m` such that `r = q^m` exactly, searching `|m| <= 256`.
    pub fn q_log(&self, r: &Scalar) -> Option<i64> {
        use num_traits::One;
        let (c, e) = r.as_monomial()?;
        let (cq, vq) = self.q.as_monomial()?;
        if vq != 0 {
            if e % vq != 0 {
                return None;
            }
            let m = e / vq;
            let want = if m >= 0 { num_traits::pow(cq, m as usize) } else { num_traits::pow(cq.recip(), (-m) as usize) };
            return (want == c).then_some(m);
        }
        if e != 0 {
            return None;
        }
        if c.is_one() {
            return Some(0);
        }
        let (mut up, mut down) = (Rat::one(), Rat::one());
        let cq_inv = cq.recip();
        for m in 1..=256i64 {
            up *= &cq;
            down *= &cq_inv;
            if up == c {
                return Some(m);
            }
            if down == c {
                return Some(-m);
            }
        }
        None
    }

    /// Text rendering of a scalar in this ring's variable.
    pub fn text(&self, x: &Scalar) -> String {
        x.to_text(self.var.name())
    }

    /// Ring fingerprint used for caching.
    pub fn fingerprint(&self) -> String {
        match self.var {
            Var::Q => format!("fq;k={}", self.k.unwrap_or(0)),
            Var::Z => format!("rp;q={};t={}", self.text(&self.q), self.text(&self.t)),
        }
    }
}
