//! Exact scalars: truncated Laurent series in one formal variable over ℚ.
//!
//! A `Scalar` stores `Σ c_e X^e + O(X^prec)`. Exact values (polynomials,
//! constants) carry `prec == EXACT`. Every operation propagates the
//! precision that is actually known, so a comparison can report exactly how
//! far two values agree. Depending on the mode the variable `X` stands for
//! `q` (formal q-series) or for a formal argument `z` (rational points).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Precision marker for exact values.
pub const EXACT: i64 = i64::MAX;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a.saturating_add(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    lo: i64,
    coeffs: Vec<Rat>,
    prec: i64,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { lo: 0, coeffs: Vec::new(), prec: EXACT }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat_int(n))
    }

    pub fn monomial(c: Rat, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Scalar { lo: e, coeffs: vec![c], prec: EXACT }
    }

    /// `X^e`.
    pub fn var_pow(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    /// `O(X^prec)`.
    pub fn big_o(prec: i64) -> Self {
        Scalar { lo: 0, coeffs: Vec::new(), prec }
    }

    /// Builds from `(exponent, coefficient)` pairs and a precision.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(terms: I, prec: i64) -> Self {
        let mut pairs: Vec<(i64, Rat)> = terms.into_iter().filter(|(e, c)| *e < prec && !c.is_zero()).collect();
        if pairs.is_empty() {
            return Scalar { lo: 0, coeffs: Vec::new(), prec };
        }
        pairs.sort_by_key(|(e, _)| *e);
        let lo = pairs[0].0;
        let hi = pairs.last().unwrap().0;
        let mut coeffs = vec![Rat::zero(); (hi - lo + 1) as usize];
        for (e, c) in pairs {
            coeffs[(e - lo) as usize] += c;
        }
        let mut s = Scalar { lo, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.prec != EXACT {
            let keep = (self.prec - self.lo).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn val(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Valuation lower bound: the exponent of the first known nonzero
    /// coefficient, or the precision if none is known.
    pub fn val_bound(&self) -> i64 {
        self.val().unwrap_or(self.prec)
    }

    /// Highest exponent carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.val().map(|lo| lo + self.coeffs.len() as i64 - 1)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec == EXACT
    }

    /// True when no nonzero coefficient is known (zero up to precision).
    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self - other` is known and zero below `X^p`.
    pub fn agrees_to(&self, other: &Scalar, p: i64) -> bool {
        let d = self - other;
        d.prec() >= p && d.val_bound() >= p
    }

    pub fn coeff(&self, e: i64) -> Rat {
        if e < self.lo || e >= self.lo + self.coeffs.len() as i64 {
            Rat::zero()
        } else {
            self.coeffs[(e - self.lo) as usize].clone()
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rat)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.lo + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// `(c, e)` when the value is exactly `c X^e`.
    pub fn as_monomial(&self) -> Option<(Rat, i64)> {
        if self.is_exact() && self.num_terms() == 1 {
            Some((self.coeffs[0].clone(), self.lo))
        } else {
            None
        }
    }

    /// The exact constant, if the value is one.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_exact_zero() {
            return Some(Rat::zero());
        }
        match self.as_monomial() {
            Some((c, 0)) => Some(c),
            _ => None,
        }
    }

    /// Drops every coefficient at exponent `>= p`.
    pub fn truncate(&self, p: i64) -> Scalar {
        if p >= self.prec {
            return self.clone();
        }
        let mut s = Scalar { lo: self.lo, coeffs: self.coeffs.clone(), prec: p };
        s.normalize();
        s
    }

    pub fn scale(&self, c: &Rat) -> Scalar {
        if c.is_zero() {
            return if self.is_exact() { Scalar::zero() } else { Scalar::big_o(self.prec) };
        }
        Scalar { lo: self.lo, coeffs: self.coeffs.iter().map(|x| x * c).collect(), prec: self.prec }
    }

    /// Multiplies by `X^e`.
    pub fn shift(&self, e: i64) -> Scalar {
        let mut s = self.clone();
        if !s.coeffs.is_empty() {
            s.lo += e;
        }
        s.prec = sat_add(s.prec, e);
        s
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        let prec = self.prec.min(other.prec);
        if self.coeffs.is_empty() {
            return other.truncate(prec);
        }
        if other.coeffs.is_empty() {
            return self.truncate(prec);
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let hi = hi.min(prec.max(lo));
        let mut coeffs = vec![Rat::zero(); (hi - lo).max(0) as usize];
        for (src, off) in [(self, self.lo - lo), (other, other.lo - lo)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let idx = off as usize + i;
                if idx < coeffs.len() {
                    coeffs[idx] += c;
                }
            }
        }
        let mut s = Scalar { lo, coeffs, prec };
        s.normalize();
        s
    }

    fn neg_ref(&self) -> Scalar {
        Scalar { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Scalar::zero();
        }
        let va = self.val_bound();
        let vb = other.val_bound();
        let prec = sat_add(va, other.prec).min(sat_add(vb, self.prec));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Scalar::big_o(prec);
        }
        let lo = self.lo + other.lo;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = if prec == EXACT { full } else { ((prec - lo).max(0) as usize).min(full) };
        let mut coeffs = vec![Rat::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut s = Scalar { lo, coeffs, prec };
        s.normalize();
        s
    }

    /// Multiplicative inverse. Exact monomials invert exactly; anything
    /// else is expanded up to `min(cap, attainable precision)`.
    pub fn inv(&self, cap: i64) -> Result<Scalar> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                Error::DivisionByZero("inverse of exact zero".into())
            } else {
                Error::Precision(format!("inverse of O(X^{})", self.prec))
            });
        }
        let v = self.lo;
        let c0 = self.coeffs[0].clone();
        if let Some((c, e)) = self.as_monomial() {
            return Ok(Scalar::monomial(c.recip(), -e));
        }
        // relative precision `cap` when the inverse has positive valuation
        let cap = cap.max(cap.saturating_sub(v));
        let target = if self.is_exact() { cap } else { cap.min(self.prec.saturating_sub(2 * v)) };
        let len = target.saturating_add(v);
        if len <= 0 {
            return Err(Error::Precision(format!(
                "inverting a series of valuation {v} with precision {} leaves nothing below X^{cap}",
                self.prec
            )));
        }
        let len = len as usize;
        let inv0 = c0.recip();
        let u: Vec<Rat> = (0..len).map(|j| self.coeffs.get(j).map_or_else(Rat::zero, |c| c * &inv0)).collect();
        let mut w: Vec<Rat> = Vec::with_capacity(len);
        w.push(Rat::one());
        for j in 1..len {
            let mut acc = Rat::zero();
            for i in 1..=j {
                if !u[i].is_zero() && !w[j - i].is_zero() {
                    acc -= &u[i] * &w[j - i];
                }
            }
            w.push(acc);
        }
        let coeffs = w.into_iter().map(|c| c * &inv0).collect();
        let mut s = Scalar { lo: -v, coeffs, prec: target };
        s.normalize();
        Ok(s)
    }

    pub fn div(&self, other: &Scalar, cap: i64) -> Result<Scalar> {
        Ok(self * &other.inv(cap)?)
    }

    /// Integer power; negative exponents go through [`Scalar::inv`].
    pub fn pow(&self, e: i64, cap: i64) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        if let Some((c, x)) = self.as_monomial() {
            let c = if e > 0 { num_traits::pow(c, e as usize) } else { num_traits::pow(c.recip(), (-e) as usize) };
            return Ok(Scalar::monomial(c, x * e));
        }
        let base = if e > 0 { self.clone() } else { self.inv(cap)? };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = (&acc * &b).truncate_to_cap(cap);
            }
            k >>= 1;
            if k > 0 {
                b = (&b * &b).truncate_to_cap(cap);
            }
        }
        Ok(acc)
    }

    /// Caps non-exact values at `cap`, or at `cap` past the leading term
    /// when the valuation is positive; exact values are untouched.
    pub fn truncate_to_cap(self, cap: i64) -> Scalar {
        let limit = match self.val() {
            Some(v) if v > 0 => cap.saturating_add(v),
            _ => cap,
        };
        if self.is_exact() || self.prec <= limit {
            self
        } else {
            self.truncate(limit)
        }
    }

    /// Evaluates an exact Laurent polynomial at a rational point.
    pub fn eval_at(&self, x: &Rat) -> Result<Rat> {
        if !self.is_exact() {
            return Err(Error::Precision("cannot evaluate a truncated series at a point".into()));
        }
        let mut acc = Rat::zero();
        for (e, c) in self.terms() {
            let p = if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc += c * p;
        }
        Ok(acc)
    }

    /// Canonical text form: sparse `coef*v^e` terms sorted by exponent, with
    /// a trailing `O(v^p)` for truncated values. Exact constants print as a
    /// bare rational.
    pub fn to_text(&self, var: &str) -> String {
        if let Some(c) = self.as_constant() {
            return c.to_string();
        }
        let mut parts: Vec<String> = self.terms().map(|(e, c)| format!("{c}*{var}^{e}")).collect();
        if !self.is_exact() {
            parts.push(format!("O({var}^{})", self.prec));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Inverse of [`Scalar::to_text`].
    pub fn parse_text(s: &str, var: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = |what: &str| Error::Parse(format!("scalar {s:?}: {what}"));
        if !s.contains('*') && !s.contains("O(") {
            let c: Rat = s.parse().map_err(|_| bad("rational"))?;
            return Ok(Scalar::constant(c));
        }
        let mut prec = EXACT;
        let mut terms = Vec::new();
        for part in s.split(" + ") {
            let part = part.trim();
            if let Some(inner) = part.strip_prefix("O(").and_then(|r| r.strip_suffix(')')) {
                let e = inner.strip_prefix(var).and_then(|r| r.strip_prefix('^')).ok_or_else(|| bad("O-term"))?;
                prec = e.parse().map_err(|_| bad("O exponent"))?;
                continue;
            }
            let (c, e) = part.split_once('*').ok_or_else(|| bad("term"))?;
            let e = e.strip_prefix(var).and_then(|r| r.strip_prefix('^')).ok_or_else(|| bad("variable"))?;
            let c: Rat = c.parse().map_err(|_| bad("coefficient"))?;
            let e: i64 = e.parse().map_err(|_| bad("exponent"))?;
            terms.push((e, c));
        }
        Ok(Scalar::from_terms(terms, prec))
    }

    /// Leading coefficient.
    pub fn lead(&self) -> Option<&Rat> {
        self.coeffs.first()
    }

    pub fn is_negative_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("q"))
    }
}

impl From<Rat> for Scalar {
    fn from(c: Rat) -> Self {
        Scalar::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$inner(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$inner(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$inner(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$inner(&rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}
