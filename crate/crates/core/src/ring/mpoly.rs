//! Laurent polynomials in `x_1..x_n` with [`Scalar`] coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::{Rat, Ring, Scalar};
use crate::error::{Error, Result};

pub type Exps = Vec<i64>;

#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Exps, Scalar>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(exps: Exps, c: Scalar) -> Self {
        let mut p = MPoly { n: exps.len(), terms: BTreeMap::new() };
        p.add_term(exps, c);
        p
    }

    /// `x_i` (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exps, Scalar> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i64]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c·x^e`, pruning exact zeros.
    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_exact_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_exact_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every coefficient vanishes below its precision.
    pub fn is_zero_to_prec(&self) -> bool {
        self.terms.values().all(Scalar::is_zero_to_prec)
    }

    /// Coefficient of `x^0`.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.n])
    }

    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d))))
    }

    /// Keeps terms of total degree `<= d`.
    pub fn truncate_degree(&self, d: i64) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<i64>() <= d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: i64) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(e, _)| e.iter().sum::<i64>() == d).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar, ring: &Ring) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), ring.mul(c, s));
        }
        out
    }

    pub fn scale_rat(&self, s: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(s));
        }
        out
    }

    pub fn mul(&self, other: &MPoly, ring: &Ring) -> MPoly {
        self.mul_deg(other, ring, i64::MAX)
    }

    /// Product keeping only terms of total degree `<= max_deg`.
    pub fn mul_deg(&self, other: &MPoly, ring: &Ring, max_deg: i64) -> MPoly {
        let mut acc: BTreeMap<Exps, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da: i64 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da.saturating_add(eb.iter().sum()) > max_deg {
                    continue;
                }
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ring.mul(ca, cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(e, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_exact_zero());
        MPoly { n: self.n, terms: acc }
    }

    pub fn pow_deg(&self, e: u32, ring: &Ring, max_deg: i64) -> MPoly {
        let mut acc = MPoly::one(self.n);
        for _ in 0..e {
            acc = acc.mul_deg(self, ring, max_deg);
        }
        acc
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> MPoly {
        MPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect(),
        }
    }

    /// `x_i ↦ s·x_i` for the 0-based index `i`.
    pub fn scale_var(&self, i: usize, s: &Scalar, ring: &Ring) -> Result<MPoly> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
        }
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), ring.mul(c, &ring.pow(s, e[i])?));
        }
        Ok(out)
    }

    /// `x ↦ x^{-1}`.
    pub fn invert_vars(&self) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.iter().map(|a| -a).collect(), c.clone())).collect() }
    }

    /// Applies a coefficient map.
    pub fn map_coeffs<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Substitutes scalars for every variable.
    pub fn eval(&self, point: &[Scalar], ring: &Ring) -> Result<Scalar> {
        if point.len() != self.n {
            return Err(Error::Params(format!("point has {} coordinates, expected {}", point.len(), self.n)));
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    term = ring.mul(&term, &ring.pow(x, k)?);
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Substitutes the single formal scalar variable: `x_i ↦ c_i·X`, which
    /// turns a polynomial in `x` into a scalar in `X`.
    pub fn eval_along(&self, coeffs: &[Scalar], ring: &Ring) -> Result<Scalar> {
        let point: Vec<Scalar> = coeffs.iter().map(|c| c.shift(1)).collect();
        self.eval(&point, ring)
    }

    /// The symmetric-function coefficients: for every dominant exponent
    /// (a weakly decreasing vector), its coefficient.
    pub fn dominant_terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter().filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
    }

    /// Largest total degree of a term with a coefficient not known to vanish.
    pub fn max_degree(&self) -> Option<i64> {
        self.total_degree_range().map(|r| r.1)
    }

    /// Swaps two variables.
    pub fn swap_vars(&self, i: usize, j: usize) -> MPoly {
        MPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Truncates every coefficient to the ring's cap.
    pub fn capped(&self, ring: &Ring) -> MPoly {
        self.map_coeffs(|c| c.clone().truncate_to_cap(ring.cap))
    }

    /// Truncates every coefficient below `X^p`.
    pub fn truncate_coeffs(&self, p: i64) -> MPoly {
        self.map_coeffs(|c| c.truncate(p))
    }

    /// Minimum precision across coefficients.
    pub fn prec(&self) -> i64 {
        self.terms.values().map(Scalar::prec).min().unwrap_or(super::EXACT)
    }

    /// Renders with the given scalar variable name.
    pub fn to_text(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
                .collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
            parts.push(format!("({})*{mono}", c.to_text(var)));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("q"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat_int, EXACT};

    fn r() -> Ring {
        Ring::formal(2, 1, 20)
    }

    #[test]
    fn constant_term_examples() {
        let ring = r();
        let x1 = MPoly::monomial(vec![1, -1], Scalar::one());
        let x2 = MPoly::monomial(vec![-1, 1], Scalar::one());
        let p = MPoly::constant(2, Scalar::int(2)).sub(&x1).sub(&x2);
        assert_eq!(p.constant_term(), Scalar::int(2));
        assert!(MPoly::monomial(vec![1, 1], Scalar::one()).constant_term().is_exact_zero());
        let one = MPoly::one(2);
        let prod = one.sub(&x1).mul(&one.sub(&x2), &ring);
        assert_eq!(prod.constant_term(), Scalar::int(2));
    }

    #[test]
    fn degree_truncated_product() {
        let ring = r();
        let s = MPoly::one(2).add(&MPoly::var(2, 0)).add(&MPoly::var(2, 1));
        let sq = s.mul_deg(&s, &ring, 1);
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coeff(&[1, 0]), Scalar::int(2));
        let full = s.mul(&s, &ring);
        assert_eq!(full.coeff(&[1, 1]), Scalar::int(2));
    }

    #[test]
    fn eval_and_scale_var() {
        let ring = r();
        let p = MPoly::var(2, 0).mul(&MPoly::var(2, 1), &ring);
        let shifted = p.scale_var(0, &Scalar::var_pow(1), &ring).unwrap();
        assert_eq!(shifted.coeff(&[1, 1]), Scalar::var_pow(1));
        let v = p.eval(&[Scalar::int(3), Scalar::constant(rat_int(5))], &ring).unwrap();
        assert_eq!(v, Scalar::int(15));
        assert_eq!(v.prec(), EXACT);
        assert!(p.scale_var(2, &Scalar::one(), &ring).is_err());
    }
}
