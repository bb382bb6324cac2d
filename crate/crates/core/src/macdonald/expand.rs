//! Evaluations of `P_μ`, structure constants and basis changes.

use std::collections::BTreeMap;

use super::poly::macdonald_poly;
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::ring::{MPoly, Ring, Scalar};

/// `u_λ(P_μ)`: `P_μ` at `x_i = q^{λ_i} t^{n-i}`.
pub fn u_eval(lambda: &[i64], mu: &Partition, n: usize, ring: &Ring) -> Result<Scalar> {
    if lambda.len() != n {
        return Err(Error::Params(format!("evaluation index {lambda:?} must have {n} parts")));
    }
    let point: Vec<Scalar> =
        lambda.iter().enumerate().map(|(i, &l)| ring.mul(&ring.q_pow(l), &ring.t_pow((n - 1 - i) as i64))).collect();
    macdonald_poly(mu, n, ring)?.to_mpoly().eval(&point, ring)
}

/// Coefficients `r_λ` with `f = Σ r_λ P_λ` for a symmetric polynomial `f`
/// (non-negative exponents). Terms of a degree above `max_deg` are ignored.
pub fn expand_in_p(f: &MPoly, ring: &Ring, max_deg: i64) -> Result<BTreeMap<Partition, Scalar>> {
    let n = f.n();
    let mut by_deg: BTreeMap<u32, BTreeMap<Partition, Scalar>> = BTreeMap::new();
    for (e, c) in f.dominant_terms() {
        if e.iter().any(|&x| x < 0) {
            return Err(Error::Params("expansion in P_λ needs a polynomial".into()));
        }
        let d: i64 = e.iter().sum();
        if d > max_deg {
            continue;
        }
        let mu = Partition::new(e.iter().map(|&x| x as u32).collect())?;
        by_deg.entry(d as u32).or_default().insert(mu, c.clone());
    }
    let mut out = BTreeMap::new();
    for (d, coeffs) in by_deg {
        let mut rest = coeffs;
        for lam in partitions_of(d, n, d) {
            let Some(c) = rest.remove(&lam) else { continue };
            if c.is_exact_zero() {
                continue;
            }
            let p = macdonald_poly(&lam, n, ring)?;
            for (mu, pc) in &p.coeffs {
                if mu == &lam {
                    continue;
                }
                let slot = rest.entry(mu.clone()).or_insert_with(Scalar::zero);
                *slot = &*slot - &ring.mul(&c, pc);
            }
            out.insert(lam, c);
        }
    }
    Ok(out)
}

/// `Σ r_λ P_λ` as a polynomial.
pub fn from_p_basis(coeffs: &BTreeMap<Partition, Scalar>, n: usize, ring: &Ring) -> Result<MPoly> {
    let mut out = MPoly::zero(n);
    for (lam, c) in coeffs {
        out = out.add(&macdonald_poly(lam, n, ring)?.to_mpoly().scale(c, ring));
    }
    Ok(out)
}

/// `f^λ_{μν}`: `P_μ P_ν = Σ_λ f^λ_{μν} P_λ`.
pub fn f_expand(mu: &Partition, nu: &Partition, n: usize, ring: &Ring) -> Result<BTreeMap<Partition, Scalar>> {
    let a = macdonald_poly(mu, n, ring)?.to_mpoly();
    let b = macdonald_poly(nu, n, ring)?.to_mpoly();
    let mut out = expand_in_p(&a.mul(&b, ring), ring, i64::MAX)?;
    out.retain(|_, c| !c.is_exact_zero());
    Ok(out)
}

/// A truncated symmetric series stored by its `P_λ` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymSeries {
    pub n: usize,
    /// Largest total degree kept.
    pub dz: i64,
    pub mac: BTreeMap<Partition, Scalar>,
}

impl SymSeries {
    pub fn new(n: usize, dz: i64) -> Self {
        SymSeries { n, dz, mac: BTreeMap::new() }
    }

    /// Adds `c·P_λ` unless `|λ|` exceeds the truncation.
    pub fn add(&mut self, lambda: Partition, c: Scalar) {
        if lambda.weight() as i64 > self.dz || c.is_exact_zero() {
            return;
        }
        let slot = self.mac.entry(lambda).or_insert_with(Scalar::zero);
        *slot = &*slot + &c;
    }

    pub fn to_monomial(&self, ring: &Ring) -> Result<MPoly> {
        from_p_basis(&self.mac, self.n, ring)
    }

    pub fn from_monomial(f: &MPoly, dz: i64, ring: &Ring) -> Result<SymSeries> {
        let mut s = SymSeries::new(f.n(), dz);
        for (lam, c) in expand_in_p(f, ring, dz)? {
            s.add(lam, c);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn u_eval_examples() {
        let (q, t) = (rat(1, 2), rat(1, 3));
        let ring = Ring::rational(2, q.clone(), t.clone(), 10).unwrap();
        let one = rat_int(1);
        assert_eq!(u_eval(&[0, 0], &p(&[1]), 2, &ring).unwrap(), Scalar::constant(&one + &t));
        assert_eq!(u_eval(&[1, 0], &p(&[1]), 2, &ring).unwrap(), Scalar::constant(&q * &t + &one));
        assert_eq!(u_eval(&[1, 1], &p(&[1]), 2, &ring).unwrap(), Scalar::constant(&q * (&one + &t)));
    }

    #[test]
    fn structure_constant_examples() {
        let (q, t) = (rat(1, 2), rat(1, 3));
        let ring = Ring::rational(2, q.clone(), t.clone(), 10).unwrap();
        let f = f_expand(&p(&[1]), &p(&[1]), 2, &ring).unwrap();
        let one = rat_int(1);
        assert_eq!(f[&p(&[2])], Scalar::one());
        assert_eq!(f[&p(&[1, 1])], Scalar::constant((&one - &q) * (&one + &t) / (&one - &q * &t)));
        let g = f_expand(&p(&[2, 1]), &Partition::empty(), 2, &ring).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[&p(&[2, 1])], Scalar::one());
    }
}
