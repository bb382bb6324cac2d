//! Construction of `P_λ` in the monomial basis.
//!
//! `P_λ` is the eigenvector of Macdonald's operator
//! `D = Σ_i A_i(x;t) T_{q,x_i}` with leading term `m_λ`. The matrix of `D`
//! in the monomial basis is computed exactly (the Vandermonde denominator is
//! cleared by exact division), and the eigenvector follows by triangular
//! back-substitution.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, GenPartition, Partition};
use crate::ring::{MPoly, Ring, Scalar};

/// `P_λ = Σ_μ c_μ m_μ` in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct MacPoly {
    pub lambda: Partition,
    pub n: usize,
    pub coeffs: BTreeMap<Partition, Scalar>,
}

impl MacPoly {
    pub fn coeff(&self, mu: &Partition) -> Scalar {
        self.coeffs.get(mu).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Expands to a polynomial in `x_1..x_n`.
    pub fn to_mpoly(&self) -> MPoly {
        let mut out = MPoly::zero(self.n);
        for (mu, c) in &self.coeffs {
            for e in distinct_permutations(mu.padded(self.n).expect("length checked").into_iter().map(i64::from).collect()) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Smallest coefficient precision.
    pub fn prec(&self) -> i64 {
        self.coeffs.values().map(Scalar::prec).min().unwrap_or(crate::ring::EXACT)
    }

    pub fn truncate(&self, p: i64) -> MacPoly {
        MacPoly {
            lambda: self.lambda.clone(),
            n: self.n,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), c.truncate(p))).collect(),
        }
    }
}

/// All distinct rearrangements of `v`, in lexicographic order.
pub fn distinct_permutations(mut v: Vec<i64>) -> Vec<Vec<i64>> {
    v.sort_unstable();
    let mut out = vec![v.clone()];
    // next-permutation walk
    loop {
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

/// The monomial symmetric polynomial `m_μ(x_1..x_n)`.
pub fn monomial_symmetric(mu: &Partition, n: usize) -> Result<MPoly> {
    let e: Vec<i64> = mu.padded(n)?.into_iter().map(i64::from).collect();
    let mut out = MPoly::zero(n);
    for p in distinct_permutations(e) {
        out.add_term(p, Scalar::one());
    }
    Ok(out)
}

/// Exact quotient of `p` by `x_a - x_b`.
pub fn divide_by_difference(p: &MPoly, a: usize, b: usize) -> Result<MPoly> {
    let n = p.n();
    let floor = p.terms().map(|(e, _)| e[a]).min().unwrap_or(0);
    let mut rem = p.clone();
    let mut quo = MPoly::zero(n);
    loop {
        let Some((e, c)) = rem.terms().max_by_key(|(e, _)| e[a]).map(|(e, c)| (e.clone(), c.clone())) else { break };
        if e[a] <= floor {
            return Err(Error::Invariant(format!("x{} - x{} does not divide the polynomial", a + 1, b + 1)));
        }
        let mut down = e.clone();
        down[a] -= 1;
        let mut across = down.clone();
        across[b] += 1;
        rem.add_term(e, -&c);
        rem.add_term(across, c.clone());
        quo.add_term(down, c);
    }
    Ok(quo)
}

/// `∏_{a<b, a,b ∉ skip} (x_a - x_b)`.
fn vandermonde(n: usize, skip: Option<usize>, ring: &Ring) -> MPoly {
    let mut acc = MPoly::one(n);
    for a in 0..n {
        for b in a + 1..n {
            if Some(a) == skip || Some(b) == skip {
                continue;
            }
            acc = acc.mul(&MPoly::var(n, a).sub(&MPoly::var(n, b)), ring);
        }
    }
    acc
}

/// `D f` for a symmetric polynomial `f`.
pub fn apply_d(f: &MPoly, ring: &Ring) -> Result<MPoly> {
    let n = f.n();
    let mut total = MPoly::zero(n);
    for i in 0..n {
        let mut term = f.scale_var(i, ring.q(), ring)?;
        for j in 0..n {
            if j != i {
                let lin = MPoly::var(n, i).scale(ring.t(), ring).sub(&MPoly::var(n, j));
                term = term.mul(&lin, ring);
            }
        }
        term = term.mul(&vandermonde(n, Some(i), ring), ring);
        total = if i % 2 == 0 { total.add(&term) } else { total.sub(&term) };
    }
    for a in 0..n {
        for b in a + 1..n {
            total = divide_by_difference(&total, a, b)?;
        }
    }
    Ok(total)
}

/// Rows of the matrix of `D` on `m_ν`, `|ν| = d`: `D m_ν = Σ_μ d_{νμ} m_μ`.
type DMatrix = Vec<(Partition, BTreeMap<Partition, Scalar>)>;

fn d_matrix_uncached(d: u32, n: usize, ring: &Ring) -> Result<DMatrix> {
    let mut rows = Vec::new();
    for nu in partitions_of(d, n, d) {
        let image = apply_d(&monomial_symmetric(&nu, n)?, ring)?;
        let mut row = BTreeMap::new();
        for (e, c) in image.dominant_terms() {
            let mu = Partition::new(e.iter().map(|&x| x as u32).collect())?;
            row.insert(mu, c.clone());
        }
        rows.push((nu, row));
    }
    Ok(rows)
}

type Key = (String, usize, u32);

fn d_cache() -> &'static Mutex<HashMap<Key, Arc<DMatrix>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<DMatrix>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn d_matrix(d: u32, n: usize, ring: &Ring) -> Result<Arc<DMatrix>> {
    let key = (ring.fingerprint(), n, d);
    if let Some(m) = d_cache().lock().expect("cache lock").get(&key) {
        return Ok(m.clone());
    }
    let m = Arc::new(d_matrix_uncached(d, n, ring)?);
    d_cache().lock().expect("cache lock").insert(key, m.clone());
    Ok(m)
}

/// `Σ_i q^{μ_i} t^{n-i}`.
pub fn eigenvalue(mu: &Partition, n: usize, ring: &Ring) -> Result<Scalar> {
    let parts = mu.padded(n)?;
    Ok(parts
        .iter()
        .enumerate()
        .map(|(i, &p)| ring.mul(&ring.q_pow(p as i64), &ring.t_pow((n - 1 - i) as i64)))
        .sum())
}

/// Computes `P_λ` without consulting any cache.
pub fn macdonald_poly_uncached(lambda: &Partition, n: usize, ring: &Ring) -> Result<MacPoly> {
    if lambda.len() > n {
        return Err(Error::LengthExceeded { len: lambda.len(), n });
    }
    let d = lambda.weight();
    let basis = partitions_of(d, n, d);
    let start = basis.iter().position(|m| m == lambda).expect("λ is in its own basis");
    let e_lam = eigenvalue(lambda, n, ring)?;
    let gaps: Vec<Scalar> = basis[start + 1..].iter().map(|mu| Ok(&e_lam - &eigenvalue(mu, n, ring)?)).collect::<Result<_>>()?;
    let guard: i64 = gaps.iter().map(|g| g.val().unwrap_or(0).max(0)).sum();
    let work = ring.with_cap(ring.cap.saturating_add(guard));
    let dm = d_matrix(d, n, ring)?;
    let row_of: HashMap<&Partition, &BTreeMap<Partition, Scalar>> = dm.iter().map(|(p, r)| (p, r)).collect();

    let mut coeffs: BTreeMap<Partition, Scalar> = BTreeMap::new();
    coeffs.insert(lambda.clone(), Scalar::one());
    let mut known: Vec<(&Partition, Scalar)> = vec![(lambda, Scalar::one())];
    for (mu, gap) in basis[start + 1..].iter().zip(&gaps) {
        let mut acc = Scalar::zero();
        for (nu, c) in &known {
            if let Some(dv) = row_of[nu].get(mu) {
                acc = acc + work.mul(c, dv);
            }
        }
        if acc.is_exact_zero() {
            continue;
        }
        if gap.is_exact_zero() {
            return Err(Error::DivisionByZero(format!("eigenvalues of {lambda} and {mu} coincide at this (q, t)")));
        }
        let c = work.div(&acc, gap)?;
        known.push((mu, c.clone()));
        coeffs.insert(mu.clone(), c);
    }
    let cap = ring.cap;
    let coeffs: BTreeMap<Partition, Scalar> = coeffs
        .into_iter()
        .map(|(m, c)| (m, c.truncate_to_cap(cap)))
        .filter(|(_, c)| !c.is_exact_zero())
        .collect();
    let out = MacPoly { lambda: lambda.clone(), n, coeffs };
    if out.prec() < cap {
        return Err(Error::Precision(format!("P_{lambda} only known below X^{}", out.prec())));
    }
    Ok(out)
}

type PKey = (String, usize, Partition);

fn p_cache() -> &'static Mutex<HashMap<PKey, Arc<MacPoly>>> {
    static C: OnceLock<Mutex<HashMap<PKey, Arc<MacPoly>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `P_λ(x_1..x_n)`, cached in memory and (when enabled) on disk.
pub fn macdonald_poly(lambda: &Partition, n: usize, ring: &Ring) -> Result<Arc<MacPoly>> {
    if lambda.len() > n {
        return Err(Error::LengthExceeded { len: lambda.len(), n });
    }
    let key = (ring.fingerprint(), n, lambda.clone());
    if let Some(p) = p_cache().lock().expect("cache lock").get(&key) {
        if p.prec() >= ring.cap {
            return Ok(if p.prec() == ring.cap || p.prec() == crate::ring::EXACT { p.clone() } else { Arc::new(p.truncate(ring.cap)) });
        }
    }
    let p = match super::cache::load(lambda, n, ring) {
        Some(p) => p,
        None => {
            let p = macdonald_poly_uncached(lambda, n, ring)?;
            super::cache::store(&p, ring);
            p
        }
    };
    let p = Arc::new(p);
    p_cache().lock().expect("cache lock").insert(key, p.clone());
    Ok(p)
}

/// Drops every in-memory entry.
pub fn clear_memory_cache() {
    p_cache().lock().expect("cache lock").clear();
    d_cache().lock().expect("cache lock").clear();
}

/// `P_λ` for a generalized partition: `|x|^{λ_n} P_{λ-λ_n}`.
pub fn macdonald_gen(lambda: &GenPartition, ring: &Ring) -> Result<MPoly> {
    let (base, shift) = lambda.normalize();
    let p = macdonald_poly(&base, lambda.n(), ring)?;
    Ok(p.to_mpoly().shift(&vec![shift; lambda.n()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn permutations_are_distinct() {
        assert_eq!(distinct_permutations(vec![1, 0, 0]).len(), 3);
        assert_eq!(distinct_permutations(vec![2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(vec![1, 1]).len(), 1);
    }

    #[test]
    fn division_by_difference() {
        let ring = Ring::formal(2, 1, 10);
        let f = MPoly::var(2, 0).mul(&MPoly::var(2, 0), &ring).sub(&MPoly::var(2, 1).mul(&MPoly::var(2, 1), &ring));
        let q = divide_by_difference(&f, 0, 1).unwrap();
        assert_eq!(q, MPoly::var(2, 0).add(&MPoly::var(2, 1)));
    }

    #[test]
    fn small_examples_at_a_rational_point() {
        let (q, t) = (rat(1, 2), rat(1, 3));
        let ring = Ring::rational(2, q.clone(), t.clone(), 10).unwrap();
        let one = macdonald_poly_uncached(&p(&[1]), 2, &ring).unwrap();
        assert_eq!(one.coeffs.len(), 1);
        let two = macdonald_poly_uncached(&p(&[2]), 2, &ring).unwrap();
        let one_r = rat(1, 1);
        let want = (&one_r + &q) * (&one_r - &t) / (&one_r - &q * &t);
        assert_eq!(two.coeff(&p(&[1, 1])), Scalar::constant(want));
        let eleven = macdonald_poly_uncached(&p(&[1, 1]), 2, &ring).unwrap();
        assert_eq!(eleven.coeffs.len(), 1);
    }

    #[test]
    fn length_is_checked() {
        let ring = Ring::formal(1, 1, 10);
        assert!(matches!(macdonald_poly_uncached(&p(&[1, 1]), 1, &ring), Err(Error::LengthExceeded { .. })));
    }
}
