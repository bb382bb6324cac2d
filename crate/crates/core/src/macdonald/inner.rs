//! The constant-term inner product for `t = q^k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::factorials::{gen_factorial, parts_i64, principal_spec};
use super::poly::macdonald_poly;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{rat_int, InfProd, MPoly, Ring, Scalar};

fn k_of(ring: &Ring) -> Result<u32> {
    ring.k.ok_or_else(|| Error::Params("the constant-term inner product needs t = q^k with integer k".into()))
}

/// `(c·x^e; q)_m` as a Laurent polynomial: `∏_{j<m} (1 - c q^j x^e)`.
fn linear_qpoch(n: usize, e: &[i64], c: &Scalar, m: u32, ring: &Ring) -> MPoly {
    let mut acc = MPoly::one(n);
    for j in 0..m as i64 {
        let coeff = ring.mul(c, &ring.q_pow(j));
        acc = acc.mul(&MPoly::one(n).sub(&MPoly::monomial(e.to_vec(), coeff)), ring);
    }
    acc
}

type Key = (String, usize);

fn delta_cache() -> &'static Mutex<HashMap<Key, Arc<MPoly>>> {
    static C: OnceLock<Mutex<HashMap<Key, Arc<MPoly>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `Δ_q(x) = ∏_{i<j} (x_i/x_j; q)_k (x_j/x_i; q)_k`.
pub fn delta_q(n: usize, ring: &Ring) -> Result<Arc<MPoly>> {
    let k = k_of(ring)?;
    let key = (ring.fingerprint(), n);
    if let Some(d) = delta_cache().lock().expect("cache lock").get(&key) {
        return Ok(d.clone());
    }
    let mut acc = MPoly::one(n);
    for i in 0..n {
        for j in i + 1..n {
            let mut e = vec![0; n];
            e[i] = 1;
            e[j] = -1;
            acc = acc.mul(&linear_qpoch(n, &e, &Scalar::one(), k, ring), ring);
            let neg: Vec<i64> = e.iter().map(|x| -x).collect();
            acc = acc.mul(&linear_qpoch(n, &neg, &Scalar::one(), k, ring), ring);
        }
    }
    let d = Arc::new(acc);
    delta_cache().lock().expect("cache lock").insert(key, d.clone());
    Ok(d)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `C.T.(f Δ_q) / n!`.
pub fn normalized_ct(f: &MPoly, ring: &Ring) -> Result<Scalar> {
    let n = f.n();
    let delta = delta_q(n, ring)?;
    let mut acc = Scalar::zero();
    for (e, c) in f.terms() {
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        let d = delta.coeff(&neg);
        if !d.is_exact_zero() {
            acc = acc + ring.mul(c, &d);
        }
    }
    Ok(acc.scale(&rat_int(factorial(n)).recip()))
}

/// `⟨f, g⟩ = C.T.(f(x) g(x^{-1}) Δ_q(x)) / n!`.
pub fn inner_product(f: &MPoly, g: &MPoly, ring: &Ring) -> Result<Scalar> {
    normalized_ct(&f.mul(&g.invert_vars(), ring), ring)
}

/// `∏_i (x_i; q)_a (q/x_i; q)_b`.
pub fn ct_a_weight(n: usize, a: u32, b: u32, ring: &Ring) -> MPoly {
    let mut acc = MPoly::one(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        acc = acc.mul(&linear_qpoch(n, &e, &Scalar::one(), a, ring), ring);
        e[i] = -1;
        acc = acc.mul(&linear_qpoch(n, &e, ring.q(), b, ring), ring);
    }
    acc
}

/// `A_λ(a, b)` by direct expansion, normalized by `1/n!` like the inner
/// product.
pub fn ct_a_direct(lambda: &Partition, a: u32, b: u32, n: usize, ring: &Ring) -> Result<Scalar> {
    let p = macdonald_poly(lambda, n, ring)?.to_mpoly();
    normalized_ct(&p.mul(&ct_a_weight(n, a, b, ring), ring), ring)
}

/// The product side of `A_λ(a, b)`.
pub fn ct_a_closed(lambda: &Partition, a: u32, b: u32, n: usize, ring: &Ring) -> Result<Scalar> {
    let (a, b) = (a as i64, b as i64);
    let parts = parts_i64(lambda, n)?;
    let mut prod = InfProd::new().factor(ring.q_pow((1 + b) * lambda.weight() as i64), true);
    for i in 0..n as i64 {
        let ti = ring.t_pow(i);
        prod = prod
            .num(ring.mul(&ring.q_pow(1 + a), &ti))
            .num(ring.mul(&ring.q_pow(1 + b), &ti))
            .den(ring.mul(&ring.q_pow(1), &ti))
            .den(ring.mul(&ring.q_pow(1 + a + b), &ti));
    }
    let num = gen_factorial(ring, &ring.q_pow(-b), &parts)?;
    if num.is_exact_zero() {
        return Ok(Scalar::zero());
    }
    let den = gen_factorial(ring, &ring.mul(&ring.q_pow(1 + a), &ring.t_pow(n as i64 - 1)), &parts)?;
    let ground = super::factorials::ground_closed(n, ring)?;
    let rest = ring.mul(&ring.mul(&num, &principal_spec(lambda, n, ring)?), &ground);
    Ok(ring.mul(&prod.eval(ring)?, &ring.div(&rest, &den)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> Scalar {
        Scalar::from_terms(terms.iter().map(|&(e, c)| (e, rat_int(c))), crate::ring::EXACT)
    }

    #[test]
    fn ground_values() {
        let ring = Ring::formal(2, 1, 20);
        let one = MPoly::one(2);
        assert_eq!(inner_product(&one, &one, &ring).unwrap(), Scalar::one());
        let ring = Ring::formal(2, 2, 20);
        assert_eq!(inner_product(&one, &one, &ring).unwrap(), poly(&[(0, 1), (1, 1), (2, 1)]));
    }

    #[test]
    fn ct_a_one_variable() {
        let ring = Ring::formal(1, 1, 20);
        let empty = Partition::empty();
        assert_eq!(ct_a_direct(&empty, 0, 0, 1, &ring).unwrap(), Scalar::one());
        assert_eq!(ct_a_direct(&empty, 1, 1, 1, &ring).unwrap(), poly(&[(0, 1), (1, 1)]));
        assert_eq!(ct_a_closed(&empty, 1, 1, 1, &ring).unwrap().truncate(20), poly(&[(0, 1), (1, 1)]).truncate(20));
    }

    #[test]
    fn needs_integer_k() {
        let ring = Ring::rational(2, crate::ring::rat(1, 2), crate::ring::rat(2, 7), 10).unwrap();
        assert!(delta_q(2, &ring).is_err());
    }
}
