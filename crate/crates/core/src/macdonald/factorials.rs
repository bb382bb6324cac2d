//! Hooks, generalized q-factorials and the specialization formula.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::qpoch::{qpoch_factored, Factored};
use crate::ring::{InfProd, Ring, Scalar};

/// Parts of `λ` as signed integers padded to `n`.
pub fn parts_i64(lambda: &Partition, n: usize) -> Result<Vec<i64>> {
    Ok(lambda.padded(n)?.into_iter().map(i64::from).collect())
}

fn n_stat(parts: &[i64]) -> i64 {
    parts.iter().enumerate().map(|(i, &p)| i as i64 * p).sum()
}

/// `(a)_λ = t^{n(λ)} ∏_i (a t^{1-i}; q)_{λ_i}` with vanishing factors
/// counted. Negative parts use the negative-index Pochhammer symbol.
pub fn gen_factorial_factored(ring: &Ring, a: &Scalar, parts: &[i64]) -> Result<Factored> {
    let mut acc = Factored::from_scalar(ring.t_pow(n_stat(parts)));
    for (i, &p) in parts.iter().enumerate() {
        let u = ring.mul(a, &ring.t_pow(-(i as i64)));
        acc = acc.mul(&qpoch_factored(ring, &u, p)?, ring);
    }
    Ok(acc)
}

/// `(a)_λ` as a scalar.
pub fn gen_factorial(ring: &Ring, a: &Scalar, parts: &[i64]) -> Result<Scalar> {
    let f = gen_factorial_factored(ring, a, parts)?;
    if f.zeros < 0 {
        return Err(Error::DivisionByZero(format!("({})_{parts:?} has a vanishing factor", ring.text(a))));
    }
    f.resolve("factorial")
}

/// `(a)_λ` through the ratio `t^{n(λ)} ∏ (a t^{1-i})_∞ / (a q^{λ_i} t^{1-i})_∞`.
pub fn gen_factorial_inf(ring: &Ring, a: &Scalar, parts: &[i64]) -> Result<Scalar> {
    let mut prod = InfProd::new().factor(ring.t_pow(n_stat(parts)), true);
    for (i, &p) in parts.iter().enumerate() {
        let u = ring.mul(a, &ring.t_pow(-(i as i64)));
        prod = prod.num(u.clone()).den(ring.mul(&u, &ring.q_pow(p)));
    }
    prod.eval(ring)
}

/// `(h_λ, h'_λ)` from arm and leg lengths.
pub fn hooks(lambda: &Partition, ring: &Ring) -> (Scalar, Scalar) {
    let mut h = Scalar::one();
    let mut hp = Scalar::one();
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (a as i64, l as i64);
        h = ring.mul(&h, &(Scalar::one() - ring.mul(&ring.q_pow(a), &ring.t_pow(l + 1))));
        hp = ring.mul(&hp, &(Scalar::one() - ring.mul(&ring.q_pow(a + 1), &ring.t_pow(l))));
    }
    (h, hp)
}

/// `h'_λ` as the ratio of infinite products
/// `(q)_∞^n ∏_i 1/(q^{λ_i+1} t^{n-i})_∞ ∏_{i<j} (q^{λ_i-λ_j+1} t^{j-i})_∞ / (q^{λ_i-λ_j+1} t^{j-i-1})_∞`,
/// defined for generalized partitions. A negative zero count means the
/// product diverges.
pub fn hprime_inf(ring: &Ring, parts: &[i64]) -> Result<Factored> {
    let n = parts.len();
    let mut prod = InfProd::new();
    for (i, &p) in parts.iter().enumerate() {
        prod = prod.num(ring.q().clone()).den(ring.mul(&ring.q_pow(p + 1), &ring.t_pow((n - 1 - i) as i64)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let base = ring.q_pow(parts[i] - parts[j] + 1);
            let d = (j - i) as i64;
            prod = prod.num(ring.mul(&base, &ring.t_pow(d))).den(ring.mul(&base, &ring.t_pow(d - 1)));
        }
    }
    prod.eval_factored(ring)
}

/// The combined weight `(q t^{n-1})_λ / h'_λ` of a bilateral term, finite
/// for every generalized partition.
pub fn psi_weight(ring: &Ring, parts: &[i64]) -> Result<Scalar> {
    let f = psi_weight_factored(ring, parts)?;
    match f.zeros {
        0 => Ok(f.value),
        z if z > 0 => Ok(Scalar::zero()),
        _ => Err(Error::Pole { index: format!("{parts:?}"), detail: "bilateral weight diverges".into() }),
    }
}

/// [`psi_weight`] with its vanishing factors still counted.
pub fn psi_weight_factored(ring: &Ring, parts: &[i64]) -> Result<Factored> {
    let n = parts.len();
    let num = gen_factorial_factored(ring, &ring.mul(ring.q(), &ring.t_pow(n as i64 - 1)), parts)?;
    let den = hprime_inf(ring, parts)?;
    num.div(&den, ring)
}

/// `P_λ(1, t, …, t^{n-1}) = (t^n)_λ / h_λ`.
pub fn principal_spec(lambda: &Partition, n: usize, ring: &Ring) -> Result<Scalar> {
    let parts = parts_i64(lambda, n)?;
    let num = gen_factorial(ring, &ring.t_pow(n as i64), &parts)?;
    let (h, _) = hooks(lambda, ring);
    ring.div(&num, &h)
}

/// `⟨1,1⟩ = ∏_i (q;q)_{ik-1} / ((q;q)_{k-1} (q;q)_{(i-1)k})` for `t = q^k`.
pub fn ground_closed(n: usize, ring: &Ring) -> Result<Scalar> {
    let k = ring.k.ok_or_else(|| Error::Params("the constant-term inner product needs t = q^k".into()))? as i64;
    let q = ring.q().clone();
    let mut acc = Scalar::one();
    for i in 1..=n as i64 {
        let num = crate::ring::qpoch::qpoch(ring, &q, i * k - 1)?;
        let den = ring.mul(&crate::ring::qpoch::qpoch(ring, &q, k - 1)?, &crate::ring::qpoch::qpoch(ring, &q, (i - 1) * k)?);
        acc = ring.mul(&acc, &ring.div(&num, &den)?);
    }
    Ok(acc)
}

/// `⟨P_λ,P_λ⟩ / ⟨1,1⟩ = (h'_λ / h_λ) (t^n)_λ / (q t^{n-1})_λ`.
pub fn norm_ratio(lambda: &Partition, n: usize, ring: &Ring) -> Result<Scalar> {
    let parts = parts_i64(lambda, n)?;
    let (h, hp) = hooks(lambda, ring);
    let a = gen_factorial(ring, &ring.t_pow(n as i64), &parts)?;
    let b = gen_factorial(ring, &ring.mul(ring.q(), &ring.t_pow(n as i64 - 1)), &parts)?;
    ring.div(&ring.mul(&hp, &a), &ring.mul(&h, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> Scalar {
        Scalar::from_terms(terms.iter().map(|&(e, c)| (e, rat_int(c))), crate::ring::EXACT)
    }

    #[test]
    fn hook_examples() {
        let ring = Ring::formal(2, 1, 30);
        let (h, hp) = hooks(&p(&[1]), &ring);
        assert_eq!(h, poly(&[(0, 1), (1, -1)]));
        assert_eq!(hp, poly(&[(0, 1), (1, -1)]));
        // t = q^2 keeps q and t apart
        let ring = Ring::formal(2, 2, 30);
        let (h, hp) = hooks(&p(&[2, 1]), &ring);
        let one_minus = |e: i64| poly(&[(0, 1), (e, -1)]);
        assert_eq!(hp, &(&one_minus(1) * &one_minus(1)) * &one_minus(4));
        assert_eq!(h, &(&one_minus(2) * &one_minus(2)) * &one_minus(5));
    }

    #[test]
    fn factorial_examples() {
        let ring = Ring::rational(2, rat(1, 2), rat(1, 3), 10).unwrap();
        let a = Scalar::constant(rat(2, 5));
        assert_eq!(gen_factorial(&ring, &a, &[0, 0]).unwrap(), Scalar::one());
        let got = gen_factorial(&ring, &a, &[1, 1]).unwrap();
        let t = Scalar::constant(rat(1, 3));
        assert_eq!(got, &(Scalar::one() - &a) * &(&t - &a));
        assert_eq!(gen_factorial_inf(&ring, &a, &[1, 1]).unwrap(), got);
        assert_eq!(gen_factorial_inf(&ring, &a, &[2, -1]).unwrap(), gen_factorial(&ring, &a, &[2, -1]).unwrap());
    }

    #[test]
    fn negative_factorial_matches_reversal_formula() {
        // n = 1: (a)_{(-1)} = (-q/a) / (q/a; q)_1
        let ring = Ring::rational(1, rat(1, 2), rat(1, 3), 10).unwrap();
        let a = Scalar::constant(rat(2, 5));
        let qa = Scalar::constant(rat(5, 4));
        let want = ring.div(&-qa.clone(), &(Scalar::one() - &qa)).unwrap();
        assert_eq!(gen_factorial(&ring, &a, &[-1]).unwrap(), want);
    }

    #[test]
    fn principal_examples() {
        let ring = Ring::formal(3, 2, 30);
        assert!(principal_spec(&p(&[1]), 3, &ring).unwrap().agrees_to(&poly(&[(0, 1), (2, 1), (4, 1)]), 30));
        assert_eq!(principal_spec(&p(&[]), 3, &ring).unwrap(), Scalar::one());
        let ring = Ring::rational(2, rat(1, 2), rat(1, 3), 10).unwrap();
        assert_eq!(principal_spec(&p(&[1, 1]), 2, &ring).unwrap(), Scalar::constant(rat(1, 3)));
    }

    #[test]
    fn psi_weight_is_one_in_one_variable() {
        let ring = Ring::formal(1, 1, 20);
        for m in -3..=3 {
            assert!(psi_weight(&ring, &[m]).unwrap().agrees_to(&Scalar::one(), 17), "m = {m}");
        }
    }

    #[test]
    fn ground_examples() {
        let ring = Ring::formal(2, 1, 20);
        assert!(ground_closed(2, &ring).unwrap().agrees_to(&Scalar::one(), 20));
        let ring = Ring::formal(2, 2, 20);
        assert_eq!(ground_closed(2, &ring).unwrap().truncate(20), poly(&[(0, 1), (1, 1), (2, 1)]).truncate(20));
    }
}
