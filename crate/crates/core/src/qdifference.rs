//! The second-order q-difference system characterizing `₂Φ₁` at a general
//! argument, as exact operators on Laurent polynomials.
//!
//! Variable indices are 0-based.

use crate::error::{Error, Result};
use crate::ring::{MPoly, Rat, Ring, Scalar};

/// `τ_i`: `z_i ↦ q z_i`.
pub fn q_shift(f: &MPoly, i: usize, ring: &Ring) -> Result<MPoly> {
    f.scale_var(i, ring.q(), ring)
}

/// `(1 - τ_i) f / ((1 - q) z_i)`.
pub fn q_derivative(f: &MPoly, i: usize, ring: &Ring) -> Result<MPoly> {
    let num = f.sub(&q_shift(f, i, ring)?);
    let one_minus_q = Scalar::one() - ring.q();
    let mut out = MPoly::zero(f.n());
    for (e, c) in num.terms() {
        if e[i] == 0 {
            return Err(Error::Invariant(format!("(1 - τ_{}) f has a term free of z_{}", i + 1, i + 1)));
        }
        let mut e = e.clone();
        e[i] -= 1;
        out.add_term(e, ring.div(c, &one_minus_q)?);
    }
    Ok(out)
}

/// Which coefficient multiplies the mixed second-derivative sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `(1 - t)`.
    Corrected,
    /// `(1 - q)`, as originally printed; kept to show that it fails.
    Uncorrected,
}

/// Parameters of one equation of the system.
#[derive(Clone, Debug)]
pub struct QdifParams {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    /// The equation is written in `w = s z`; `s = 1` is the plain system.
    pub scale: Scalar,
    pub variant: Variant,
}

impl QdifParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Self {
        QdifParams { a, b, c, scale: Scalar::one(), variant: Variant::Corrected }
    }
}

fn lin(n: usize, terms: &[(usize, Scalar)]) -> MPoly {
    let mut p = MPoly::zero(n);
    for (v, c) in terms {
        let mut e = vec![0; n];
        e[*v] = 1;
        p.add_term(e, c.clone());
    }
    p
}

fn product(n: usize, factors: Vec<MPoly>, ring: &Ring) -> MPoly {
    factors.into_iter().fold(MPoly::one(n), |acc, f| acc.mul(&f, ring))
}

/// The cleared denominator
/// `D = ∏_{l≠i} (q z_i - z_l) ∏_{j≠i} (q z_i - t z_j) ∏_{j<l; j,l≠i} (z_j - z_l)`.
pub fn cleared_denominator(n: usize, i: usize, ring: &Ring) -> MPoly {
    let q = ring.q().clone();
    let t = ring.t().clone();
    let one = Scalar::one();
    let mut f = Vec::new();
    for l in (0..n).filter(|&l| l != i) {
        f.push(lin(n, &[(i, q.clone()), (l, -one.clone())]));
        f.push(lin(n, &[(i, q.clone()), (l, -t.clone())]));
    }
    f.push(vandermonde_without(n, i, None, ring));
    product(n, f, ring)
}

/// `∏_{a<b} (z_a - z_b)` over indices other than `i` and `j`.
fn vandermonde_without(n: usize, i: usize, j: Option<usize>, ring: &Ring) -> MPoly {
    let keep: Vec<usize> = (0..n).filter(|&x| x != i && Some(x) != j).collect();
    let mut f = Vec::new();
    for (ia, &a) in keep.iter().enumerate() {
        for &b in &keep[ia + 1..] {
            f.push(lin(n, &[(a, Scalar::one()), (b, -Scalar::one())]));
        }
    }
    product(n, f, ring)
}

/// `D · τ_i A_i(z;t)`.
fn cleared_tau_ai(n: usize, i: usize, ring: &Ring) -> MPoly {
    let q = ring.q().clone();
    let t = ring.t().clone();
    let tq = ring.mul(&t, &q);
    let mut f = Vec::new();
    for l in (0..n).filter(|&l| l != i) {
        f.push(lin(n, &[(i, tq.clone()), (l, -Scalar::one())]));
        f.push(lin(n, &[(i, q.clone()), (l, -t.clone())]));
    }
    f.push(vandermonde_without(n, i, None, ring));
    product(n, f, ring)
}

/// `D · τ_i A_j(z;t) / (q z_i - t z_j)` for `j ≠ i`.
fn cleared_tau_aj(n: usize, i: usize, j: usize, ring: &Ring) -> MPoly {
    let q = ring.q().clone();
    let t = ring.t().clone();
    let one = Scalar::one();
    let mut f = vec![lin(n, &[(j, t.clone()), (i, -q.clone())])];
    for l in (0..n).filter(|&l| l != i && l != j) {
        f.push(lin(n, &[(i, q.clone()), (l, -one.clone())]));
        f.push(lin(n, &[(i, q.clone()), (l, -t.clone())]));
        f.push(lin(n, &[(j, t.clone()), (l, -one.clone())]));
    }
    f.push(vandermonde_without(n, i, Some(j), ring));
    let p = product(n, f, ring);
    // (z_j - q z_i) = -(q z_i - z_j), and each (z_a - z_j) with a < j flips
    // sign against the (z_j - z_a) being divided out
    let flips = (0..j).filter(|&a| a != i).count() + 1;
    if flips % 2 == 1 {
        p.neg()
    } else {
        p
    }
}

/// `D` times the left side of equation `i` applied to `s`, where `s` is
/// exact through total degree `dz`. The result is exact through degree
/// `dz - 1 + deg D` and truncated there; it vanishes when `s` solves the
/// equation to that order.
pub fn qdif_residual(s: &MPoly, p: &QdifParams, i: usize, dz: i64, ring: &Ring) -> Result<MPoly> {
    let n = s.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, n });
    }
    let q = ring.q().clone();
    let t = ring.t().clone();
    let one = Scalar::one();
    let ab = ring.mul(&p.a, &p.b);
    let abq = ring.mul(&ab, &q);
    let tn1 = ring.t_pow(n as i64 - 1);
    let one_minus_q = &one - &q;
    let one_minus_t = &one - &t;
    let sinv = ring.inv(&p.scale)?;
    let deg_d = 3 * (n as i64 - 1) + (n as i64 - 1) * (n as i64 - 2) / 2 - (n as i64 - 1);
    let top = dz - 1 + deg_d;
    let w = |v: usize| lin(n, &[(v, p.scale.clone())]);
    let cst = |c: Scalar| MPoly::constant(n, c);

    let d = cleared_denominator(n, i, ring);
    let ta_i = cleared_tau_ai(n, i, ring);
    let di = q_derivative(s, i, ring)?.scale(&sinv, ring);
    let dii = q_derivative(&di, i, ring)?.scale(&sinv, ring);

    // z_i (c - ab q z_i) τ_i(A_i) ∂²S
    let t1 = w(i).mul(&cst(p.c.clone()).sub(&w(i).scale(&abq, ring)), ring).mul(&ta_i, ring).mul_deg(&dii, ring, top);

    // κ Σ_j z_i z_j (c - ab z_j) τ_i(A_j)/(q z_i - t z_j) ∂_i ∂_j S
    let kappa = match p.variant {
        Variant::Corrected => one_minus_t.clone(),
        Variant::Uncorrected => one_minus_q.clone(),
    };
    let mut t2 = MPoly::zero(n);
    let mut t4_sum = MPoly::zero(n);
    for j in (0..n).filter(|&j| j != i) {
        let tb = cleared_tau_aj(n, i, j, ring).scale(&sinv, ring);
        let cj = w(j).mul(&cst(p.c.clone()).sub(&w(j).scale(&ab, ring)), ring).mul(&tb, ring);
        let dj = q_derivative(s, j, ring)?.scale(&sinv, ring);
        let dij = q_derivative(&di, j, ring)?.scale(&sinv, ring);
        t2 = t2.add(&w(i).mul(&cj, ring).mul_deg(&dij, ring, top));
        t4_sum = t4_sum.add(&cj.mul_deg(&dj, ring, top));
    }
    let t2 = t2.scale(&kappa, ring);

    // {(t^{n-1} - c) + ((1-a)(1-b) t^{n-1} - (t^{n-1} - abq)) z_i} / (1-q) ∂_i S
    let oa_ob_t = ring.mul(&ring.mul(&(&one - &p.a), &(&one - &p.b)), &tn1);
    let lin_coef = &oa_ob_t - &(&tn1 - &abq);
    let t3 = cst(&tn1 - &p.c)
        .add(&w(i).scale(&lin_coef, ring))
        .scale(&ring.inv(&one_minus_q)?, ring)
        .mul(&d, ring)
        .mul_deg(&di, ring, top);

    // (1-t)/(1-q) { (1 - τ_i A_i)/(1-t) (c - abq z_i) ∂_i S - Σ_j z_j (c - ab z_j) τ_i(A_j)/(q z_i - t z_j) ∂_j S }
    let first = d
        .sub(&ta_i)
        .scale(&ring.inv(&one_minus_t)?, ring)
        .mul(&cst(p.c.clone()).sub(&w(i).scale(&abq, ring)), ring)
        .mul_deg(&di, ring, top);
    let t4 = first.sub(&t4_sum).scale(&ring.div(&one_minus_t, &one_minus_q)?, ring);

    // -(1-a)(1-b) t^{n-1} / (1-q)^2 S
    let c5 = -ring.div(&oa_ob_t, &ring.mul(&one_minus_q, &one_minus_q))?;
    let t5 = d.scale(&c5, ring).mul_deg(s, ring, top);

    Ok(t1.add(&t2).add(&t3).add(&t4).add(&t5).truncate_degree(top))
}

/// `A_i(z;t) = ∏_{l≠i} (t z_i - z_l)/(z_i - z_l)` at a rational point.
pub fn a_fn(z: &[Rat], t: &Rat, i: usize) -> Result<Rat> {
    let mut acc = Rat::from_integer(1.into());
    for (l, zl) in z.iter().enumerate() {
        if l == i {
            continue;
        }
        let den = &z[i] - zl;
        if den == Rat::from_integer(0.into()) {
            return Err(Error::DivisionByZero(format!("z_{} = z_{}", i + 1, l + 1)));
        }
        acc *= (t * &z[i] - zl) / den;
    }
    Ok(acc)
}

/// Both sides of `Σ_{j≠i} z_j A_j/(t z_j - z_i) = (A_i - t^{n-1})/(1-t)` at
/// a rational point.
pub fn sum_identity_sides(z: &[Rat], t: &Rat, i: usize) -> Result<(Rat, Rat)> {
    let one = Rat::from_integer(1.into());
    let mut left = Rat::from_integer(0.into());
    for j in 0..z.len() {
        if j == i {
            continue;
        }
        let den = t * &z[j] - &z[i];
        if den == Rat::from_integer(0.into()) {
            return Err(Error::DivisionByZero("t z_j = z_i".into()));
        }
        left += &z[j] * a_fn(z, t, j)? / den;
    }
    let tn1 = num_traits::pow(t.clone(), z.len() - 1);
    let right = (a_fn(z, t, i)? - tn1) / (&one - t);
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    fn ring2() -> Ring {
        Ring::rational(2, rat(1, 3), rat(2, 5), 8).unwrap()
    }

    fn mono(e: &[i64], c: Rat) -> MPoly {
        MPoly::monomial(e.to_vec(), Scalar::constant(c))
    }

    #[test]
    fn shift_examples() {
        let ring = ring2();
        let q = rat(1, 3);
        assert_eq!(q_shift(&mono(&[1, 1], rat_int(1)), 0, &ring).unwrap(), mono(&[1, 1], q.clone()));
        assert_eq!(q_shift(&MPoly::one(2), 0, &ring).unwrap(), MPoly::one(2));
        let f = mono(&[2, 0], rat_int(1)).add(&mono(&[0, 1], rat_int(1)));
        let want = mono(&[2, 0], &q * &q).add(&mono(&[0, 1], rat_int(1)));
        assert_eq!(q_shift(&f, 0, &ring).unwrap(), want);
        assert!(matches!(q_shift(&f, 2, &ring), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn derivative_examples() {
        let ring = ring2();
        let q = rat(1, 3);
        for m in 1..=3i64 {
            let got = q_derivative(&mono(&[m, 0], rat_int(1)), 0, &ring).unwrap();
            let c = (rat_int(1) - num_traits::pow(q.clone(), m as usize)) / (rat_int(1) - &q);
            assert_eq!(got, mono(&[m - 1, 0], c));
        }
        assert!(q_derivative(&MPoly::one(2), 0, &ring).unwrap().is_exact_zero());
    }

    #[test]
    fn product_rule_on_a_square() {
        let ring = ring2();
        let z = MPoly::var(2, 0);
        let left = q_derivative(&z.mul(&z, &ring), 0, &ring).unwrap();
        let dz = q_derivative(&z, 0, &ring).unwrap();
        let right = dz.mul(&z, &ring).add(&q_shift(&z, 0, &ring).unwrap().mul(&dz, &ring));
        assert_eq!(left, right);
    }

    #[test]
    fn constant_solves_when_a_is_one() {
        let ring = ring2();
        let p = QdifParams::new(Scalar::one(), Scalar::constant(rat(2, 7)), Scalar::constant(rat(3, 11)));
        for i in 0..2 {
            assert!(qdif_residual(&MPoly::one(2), &p, i, 4, &ring).unwrap().is_exact_zero());
        }
    }

    #[test]
    fn sum_identity_small() {
        let z = [rat(2, 3), rat(5, 7), rat(-1, 4)];
        let t = rat(3, 8);
        for i in 0..3 {
            let (l, r) = sum_identity_sides(&z, &t, i).unwrap();
            assert_eq!(l, r);
        }
    }

    fn two_phi_one(a: &Scalar, b: &Scalar, c: &Scalar, ring: &Ring, dz: i64) -> MPoly {
        let spec = crate::hyperseries::SeriesSpec::phi(
            vec![a.clone(), b.clone()],
            vec![c.clone()],
            crate::hyperseries::Arg::General(Scalar::one()),
        );
        spec.evaluate(ring, dz + 1).unwrap().sym().unwrap().to_monomial(ring).unwrap()
    }

    fn abc() -> (Scalar, Scalar, Scalar) {
        (Scalar::constant(rat(2, 7)), Scalar::constant(rat(-3, 5)), Scalar::constant(rat(5, 11)))
    }

    #[test]
    fn two_phi_one_solves_the_corrected_system() {
        let (a, b, c) = abc();
        for n in [1usize, 2] {
            let ring = Ring::rational(n, rat(1, 3), rat(2, 5), 8).unwrap();
            let s = two_phi_one(&a, &b, &c, &ring, 4);
            let p = QdifParams::new(a.clone(), b.clone(), c.clone());
            for i in 0..n {
                let r = qdif_residual(&s, &p, i, 4, &ring).unwrap();
                assert!(r.is_exact_zero(), "n={n} i={i}: {}", r.to_text("z"));
            }
        }
    }

    #[test]
    fn uncorrected_system_fails() {
        let (a, b, c) = abc();
        let ring = Ring::rational(2, rat(1, 3), rat(2, 5), 8).unwrap();
        let s = two_phi_one(&a, &b, &c, &ring, 4);
        let mut p = QdifParams::new(a, b, c);
        p.variant = Variant::Uncorrected;
        assert!(!qdif_residual(&s, &p, 0, 4, &ring).unwrap().is_exact_zero());
    }
}
