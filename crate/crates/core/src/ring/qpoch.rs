//! q-shifted factorials, finite and infinite.

use num_traits::One;

use super::{Ring, Scalar};
use crate::error::{Error, Result};

/// A product whose exact-zero factors are counted rather than multiplied in:
/// the value is `value · 0^zeros`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factored {
    pub zeros: i32,
    pub value: Scalar,
}

impl Factored {
    pub fn one() -> Self {
        Factored { zeros: 0, value: Scalar::one() }
    }

    pub fn from_scalar(value: Scalar) -> Self {
        if value.is_exact_zero() {
            Factored { zeros: 1, value: Scalar::one() }
        } else {
            Factored { zeros: 0, value }
        }
    }

    pub fn mul(&self, other: &Factored, ring: &Ring) -> Factored {
        Factored { zeros: self.zeros + other.zeros, value: ring.mul(&self.value, &other.value) }
    }

    pub fn div(&self, other: &Factored, ring: &Ring) -> Result<Factored> {
        Ok(Factored { zeros: self.zeros - other.zeros, value: ring.mul(&self.value, &ring.inv(&other.value)?) })
    }

    pub fn mul_scalar(&self, s: &Scalar, ring: &Ring) -> Factored {
        self.mul(&Factored::from_scalar(s.clone()), ring)
    }

    /// Collapses to a scalar: zero if zeros remain in the numerator, a pole
    /// error if they remain in the denominator.
    pub fn resolve(&self, what: &str) -> Result<Scalar> {
        match self.zeros {
            0 => Ok(self.value.clone()),
            z if z > 0 => Ok(Scalar::zero()),
            _ => Err(Error::Pole { index: what.to_string(), detail: "vanishing denominator factor".into() }),
        }
    }
}

/// `1 - y`, counting an exact zero.
fn one_minus(y: &Scalar) -> Factored {
    Factored::from_scalar(Scalar::one() - y)
}

/// `(u; q)_m` for any integer `m`; for `m < 0` this is
/// `∏_{j=1}^{-m} (1 - u q^{-j})^{-1}`.
pub fn qpoch_factored(ring: &Ring, u: &Scalar, m: i64) -> Result<Factored> {
    let mut acc = Factored::one();
    if m >= 0 {
        let mut y = u.clone();
        for _ in 0..m {
            acc = acc.mul(&one_minus(&y), ring);
            y = &y * ring.q();
        }
    } else {
        let qinv = ring.q_pow(-1);
        let mut y = u * &qinv;
        for _ in 0..(-m) {
            acc = acc.div(&one_minus(&y), ring)?;
            y = &y * &qinv;
        }
    }
    Ok(acc)
}

/// `(u; q)_m` as a scalar; a vanishing factor in a negative-index product
/// is a division by zero.
pub fn qpoch(ring: &Ring, u: &Scalar, m: i64) -> Result<Scalar> {
    let f = qpoch_factored(ring, u, m)?;
    f.resolve(&format!("({}; q)_{m}", ring.text(u))).map_err(|_| {
        Error::DivisionByZero(format!("({}; q)_{m} has a vanishing denominator factor", ring.text(u)))
    })
}

/// `(u; q)_∞` expanded through Euler's series
/// `Σ_k (-1)^k q^{k(k-1)/2} u^k / (q;q)_k`. Leading factors whose
/// valuation is not positive are multiplied out directly first.
pub fn qpoch_inf(ring: &Ring, u: &Scalar) -> Result<Scalar> {
    if u.is_exact_zero() {
        return Ok(Scalar::one());
    }
    let vq = ring.q_val();
    let mut head = Scalar::one();
    let mut y = u.clone();
    let mut guard = 0;
    while y.val_bound() <= 0 {
        if vq <= 0 {
            return Err(Error::NotCollapsible(format!("({}; q)_inf", ring.text(u))));
        }
        head = ring.mul(&head, &(Scalar::one() - &y));
        y = &y * ring.q();
        guard += 1;
        if guard > 10_000 {
            return Err(Error::Valuation(format!("({}; q)_inf does not converge", ring.text(u))));
        }
    }
    if head.is_exact_zero() {
        return Ok(Scalar::zero());
    }
    Ok(ring.mul(&head, &euler_tail(ring, &y)?))
}

/// Euler's expansion for an argument of positive valuation.
fn euler_tail(ring: &Ring, y: &Scalar) -> Result<Scalar> {
    let vy = y.val_bound();
    debug_assert!(vy > 0);
    let vq = ring.q_val();
    let cap = ring.cap;
    let mut sum = Scalar::one();
    let mut inv_qq = Scalar::one(); // 1/(q;q)_k
    let mut ypow = Scalar::one();
    let mut k: i64 = 1;
    loop {
        let lower = k * vy + vq * k * (k - 1) / 2;
        if lower >= cap {
            break;
        }
        let qk = Scalar::one() - ring.q_pow(k);
        inv_qq = ring.mul(&inv_qq, &ring.inv(&qk)?);
        ypow = ring.mul(&ypow, y);
        let mut term = ring.mul(&ring.mul(&ypow, &inv_qq), &ring.q_pow(k * (k - 1) / 2));
        if k % 2 == 1 {
            term = -term;
        }
        sum = sum + term;
        k += 1;
    }
    let p = cap.min(sum.prec());
    Ok(sum.truncate(p))
}

/// `1 / (u; q)_∞ = Σ_k u^k / (q;q)_k` for arguments of positive valuation.
pub fn qpoch_inf_inv(ring: &Ring, u: &Scalar) -> Result<Scalar> {
    let p = qpoch_inf(ring, u)?;
    ring.inv(&p)
}

/// A ratio of infinite products `∏ (u_i;q)_∞ / ∏ (v_j;q)_∞`.
///
/// Numerator/denominator pairs related by `v = u q^m` collapse to the finite
/// `(u;q)_m`; what remains is expanded directly, which only works when the
/// formal variable makes the products converge.
#[derive(Clone, Debug, Default)]
pub struct InfProd {
    num: Vec<Scalar>,
    den: Vec<Scalar>,
    finite: Vec<(Scalar, bool)>,
}

impl InfProd {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, u: Scalar) -> Self {
        self.num.push(u);
        self
    }

    pub fn den(mut self, v: Scalar) -> Self {
        self.den.push(v);
        self
    }

    /// Multiplies by a plain scalar (`true`) or divides by it (`false`).
    pub fn factor(mut self, s: Scalar, numerator: bool) -> Self {
        self.finite.push((s, numerator));
        self
    }

    pub fn extend(mut self, other: InfProd) -> Self {
        self.num.extend(other.num);
        self.den.extend(other.den);
        self.finite.extend(other.finite);
        self
    }

    /// `∏_{i=1}^{n} f(i)` over the numerator.
    pub fn num_each<F: Fn(usize) -> Scalar>(mut self, n: usize, f: F) -> Self {
        for i in 1..=n {
            self.num.push(f(i));
        }
        self
    }

    pub fn den_each<F: Fn(usize) -> Scalar>(mut self, n: usize, f: F) -> Self {
        for i in 1..=n {
            self.den.push(f(i));
        }
        self
    }

    pub fn eval(&self, ring: &Ring) -> Result<Scalar> {
        self.eval_factored(ring)?.resolve("infinite product")
    }

    /// Like [`InfProd::eval`] but keeps the count of vanishing factors.
    pub fn eval_factored(&self, ring: &Ring) -> Result<Factored> {
        let mut acc = Factored::one();
        let mut den_used = vec![false; self.den.len()];
        let mut lone_num = Vec::new();
        for u in &self.num {
            let mut best: Option<(usize, i64)> = None;
            if !u.is_exact_zero() {
                for (j, v) in self.den.iter().enumerate() {
                    if den_used[j] || v.is_exact_zero() {
                        continue;
                    }
                    let Ok(r) = ring.div(v, u) else { continue };
                    if let Some(m) = ring.q_log(&r) {
                        if best.is_none_or(|(_, bm)| m.abs() < bm.abs()) {
                            best = Some((j, m));
                        }
                    }
                }
            }
            match best {
                Some((j, m)) => {
                    den_used[j] = true;
                    acc = acc.mul(&qpoch_factored(ring, u, m)?, ring);
                }
                None => lone_num.push(u.clone()),
            }
        }
        for u in lone_num {
            acc = acc.mul(&Factored::from_scalar(qpoch_inf(ring, &u)?), ring);
        }
        for (j, v) in self.den.iter().enumerate() {
            if !den_used[j] {
                acc = acc.div(&Factored::from_scalar(qpoch_inf(ring, v)?), ring)?;
            }
        }
        for (s, is_num) in &self.finite {
            let f = Factored::from_scalar(s.clone());
            acc = if *is_num { acc.mul(&f, ring) } else { acc.div(&f, ring)? };
        }
        Ok(acc)
    }
}

/// True when `x` is exactly one.
pub fn is_one(x: &Scalar) -> bool {
    x.as_constant().is_some_and(|c| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int, EXACT};

    fn formal(cap: i64) -> Ring {
        Ring::formal(1, 1, cap)
    }

    #[test]
    fn finite_examples() {
        // (x;q)_2 = 1 - x - xq + x^2 q at q = 1/2, x = z (formal)
        let r = Ring::rational(1, rat(1, 2), rat(1, 3), 10).unwrap();
        let x = Scalar::var_pow(1);
        let got = qpoch(&r, &x, 2).unwrap();
        let want = Scalar::from_terms([(0, rat_int(1)), (1, rat(-3, 2)), (2, rat(1, 2))], EXACT);
        assert_eq!(got, want);
        assert_eq!(qpoch(&r, &x, 0).unwrap(), Scalar::one());
        // (x;q)_{-1} (1 - x/q) = 1
        let inv = qpoch(&r, &x, -1).unwrap();
        let back = &inv * &(Scalar::one() - &(&x * &r.q_pow(-1)));
        assert_eq!(back.truncate(10), Scalar::one().truncate(10));
    }

    #[test]
    fn infinite_formal_example() {
        let r = formal(6);
        let got = qpoch_inf(&r, &Scalar::var_pow(3)).unwrap();
        let want = Scalar::from_terms([(0, rat_int(1)), (3, rat_int(-1)), (4, rat_int(-1)), (5, rat_int(-1))], 6);
        assert_eq!(got, want);
        assert_eq!(qpoch_inf(&r, &Scalar::zero()).unwrap(), Scalar::one());
    }

    #[test]
    fn rational_point_does_not_converge() {
        let r = Ring::rational(1, rat(1, 2), rat(1, 3), 10).unwrap();
        assert!(matches!(qpoch_inf(&r, &Scalar::constant(rat(1, 3))), Err(Error::NotCollapsible(_))));
    }

    #[test]
    fn infprod_collapses_shifted_pairs() {
        let r = Ring::rational(1, rat(1, 2), rat(1, 3), 10).unwrap();
        let b = Scalar::constant(rat(2, 7));
        let c = &b * &r.q_pow(3);
        let got = InfProd::new().num(b.clone()).den(c).eval(&r).unwrap();
        assert_eq!(got, qpoch(&r, &b, 3).unwrap());
        let neg = InfProd::new().num(b.clone()).den(&b * &r.q_pow(-2)).eval(&r).unwrap();
        assert_eq!(neg, qpoch(&r, &b, -2).unwrap());
    }

    #[test]
    fn zero_factor_in_numerator_vanishes() {
        let r = formal(8);
        let got = InfProd::new().num(Scalar::var_pow(-2)).eval(&r).unwrap();
        assert!(got.is_exact_zero());
        let err = InfProd::new().den(Scalar::var_pow(0)).eval(&r);
        assert!(matches!(err, Err(Error::Pole { .. })));
    }
}
