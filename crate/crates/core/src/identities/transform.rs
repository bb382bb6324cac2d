//! The shifted Gauss sum, its `b = c = 0` case and the Pfaff-Kummer
//! transformation, all in formal mode at principal arguments.

use super::build::*;
use super::params::{Mode, ParamSpec, Sampler, Value};
use super::{Case, Check, CheckKind, Claim, Constraint, Entry};
use crate::error::{Error, Result};
use crate::hyperseries::Arg;
use crate::macdonald::{f_expand, gen_factorial, hooks, principal_spec};
use crate::partition::{partitions_of, Partition};
use crate::ring::{Ring, Scalar};

pub(super) const ENTRIES: &[&Entry] = &[&CHICHI, &SHIFTED_GAUSS, &PFAFF_KUMMER];

fn fac(ring: &Ring, a: &Scalar, lam: &Partition, n: usize) -> Result<Scalar> {
    let parts: Vec<i64> = lam.padded(n)?.into_iter().map(i64::from).collect();
    gen_factorial(ring, a, &parts)
}

fn hp(ring: &Ring, lam: &Partition) -> Scalar {
    hooks(lam, ring).1
}

fn val(x: &Scalar) -> i64 {
    x.val().unwrap_or(i64::MAX / 4)
}

/// How far below zero the valuation of `(u)_μ / t^{n(μ)}` can fall over
/// all `μ`: only factors `1 - u t^{-i} q^j` with negative valuation count.
fn deficit(ring: &Ring, u: &Scalar, n: usize) -> i64 {
    let k = ring.k.unwrap_or(1) as i64;
    (0..n as i64)
        .map(|i| {
            let m = (k * i - val(u)).max(0);
            m * (m + 1) / 2
        })
        .sum()
}

/// Weights `w ≥ 0` of the summation index, in order, while
/// `w · step + base` stays below `cap`; also returns the bound for the
/// first omitted weight.
fn weights(step: i64, base: i64, cap: i64) -> Result<(Vec<u32>, i64)> {
    if step <= 0 {
        return Err(Error::Params("the argument must have positive valuation".into()));
    }
    let mut w = 0;
    while w * step + base < cap {
        w += 1;
    }
    Ok(((0..w as u32).collect(), w * step + base))
}

fn positive_args(ps: &ParamSpec) -> bool {
    let Ok(ring) = ps.ring(16) else { return false };
    let v = |p: &str| ps.scalar(p, &ring).map(|s| val(&s));
    matches!(v("z"), Ok(e) if e > 0) && (!ps.has("x") || matches!(v("x"), Ok(e) if e >= 0))
}

fn lambda_ok(ps: &ParamSpec) -> bool {
    ps.lambda.as_ref().is_some_and(|l| l.len() <= ps.n)
}

const POSITIVE: Constraint = Constraint { text: "z has positive and x non-negative q-valuation", holds: positive_args };
const LAMBDA: Constraint = Constraint { text: "lambda is set with at most n parts", holds: lambda_ok };

fn lambda_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for (n, k) in [(1, 1), (2, 1), (2, 2)] {
        for w in 0..=2u32 {
            for lam in partitions_of(w, n, w) {
                let mut ps = ParamSpec::new(Mode::FormalQ, n).with_k(k);
                ps.lambda = Some(lam);
                v.push(Case::new(ps, 1));
            }
        }
    }
    v
}

// ------------------------------------------------------------ shifted Gauss

static SHIFTED_GAUSS: Entry = Entry {
    id: "SHIFTED_GAUSS",
    summary: "sum_{s,mu} (c)_s z^|s| / h'_s (a)_mu x^|mu| P_mu(t^delta) / (b)_mu f^mu_{l s} = prod_i (czx t^{n-i})(azx t^{n-i}) / ((b t^{1-i})(zx t^{n-i})) (a)_l / (azx t^{n-1})_l x^|l| P_l(t^delta), b = aczx t^{n-1}",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[
        LAMBDA,
        POSITIVE,
        Constraint { text: "b = a c z x t^{n-1}", holds: b_wired },
        Constraint { text: "variant is 0 ((a)_l) or 1 ((ax)_l)", holds: variant_ok },
    ],
    fill: shifted_fill,
    envelope: lambda_envelope,
    build: shifted_build,
};

fn b_target(ps: &ParamSpec, ring: &Ring) -> Result<Scalar> {
    let prod = mul(ring, &[&ps.scalar("a", ring)?, &ps.scalar("c", ring)?, &ps.scalar("z", ring)?, &ps.scalar("x", ring)?]);
    Ok(tp(ring, &prod, ps.n as i64 - 1))
}

fn b_wired(ps: &ParamSpec) -> bool {
    let Ok(ring) = ps.ring(16) else { return false };
    match (ps.scalar("b", &ring), b_target(ps, &ring)) {
        (Ok(b), Ok(t)) => (&b - &t).is_zero_to_prec(),
        _ => false,
    }
}

fn shifted_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic(ps, s, &[("a", 1), ("c", 1), ("z", 2), ("x", 1)]);
    default(ps, "variant", || Value::Int(0));
    if !ps.has("b") {
        let k = ps.k.unwrap_or(1) as i64;
        let mut coeff = crate::ring::rat_int(1);
        let mut e = k * (ps.n as i64 - 1);
        for p in ["a", "c", "z", "x"] {
            match ps.params.get(p) {
                Some(Value::QPow { c, e: pe }) => {
                    coeff *= c;
                    e += pe;
                }
                Some(Value::Rat(r)) => coeff *= r,
                Some(Value::Int(i)) => coeff *= crate::ring::rat_int(*i),
                None => {}
            }
        }
        ps.params.insert("b".into(), Value::QPow { c: coeff, e });
    }
}

fn shifted_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let lam = ps.lambda.clone().ok_or_else(|| Error::Params("lambda is not set".into()))?;
    let [a, b, c, z, x] = ["a", "b", "c", "z", "x"].map(|p| ps.scalar(p, ring));
    let (a, b, c, z, x) = (a?, b?, c?, z?, x?);
    let (vz, vx) = (val(&z), val(&x));
    let base = lam.weight() as i64 * vx - deficit(ring, &a, n) - deficit(ring, &c, n);
    let (ws, bound) = weights(vz + vx, base, ring.cap)?;
    let mut lhs = Scalar::zero();
    let mut terms = 0;
    for w in ws {
        for sigma in partitions_of(w, n, w) {
            let left = ring.div(&ring.mul(&fac(ring, &c, &sigma, n)?, &ring.pow(&z, w as i64)?), &hp(ring, &sigma))?;
            for (mu, f) in f_expand(&lam, &sigma, n, ring)? {
                let num = mul(ring, &[&left, &fac(ring, &a, &mu, n)?, &ring.pow(&x, mu.weight() as i64)?, &principal_spec(&mu, n, ring)?, &f]);
                lhs = &lhs + &ring.div(&num, &fac(ring, &b, &mu, n)?)?;
                terms += 1;
            }
        }
    }
    let lhs = lhs.truncate(bound);
    let zx = ring.mul(&z, &x);
    let (czx, azx) = (ring.mul(&c, &zx), ring.mul(&a, &zx));
    let pre = prod(
        ring,
        cat(vec![each(n, |i| tp(ring, &czx, n as i64 - i)), each(n, |i| tp(ring, &azx, n as i64 - i))]),
        cat(vec![each(n, |i| tp(ring, &b, 1 - i)), each(n, |i| tp(ring, &zx, n as i64 - i))]),
    )?;
    // variant 1 puts (ax)_λ in the numerator
    let top = if ps.int("variant")? == 1 { ring.mul(&a, &x) } else { a.clone() };
    let ratio = ring.div(&fac(ring, &top, &lam, n)?, &fac(ring, &tp(ring, &azx, n as i64 - 1), &lam, n)?)?;
    let rhs = mul(ring, &[&pre, &ratio, &ring.pow(&x, lam.weight() as i64)?, &principal_spec(&lam, n, ring)?]);
    let mut check = Check { terms, ..Default::default() };
    check.push(Claim::scalars("shifted gauss", lhs, rhs));
    Ok(check)
}

// ----------------------------------------------------------- b = c = 0 case

static CHICHI: Entry = Entry {
    id: "CHICHI",
    summary: "prod_i (az t^{n-i})_inf / (z t^{n-i})_inf (a)_mu / (az t^{n-1})_mu u_0(P_mu) = sum_{l,nu} t^{n(nu)-n(l)} (a)_l / h'_nu u_0(P_l) z^|nu| f^l_{mu nu}",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[LAMBDA, POSITIVE],
    fill: chichi_fill,
    envelope: lambda_envelope,
    build: chichi_build,
};

fn variant_ok(ps: &ParamSpec) -> bool {
    matches!(ps.int("variant"), Ok(0) | Ok(1))
}

/// `z` at `q^{1+k(n-1)}` keeps the weight-`w` terms above `q^{w}`.
fn chichi_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    let e = 1 + ps.k.unwrap_or(1) as i64 * (ps.n as i64 - 1);
    generic(ps, s, &[("a", 1), ("z", e)]);
}

fn chichi_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let mu = ps.lambda.clone().ok_or_else(|| Error::Params("lambda is not set".into()))?;
    let (a, z) = (ps.scalar("a", ring)?, ps.scalar("z", ring)?);
    // n(λ) ≤ (n-1)|λ|/2, so t^{-n(λ)} costs at most k(n-1)/2 per unit
    // weight; valuations are doubled to stay integral
    let k = ring.k.unwrap_or(1) as i64;
    let drop = k * (n as i64 - 1);
    let step = 2 * val(&z) - drop;
    let base = -drop * mu.weight() as i64 - 2 * deficit(ring, &a, n);
    let (ws, bound) = weights(step, base, 2 * ring.cap)?;
    let bound = bound / 2;
    let mut lhs = Scalar::zero();
    let mut terms = 0;
    for w in ws {
        for nu in partitions_of(w, n, w) {
            let left = ring.div(&ring.pow(&z, w as i64)?, &hp(ring, &nu))?;
            for (lam, f) in f_expand(&mu, &nu, n, ring)? {
                let tw = ring.t_pow(nu.n_stat() - lam.n_stat());
                lhs = &lhs + &mul(ring, &[&left, &tw, &fac(ring, &a, &lam, n)?, &principal_spec(&lam, n, ring)?, &f]);
                terms += 1;
            }
        }
    }
    let lhs = lhs.truncate(bound);
    let az = ring.mul(&a, &z);
    let pre = prod(ring, each(n, |i| tp(ring, &az, n as i64 - i)), each(n, |i| tp(ring, &z, n as i64 - i)))?;
    let ratio = ring.div(&fac(ring, &a, &mu, n)?, &fac(ring, &tp(ring, &az, n as i64 - 1), &mu, n)?)?;
    let rhs = mul(ring, &[&pre, &ratio, &principal_spec(&mu, n, ring)?]);
    let mut check = Check { terms, ..Default::default() };
    check.push(Claim::scalars("chichi", rhs, lhs));
    Ok(check)
}

// ------------------------------------------------------------- Pfaff-Kummer

static PFAFF_KUMMER: Entry = Entry {
    id: "PFAFF_KUMMER",
    summary: "2Phi1(a,b;c;z t^delta) = prod_i (az t^{n-i})_inf / (z t^{n-i})_inf 2Phi2(a, c/b; c, az t^{n-1}; bz t^delta)",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[POSITIVE],
    fill: pk_fill,
    envelope: pk_envelope,
    build: pk_build,
};

fn pk_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic(ps, s, &[("a", 1), ("b", 1), ("c", 2), ("z", 1)]);
}

fn pk_envelope() -> Vec<Case> {
    [(1, 1), (2, 1), (2, 2)].into_iter().map(|(n, k)| Case::new(ParamSpec::new(Mode::FormalQ, n).with_k(k), 2)).collect()
}

/// `Σ_m (a_1)_m ⋯ / ((q)_m (b_1)_m ⋯) ((-1)^m q^{m(m-1)/2})^{1+s-r} z^m`,
/// summed directly while the `z`-valuation stays below the cap.
fn classical(ring: &Ring, upper: &[Scalar], lower: &[Scalar], z: &Scalar) -> Result<Scalar> {
    let twist = 1 + lower.len() as i64 - upper.len() as i64;
    let deficit: i64 = upper.iter().map(|u| (-val(u)).max(0) * ((-val(u)).max(0) + 1) / 2).sum();
    let (ws, bound) = weights(val(z), -deficit, ring.cap)?;
    let mut acc = Scalar::zero();
    let mut term = Scalar::one();
    for m in ws {
        let m = m as i64;
        acc = &acc + &term;
        let qm = ring.q_pow(m);
        let mut num = Scalar::one();
        for u in upper {
            num = ring.mul(&num, &(Scalar::one() - ring.mul(u, &qm)));
        }
        let mut den = Scalar::one() - ring.mul(ring.q(), &qm);
        for v in lower {
            den = ring.mul(&den, &(Scalar::one() - ring.mul(v, &qm)));
        }
        let sign = if twist % 2 == 0 { Scalar::one() } else { Scalar::zero() - &Scalar::one() };
        let tw = ring.pow(&ring.mul(&sign, &qm), twist)?;
        term = ring.div(&mul(ring, &[&term, &num, z, &tw]), &den)?;
    }
    Ok(acc.truncate(bound))
}

fn pk_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let [a, b, c, z] = ["a", "b", "c", "z"].map(|p| ps.scalar(p, ring));
    let (a, b, c, z) = (a?, b?, c?, z?);
    let target = ps.target();
    let az = ring.mul(&a, &z);
    let left = phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::Principal(z.clone()));
    let (lhs, t1) = scalar_series(&left, ring, target)?;
    let cb = ring.div(&c, &b)?;
    let right = phi(vec![a.clone(), cb.clone()], vec![c.clone(), tp(ring, &az, n as i64 - 1)], Arg::Principal(ring.mul(&b, &z)));
    let (s, t2) = scalar_series(&right, ring, target)?;
    let pre = prod(ring, each(n, |i| tp(ring, &az, n as i64 - i)), each(n, |i| tp(ring, &z, n as i64 - i)))?;
    let rhs = ring.mul(&pre, &s);
    let mut check = Check { terms: t1 + t2, ..Default::default() };
    check.push(Claim::scalars("pfaff-kummer", lhs.clone(), rhs.clone()));
    if n == 1 {
        // independent one-variable sums of both sides
        let l1 = classical(ring, &[a.clone(), b.clone()], &[c.clone()], &z)?;
        let r1 = ring.mul(&pre, &classical(ring, &[a, cb], &[c, az], &ring.mul(&b, &z))?);
        check.push(Claim::scalars("classical left", lhs, l1));
        check.push(Claim::scalars("classical right", rhs, r1));
    }
    Ok(check)
}
