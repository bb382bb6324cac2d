//! Coefficient identities built on the structure constants `f^λ_{μν}`,
//! the terminating balanced sums and the 4Phi3 transformation.

use super::build::*;
use super::params::{Mode, ParamSpec, Sampler, Value};
use super::{Case, Check, CheckKind, Claim, Constraint, Entry, Side};
use crate::error::{Error, Result};
use crate::hyperseries::Arg;
use crate::macdonald::{expand_in_p, f_expand, gen_factorial, hooks, norm_ratio};
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::ring::{Ring, Scalar};

pub(super) const ENTRIES: &[&Entry] = &[&SAAL_COEFF, &SAALSCHUTZ, &CHU_VANDERMONDE, &MACDONALD_RECT, &SEARS, &BUSCAR];

fn fac(ring: &Ring, a: &Scalar, lam: &Partition, n: usize) -> Result<Scalar> {
    let parts: Vec<i64> = lam.padded(n)?.into_iter().map(i64::from).collect();
    gen_factorial(ring, a, &parts)
}

fn hp(ring: &Ring, lam: &Partition) -> Scalar {
    hooks(lam, ring).1
}

/// `(N^n)` with `N > 0`, if `λ` is such a rectangle.
fn rectangle(lam: &Partition, n: usize) -> Option<u32> {
    let p = lam.parts();
    (p.len() == n && p[0] > 0 && p.iter().all(|&x| x == p[0])).then(|| p[0])
}

/// Every `(μ, ν, f^λ_{μν})` with `f^λ_{μν} ≠ 0`.
fn structure_terms(lam: &Partition, n: usize, ring: &Ring) -> Result<Vec<(Partition, Partition, Scalar)>> {
    let w = lam.weight();
    let mut out = Vec::new();
    for d in 0..=w {
        for mu in partitions_of(d, n, d) {
            for nu in partitions_of(w - d, n, w - d) {
                if let Some(c) = f_expand(&mu, &nu, n, ring)?.remove(lam) {
                    out.push((mu.clone(), nu, c));
                }
            }
        }
    }
    Ok(out)
}

fn lambda_of(ps: &ParamSpec) -> Result<&Partition> {
    ps.lambda.as_ref().ok_or_else(|| Error::Params("a coefficient check needs lambda".into()))
}

/// One case per partition of weight at most 3, for `n = 1, 2, 3`.
fn coefficient_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for lam in partitions_up_to(3, n) {
            let mut ps = ParamSpec::new(Mode::RationalPoint, n);
            ps.lambda = Some(lam);
            v.push(Case::new(ps, 2));
        }
    }
    let mut ps = ParamSpec::new(Mode::FormalQ, 2);
    ps.lambda = Some(Partition::new(vec![2, 1]).unwrap());
    v.push(Case::new(ps, 1));
    v
}

fn has_lambda(ps: &ParamSpec) -> bool {
    ps.lambda.as_ref().is_some_and(|l| l.len() <= ps.n)
}

const LAMBDA: Constraint = Constraint { text: "lambda is set with at most n parts", holds: has_lambda };

// ------------------------------------------------------- coefficient identity

static SAAL_COEFF: Entry = Entry {
    id: "SAAL_COEFF",
    summary: "(a)_l (b)_l / ((c)_l h'_l) = sum_{mu,nu} (c/a)_mu (c/b)_mu (ab/c)_nu (ab/c)^|mu| f^l_{mu nu} / ((c)_mu h'_mu h'_nu)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[LAMBDA],
    fill: saal_coeff_fill,
    envelope: coefficient_envelope,
    build: saal_coeff_build,
};

fn saal_coeff_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic_with(ps, s, &[("a", 1), ("b", 2), ("c", 1)], |ps| vec![pv(ps, "c") / (pv(ps, "a") * pv(ps, "b"))]);
}

fn saal_coeff_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let lam = lambda_of(ps)?;
    let n = ps.n;
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let (ca, cb) = (ring.div(&c, &a)?, ring.div(&c, &b)?);
    let abc = ring.div(&ring.mul(&a, &b), &c)?;
    let lhs = ring.div(
        &ring.mul(&fac(ring, &a, lam, n)?, &fac(ring, &b, lam, n)?),
        &ring.mul(&fac(ring, &c, lam, n)?, &hp(ring, lam)),
    )?;
    let mut rhs = Scalar::zero();
    for (mu, nu, f) in structure_terms(lam, n, ring)? {
        let num = mul(ring, &[&fac(ring, &ca, &mu, n)?, &fac(ring, &cb, &mu, n)?, &fac(ring, &abc, &nu, n)?, &ring.pow(&abc, mu.weight() as i64)?, &f]);
        let den = mul(ring, &[&fac(ring, &c, &mu, n)?, &hp(ring, &mu), &hp(ring, &nu)]);
        rhs = &rhs + &ring.div(&num, &den)?;
    }
    let mut check = Check::default();
    check.push(Claim::scalars("coefficient", lhs.clone(), rhs));
    if let Some(big_n) = rectangle(lam, n) {
        // the rectangle coefficient as a terminating balanced sum
        let (s, terms) = saalschutz_series(ring, n, big_n as i64, &ca, &cb, &c)?;
        let closed = ring.div(&ring.mul(&fac(ring, &abc, lam, n)?, &s), &hp(ring, lam))?;
        check.push(Claim::scalars("rectangle", lhs, closed));
        check.terms = terms;
    }
    Ok(check)
}

/// `3Phi2(q^-N, b, c; e, q^{1-N} t^{n-1} b c / e; q t^δ)`.
fn saalschutz_series(ring: &Ring, n: usize, big_n: i64, b: &Scalar, c: &Scalar, e: &Scalar) -> Result<(Scalar, usize)> {
    let spec = saalschutz_spec(ring, n, &ring.q_pow(-big_n), b, c, e)?;
    scalar_series(&spec, ring, ring.cap)
}

fn saalschutz_spec(ring: &Ring, n: usize, a: &Scalar, b: &Scalar, c: &Scalar, e: &Scalar) -> Result<crate::hyperseries::SeriesSpec> {
    let e2 = ring.div(&mul(ring, &[a, b, c, ring.q(), &ring.t_pow(n as i64 - 1)]), e)?;
    let spec = phi(vec![a.clone(), b.clone(), c.clone()], vec![e.clone(), e2], Arg::Principal(ring.q().clone()));
    if !spec.balanced(ring) {
        return Err(Error::Invariant("the 3Phi2 is not balanced".into()));
    }
    Ok(spec)
}

// ------------------------------------------------------------- balanced sum

static SAALSCHUTZ: Entry = Entry {
    id: "SAALSCHUTZ",
    summary: "3Phi2(a,b,c; e, abcq t^{n-1}/e; q t^delta) = (e/b)_(N^n) (e/c)_(N^n) / ((e)_(N^n) (e/(bc))_(N^n)), argument q t^delta",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[Constraint { text: "a = q^-N", holds: a_is_q_minus_n }],
    fill: saalschutz_fill,
    envelope: saalschutz_envelope,
    build: saalschutz_build,
};

fn a_is_q_minus_n(ps: &ParamSpec) -> bool {
    match (ps.unit_exponent("a"), ps.int("N")) {
        (Some(e), Ok(big_n)) => big_n >= 0 && e == -big_n,
        _ => false,
    }
}

fn saalschutz_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    default(ps, "N", || Value::Int(1));
    let big_n = ps.int("N").unwrap_or(1);
    default(ps, "a", || Value::qpow(-big_n));
    // second lower parameter abcq t^{n-1}/e, and e/(bc) on the closed side
    generic_with(ps, s, &[("b", 1), ("c", 2), ("e", 1)], |ps| {
        let (a, b, c, e) = (pv(ps, "a"), pv(ps, "b"), pv(ps, "c"), pv(ps, "e"));
        vec![&a * &b * &c / &e, &e / (&b * &c)]
    });
}

fn saalschutz_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for k in 1..=2 {
            for big_n in 0..=2 {
                let ps = ParamSpec::new(Mode::RationalPoint, n).with_k(k).with("N", Value::Int(big_n));
                v.push(Case::new(ps, 5));
            }
        }
    }
    v.push(Case::new(ParamSpec::new(Mode::FormalQ, 2).with("N", Value::Int(2)), 1));
    v
}

fn saalschutz_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let big_n = ps.int("N")?;
    let (a, b, c, e) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?, ps.scalar("e", ring)?);
    let (lhs, terms) = scalar_series(&saalschutz_spec(ring, n, &a, &b, &c, &e)?, ring, ps.target())?;
    let rect = Partition::rectangle(big_n as u32, n);
    let num = ring.mul(&fac(ring, &ring.div(&e, &b)?, &rect, n)?, &fac(ring, &ring.div(&e, &c)?, &rect, n)?);
    let den = ring.mul(&fac(ring, &e, &rect, n)?, &fac(ring, &ring.div(&e, &ring.mul(&b, &c))?, &rect, n)?);
    let mut check = Check { terms, ..Default::default() };
    check.push(Claim::scalars("saalschutz", lhs, ring.div(&num, &den)?));
    Ok(check)
}

// ---------------------------------------------------------- Chu-Vandermonde

static CHU_VANDERMONDE: Entry = Entry {
    id: "CHU_VANDERMONDE",
    summary: "t^n(l) (c/b)_l / ((c)_l h'_l) = sum_{mu,nu} t^n(nu) q^n(mu') (b)_mu (-c/b)^|mu| f^l_{mu nu} / ((c)_mu h'_mu h'_nu)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[LAMBDA],
    fill: chu_fill,
    envelope: coefficient_envelope,
    build: chu_build,
};

fn chu_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic(ps, s, &[("b", 2), ("c", 1)]);
}

fn chu_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let lam = lambda_of(ps)?;
    let n = ps.n;
    let (b, c) = (ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let cb = ring.div(&c, &b)?;
    let lhs = ring.div(
        &ring.mul(&ring.t_pow(lam.n_stat()), &fac(ring, &cb, lam, n)?),
        &ring.mul(&fac(ring, &c, lam, n)?, &hp(ring, lam)),
    )?;
    let neg_cb = Scalar::zero() - &cb;
    let mut rhs = Scalar::zero();
    for (mu, nu, f) in structure_terms(lam, n, ring)? {
        let num = mul(
            ring,
            &[&ring.t_pow(nu.n_stat()), &ring.q_pow(mu.n_conj_stat()), &fac(ring, &b, &mu, n)?, &ring.pow(&neg_cb, mu.weight() as i64)?, &f],
        );
        let den = mul(ring, &[&fac(ring, &c, &mu, n)?, &hp(ring, &mu), &hp(ring, &nu)]);
        rhs = &rhs + &ring.div(&num, &den)?;
    }
    let mut check = Check::default();
    check.push(Claim::scalars("coefficient", lhs, rhs));
    if let Some(big_n) = rectangle(lam, n) {
        // (c/b)_(N^n) / (c)_(N^n) = 2Phi1(q^-N, b; c; (c/b) q^N t^{1-n} t^δ)
        let x = mul(ring, &[&cb, &ring.q_pow(big_n as i64), &ring.t_pow(1 - n as i64)]);
        let spec = phi(vec![ring.q_pow(-(big_n as i64)), b.clone()], vec![c.clone()], Arg::Principal(x));
        let (s, terms) = scalar_series(&spec, ring, ring.cap)?;
        let closed = ring.div(&fac(ring, &cb, lam, n)?, &fac(ring, &c, lam, n)?)?;
        check.push(Claim::scalars("rectangle", closed, s));
        check.terms = terms;
    }
    Ok(check)
}

// ------------------------------------------------- rectangle structure constant

static MACDONALD_RECT: Entry = Entry {
    id: "MACDONALD_RECT",
    summary: "f^(N^n)_{mu nu} = (t^n)_mu h'_mu / ((q t^{n-1})_mu h_mu) when nu is the complement of mu in (N^n), else 0",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[Constraint { text: "N >= 0", holds: n_nonneg }],
    fill: no_fill,
    envelope: rect_envelope,
    build: rect_build,
};

fn n_nonneg(ps: &ParamSpec) -> bool {
    ps.int("N").is_ok_and(|n| n >= 0)
}

fn no_fill(_: &mut ParamSpec, _: &mut Sampler) {}

/// Boxes with `N, n ≤ 3` and `nN ≤ 6`.
fn rect_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=3usize {
        for big_n in 0..=3i64 {
            if n as i64 * big_n <= 6 {
                v.push(Case::new(ParamSpec::new(Mode::RationalPoint, n).with("N", Value::Int(big_n)), 1));
            }
        }
    }
    v.push(Case::new(ParamSpec::new(Mode::FormalQ, 2).with_k(2).with("N", Value::Int(1)), 1));
    v
}

fn rect_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let big_n = ps.int("N")? as u32;
    let rect = Partition::rectangle(big_n, n);
    let w = rect.weight();
    let mut lhs = std::collections::BTreeMap::new();
    let mut rhs = std::collections::BTreeMap::new();
    for d in 0..=w {
        for mu in partitions_of(d, n, d) {
            let hat = mu.complement(big_n, n).ok();
            for nu in partitions_of(w - d, n, w - d) {
                let key = format!("{:?}|{:?}", mu.parts(), nu.parts());
                let f = f_expand(&mu, &nu, n, ring)?.remove(&rect).unwrap_or_else(Scalar::zero);
                lhs.insert(key.clone(), f);
                if hat.as_ref() == Some(&nu) {
                    rhs.insert(key, norm_ratio(&mu, n, ring)?);
                }
            }
        }
    }
    let mut check = Check { terms: lhs.len(), ..Default::default() };
    check.push(Claim::new("structure constants", Side::Table(lhs), Side::Table(rhs)));
    Ok(check)
}

// ------------------------------------------------------------------- Sears

/// The 4Phi3 of the first side and its parameters.
fn sears_sides(ps: &ParamSpec, ring: &Ring) -> Result<(Scalar, Scalar, usize)> {
    let n = ps.n;
    let big_n = ps.int("N")?;
    let [a, b, c, d, e] = ["a", "b", "c", "d", "e"].map(|x| ps.scalar(x, ring));
    let (a, b, c, d, e) = (a?, b?, c?, d?, e?);
    let base = ring.mul(&ring.t_pow(n as i64 - 1), &ring.q_pow(1 - big_n));
    let abde_c = ring.div(&mul(ring, &[&a, &b, &d, &e]), &c)?;
    let ab_c = ring.div(&ring.mul(&a, &b), &c)?;
    let arg = Arg::Principal(ring.q().clone());
    let qn = ring.q_pow(-big_n);
    let first = phi(
        vec![qn.clone(), ring.div(&base, &c)?, d.clone(), e.clone()],
        vec![ring.div(&base, &a)?, ring.div(&base, &b)?, abde_c.clone()],
        arg.clone(),
    );
    let second = phi(
        vec![qn, ring.div(&base, &c)?, ring.mul(&ab_c, &e), ring.mul(&ab_c, &d)],
        vec![ring.div(&ring.mul(&base, &a), &c)?, ring.div(&ring.mul(&base, &b), &c)?, abde_c],
        arg,
    );
    for s in [&first, &second] {
        if !s.balanced(ring) {
            return Err(Error::Invariant("the 4Phi3 is not balanced".into()));
        }
    }
    let (s1, t1) = scalar_series(&first, ring, ring.cap)?;
    let (s2, t2) = scalar_series(&second, ring, ring.cap)?;
    Ok((s1, s2, t1 + t2))
}

static SEARS: Entry = Entry {
    id: "SEARS",
    summary: "terminating balanced 4Phi3 transformation at q t^delta",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[Constraint { text: "N >= 0", holds: n_nonneg }],
    fill: sears_fill,
    envelope: sears_envelope,
    build: sears_build,
};

fn sears_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    default(ps, "N", || Value::Int(1));
    generic_with(ps, s, &[("a", 1), ("b", 2), ("c", 1), ("d", 1), ("e", 2)], |ps| {
        let [a, b, c, d, e] = ["a", "b", "c", "d", "e"].map(|x| pv(ps, x));
        let ab_c = &a * &b / &c;
        vec![&ab_c * &d * &e, &ab_c * &d, &ab_c * &e, ab_c]
    });
}

fn sears_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for k in 1..=2 {
            for big_n in 0..=2 {
                v.push(Case::new(ParamSpec::new(Mode::RationalPoint, n).with_k(k).with("N", Value::Int(big_n)), 5));
            }
        }
    }
    v.push(Case::new(ParamSpec::new(Mode::FormalQ, 2).with("N", Value::Int(1)), 1));
    v
}

fn sears_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let big_n = ps.int("N")?;
    let (s1, s2, terms) = sears_sides(ps, ring)?;
    let rect = Partition::rectangle(big_n as u32, n);
    let [a, b, c] = ["a", "b", "c"].map(|x| ps.scalar(x, ring));
    let (a, b, c) = (a?, b?, c?);
    let ab_c = ring.div(&ring.mul(&a, &b), &c)?;
    let num = mul(ring, &[&ring.pow(&ab_c, n as i64 * big_n)?, &fac(ring, &ring.div(&c, &a)?, &rect, n)?, &fac(ring, &ring.div(&c, &b)?, &rect, n)?]);
    let den = ring.mul(&fac(ring, &a, &rect, n)?, &fac(ring, &b, &rect, n)?);
    let mut check = Check { terms, ..Default::default() };
    check.push(Claim::scalars("sears", s1, ring.mul(&ring.div(&num, &den)?, &s2)));
    Ok(check)
}

// ------------------------------------------- rectangle coefficient of a product

static BUSCAR: Entry = Entry {
    id: "BUSCAR",
    summary: "coefficient of P_(N^n)(z) in 2Phi1(a,b;c;z) 2Phi1(d,e;abde/c;abz/c), read two ways",
    kind: CheckKind::Coefficient,
    modes: RATIONAL,
    constraints: &[Constraint { text: "N >= 0", holds: n_nonneg }],
    fill: buscar_fill,
    envelope: buscar_envelope,
    build: buscar_build,
};

fn buscar_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    sears_fill(ps, s);
    let big_n = ps.int("N").unwrap_or(1);
    ps.dz = ps.dz.max(ps.n as i64 * big_n);
}

fn buscar_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for big_n in 0..=2 {
            v.push(Case::new(ParamSpec::new(Mode::RationalPoint, n).with("N", Value::Int(big_n)), 2));
        }
    }
    v
}

fn buscar_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let big_n = ps.int("N")?;
    let top = n as i64 * big_n;
    let rect = Partition::rectangle(big_n as u32, n);
    let [a, b, c, d, e] = ["a", "b", "c", "d", "e"].map(|x| ps.scalar(x, ring));
    let (a, b, c, d, e) = (a?, b?, c?, d?, e?);
    let ab_c = ring.div(&ring.mul(&a, &b), &c)?;
    let abde_c = ring.div(&mul(ring, &[&a, &b, &d, &e]), &c)?;
    let (p1, t1) = general_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::General(Scalar::one())), ring, top)?;
    let (p2, t2) = general_series(&phi(vec![d, e], vec![abde_c], Arg::General(ab_c.clone())), ring, top)?;
    let coeffs = expand_in_p(&p1.mul_deg(&p2, ring, top), ring, top)?;
    let got = coeffs.get(&rect).cloned().unwrap_or_else(Scalar::zero);
    let (s1, s2, t3) = sears_sides(ps, ring)?;
    let h = hp(ring, &rect);
    let one = ring.div(&ring.mul(&fac(ring, &a, &rect, n)?, &fac(ring, &b, &rect, n)?), &ring.mul(&fac(ring, &c, &rect, n)?, &h))?;
    let two = ring.div(
        &mul(ring, &[&ring.pow(&ab_c, top)?, &fac(ring, &ring.div(&c, &a)?, &rect, n)?, &fac(ring, &ring.div(&c, &b)?, &rect, n)?]),
        &ring.mul(&fac(ring, &c, &rect, n)?, &h),
    )?;
    let mut check = Check { terms: t1 + t2 + t3, ..Default::default() };
    check.push(Claim::scalars("first reading", got.clone(), ring.mul(&one, &s1)));
    check.push(Claim::scalars("second reading", got, ring.mul(&two, &s2)));
    Ok(check)
}
