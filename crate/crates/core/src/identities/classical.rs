//! q-binomial, Heine, Gauss, Euler and the q-difference system.

use super::build::*;
use super::params::{Mode, ParamSpec, Sampler, Value};
use super::{Case, Check, CheckKind, Claim, Constraint, Entry, Side};
use crate::error::{Error, Result};
use crate::hyperseries::{product_general, Arg};
use crate::qdifference::{qdif_residual, QdifParams, Variant};
use crate::ring::{Ring, Scalar};

pub(super) const ENTRIES: &[&Entry] =
    &[&Q_BINOMIAL, &HEINE, &HEINE_GAUSS_PATH, &HEINE_EULER_PATH, &GAUSS, &EULER, &KANEKO_SYSTEM];

fn chi_positive(ps: &ParamSpec) -> bool {
    ps.mode == Mode::RationalPoint || (ps.chi.len() == ps.n && ps.chi.iter().all(|&c| c > 0))
}

// ---------------------------------------------------------------- q-binomial

static Q_BINOMIAL: Entry = Entry {
    id: "Q_BINOMIAL",
    summary: "1Phi0(a; x) = prod_i (a x_i)_inf / (x_i)_inf",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[Constraint { text: "formal mode: x_i = q^chi_i with chi_i > 0", holds: chi_positive }],
    fill: qbin_fill,
    envelope: qbin_envelope,
    build: qbin_build,
};

fn qbin_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic(ps, s, &[("a", 2)]);
    if ps.mode == Mode::FormalQ && ps.chi.is_empty() {
        ps.chi = (1..=ps.n as i64).collect();
    }
}

fn qbin_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for chi in [[1, 1], [1, 2], [2, 2]] {
        let mut ps = ParamSpec::new(Mode::FormalQ, 2).with_k(2).with("a", Value::qpow(3));
        ps.chi = chi.to_vec();
        ps.dq = 12;
        v.push(Case::new(ps, 1));
    }
    let mut ps = ParamSpec::new(Mode::FormalQ, 3).with_k(1);
    ps.chi = vec![1, 2, 3];
    v.push(Case::new(ps, 2));
    for n in [1, 2] {
        for m in 0..=3 {
            let mut ps = ParamSpec::new(Mode::RationalPoint, n).with("a", Value::qpow(m));
            ps.dz = 5;
            v.push(Case::new(ps, 1));
        }
        let mut ps = ParamSpec::new(Mode::RationalPoint, n);
        ps.dz = 5;
        v.push(Case::new(ps, 2));
    }
    v
}

fn qbin_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let a = ps.scalar("a", ring)?;
    let mut check = Check::default();
    match ps.mode {
        Mode::FormalQ => {
            let x: Vec<Scalar> = ps.chi.iter().map(|&c| ring.q_pow(c)).collect();
            let (lhs, terms) = scalar_series(&phi(vec![a.clone()], vec![], Arg::Point(x.clone())), ring, ps.target())?;
            let rhs = prod(ring, x.iter().map(|xi| ring.mul(&a, xi)).collect(), x)?;
            check.terms = terms;
            check.push(Claim::scalars("q-binomial", lhs, rhs));
        }
        Mode::RationalPoint => {
            let (lhs, terms) = general_series(&phi(vec![a.clone()], vec![], Arg::General(Scalar::one())), ring, ps.dz)?;
            let rhs = product_general(n, &[(a, true), (Scalar::one(), false)], ring, ps.dz)?;
            check.terms = terms;
            check.push(Claim::new("q-binomial", Side::Poly(lhs), Side::Poly(rhs)));
        }
    }
    Ok(check)
}

// ---------------------------------------------------------------------- Gauss

static GAUSS: Entry = Entry {
    id: "GAUSS",
    summary: "2Phi1(a,b;c; c/(a b t^(n-1)) t^delta) as a product",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[Constraint { text: "rational point: a = q^-N (terminating)", holds: gauss_ok }],
    fill: gauss_fill,
    envelope: gauss_envelope,
    build: gauss_build,
};

fn gauss_ok(ps: &ParamSpec) -> bool {
    ps.mode == Mode::FormalQ || terminating(ps, "a")
}

/// Rational points take `a = q^{-N}`; formal mode keeps the argument of
/// positive valuation.
fn gauss_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    if ps.mode == Mode::RationalPoint {
        let big_n = ps.int("N").unwrap_or(1);
        default(ps, "a", || Value::qpow(-big_n));
        generic(ps, s, &[("b", 0), ("c", 0)]);
    } else {
        let k = ps.k.unwrap_or(1) as i64;
        let shift = k * (ps.n as i64 - 1);
        generic(ps, s, &[("a", 1), ("b", 1), ("c", 4 + shift)]);
    }
}

fn gauss_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for k in 1..=2 {
            for big_n in 0..=3 {
                let ps = ParamSpec::new(Mode::RationalPoint, n).with_k(k).with("N", Value::Int(big_n));
                v.push(Case::new(ps, 5));
            }
        }
    }
    for n in 1..=2 {
        v.push(Case::new(ParamSpec::new(Mode::FormalQ, n), 2));
    }
    v
}

fn gauss_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let ab = ring.mul(&a, &b);
    let z = ring.div(&c, &tp(ring, &ab, n as i64 - 1))?;
    let (lhs, terms) = scalar_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::Principal(z)), ring, ps.target())?;
    let rhs = gauss_product(ring, n, &a, &b, &c)?;
    let mut check = Check { terms, ..Default::default() };
    check.push(Claim::scalars("gauss", lhs.clone(), rhs));
    if n == 1 && ps.int("N").ok() == Some(1) && ps.mode == Mode::RationalPoint {
        // one-term sum by hand: (b - c) / (b (1 - c))
        let hand = ring.div(&(&b - &c), &ring.mul(&b, &(Scalar::one() - &c)))?;
        check.push(Claim::scalars("two-term value", lhs, hand));
    }
    Ok(check)
}

/// `∏ (c t^{1-i}/b)(c t^{1-i}/a) / ((c t^{1-i}/ab)(c t^{1-i}))`.
pub(super) fn gauss_product(ring: &Ring, n: usize, a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Scalar> {
    let ab = ring.mul(a, b);
    let ct = |i: i64| tp(ring, c, 1 - i);
    prod(
        ring,
        cat(vec![
            each(n, |i| ring.div(&ct(i), b).unwrap()),
            each(n, |i| ring.div(&ct(i), a).unwrap()),
        ]),
        cat(vec![each(n, |i| ring.div(&ct(i), &ab).unwrap()), each(n, ct)]),
    )
}

// ---------------------------------------------------------------------- Heine

static HEINE: Entry = Entry {
    id: "HEINE",
    summary: "2Phi1(a,b;c;z t^delta) = products x 2Phi1(c/b, z t^(n-1); a z t^(n-1); b t^(1-n) t^delta)",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[Constraint { text: "rational point: c = b q^-m, m >= 0", holds: heine_ok }],
    fill: heine_fill,
    envelope: heine_envelope,
    build: heine_build,
};

fn heine_ok(ps: &ParamSpec) -> bool {
    ps.mode == Mode::FormalQ || ratio_is_q_power(ps, "c", "b", -64..=0)
}

fn heine_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    if ps.mode == Mode::RationalPoint {
        generic(ps, s, &[("a", 0), ("b", 0)]);
        let m = ps.int("m").unwrap_or(2);
        if !ps.has("c") {
            let q = ps.q.clone().expect("q is sampled first");
            let Value::Rat(b) = ps.get("b").cloned().unwrap() else { unreachable!() };
            ps.params.insert("c".into(), Value::Rat(b / num_traits::pow(q, m as usize)));
        }
    } else {
        let shift = ps.k.unwrap_or(1) as i64 * (ps.n as i64 - 1);
        generic(ps, s, &[("a", 1), ("b", 1 + shift), ("c", 1), ("z", 1)]);
    }
}

fn heine_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for m in [0, 1, 2] {
            let mut ps = ParamSpec::new(Mode::RationalPoint, n).with_k(1).with("m", Value::Int(m));
            ps.dz = 5;
            v.push(Case::new(ps, 2));
        }
        for k in 1..=2 {
            let mut ps = ParamSpec::new(Mode::FormalQ, n).with_k(k);
            ps.dq = 10;
            v.push(Case::new(ps, 2));
        }
    }
    v
}

/// `(prefactor, series)` of the transformed side.
fn heine_rhs(ring: &Ring, n: usize, a: &Scalar, b: &Scalar, c: &Scalar, z: &Scalar, target: i64) -> Result<(Scalar, usize)> {
    let n1 = n as i64 - 1;
    let pre = prod(
        ring,
        cat(vec![each(n, |i| tp(ring, b, 1 - i)), each(n, |i| tp(ring, &ring.mul(a, z), n as i64 - i))]),
        cat(vec![each(n, |i| tp(ring, c, 1 - i)), each(n, |i| tp(ring, z, n as i64 - i))]),
    )?;
    let spec = phi(
        vec![ring.div(c, b)?, tp(ring, z, n1)],
        vec![tp(ring, &ring.mul(a, z), n1)],
        Arg::Principal(tp(ring, b, -n1)),
    );
    let (s, terms) = scalar_series(&spec, ring, target)?;
    Ok((ring.mul(&pre, &s), terms))
}

fn heine_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let z = principal_z(ps, ring)?;
    let target = ps.target();
    let (lhs, t1) = scalar_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::Principal(z.clone())), ring, target)?;
    let (rhs, t2) = heine_rhs(ring, ps.n, &a, &b, &c, &z, target)?;
    let mut check = Check { terms: t1 + t2, ..Default::default() };
    check.push(Claim::scalars("heine", lhs, rhs));
    Ok(check)
}

static HEINE_GAUSS_PATH: Entry = Entry {
    id: "HEINE_GAUSS_PATH",
    summary: "Heine at z = c/(a b t^(n-1)) reduces to a 1Phi0 and gives Gauss",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[],
    fill: heine_gauss_fill,
    envelope: heine_gauss_envelope,
    build: heine_gauss_build,
};

fn heine_gauss_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    let shift = ps.k.unwrap_or(1) as i64 * (ps.n as i64 - 1);
    generic(ps, s, &[("a", 1), ("b", 1 + shift), ("c", 4 + 2 * shift)]);
}

fn heine_gauss_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for k in 1..=2 {
            v.push(Case::new(ParamSpec::new(Mode::FormalQ, n).with_k(k), 2));
        }
    }
    v
}

fn heine_gauss_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let z = ring.div(&c, &tp(ring, &ring.mul(&a, &b), n as i64 - 1))?;
    let target = ps.target();
    let (lhs, t1) = scalar_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::Principal(z.clone())), ring, target)?;
    let (heine, t2) = heine_rhs(ring, n, &a, &b, &c, &z, target)?;
    // the transformed series collapses to 1Phi0(c/ab; b t^{1-n} t^delta)
    let pre = prod(
        ring,
        cat(vec![each(n, |i| tp(ring, &b, 1 - i)), each(n, |i| tp(ring, &ring.div(&c, &b).unwrap(), 1 - i))]),
        cat(vec![each(n, |i| tp(ring, &c, 1 - i)), each(n, |i| tp(ring, &ring.div(&c, &ring.mul(&a, &b)).unwrap(), 1 - i))]),
    )?;
    let one_phi_zero = prod(
        ring,
        each(n, |i| tp(ring, &ring.div(&c, &a).unwrap(), 1 - i)),
        each(n, |i| tp(ring, &b, 1 - i)),
    )?;
    let gauss = gauss_product(ring, n, &a, &b, &c)?;
    let mut check = Check { terms: t1 + t2, ..Default::default() };
    check.push(Claim::scalars("heine", lhs.clone(), heine));
    check.push(Claim::scalars("1Phi0 summed", lhs.clone(), ring.mul(&pre, &one_phi_zero)));
    check.push(Claim::scalars("gauss", lhs, gauss));
    Ok(check)
}

static HEINE_EULER_PATH: Entry = Entry {
    id: "HEINE_EULER_PATH",
    summary: "iterated Heine transformations reach Euler's transformation at z t^delta",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[],
    fill: heine_euler_fill,
    envelope: heine_euler_envelope,
    build: heine_euler_build,
};

fn heine_euler_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    if ps.mode == Mode::RationalPoint {
        generic(ps, s, &[("a", 0), ("b", 0), ("c", 0)]);
    } else {
        let shift = ps.k.unwrap_or(1) as i64 * (ps.n as i64 - 1);
        generic(ps, s, &[("a", 1), ("b", 1 + shift), ("c", 3 + 2 * shift), ("z", 2 + shift)]);
    }
}

fn heine_euler_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for k in 1..=2 {
            v.push(Case::new(ParamSpec::new(Mode::FormalQ, n).with_k(k), 2));
        }
        let mut ps = ParamSpec::new(Mode::RationalPoint, n).with_k(1);
        ps.dz = 5;
        v.push(Case::new(ps, 2));
    }
    v
}

fn heine_euler_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let ni = n as i64;
    let n1 = ni - 1;
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let z = principal_z(ps, ring)?;
    let target = ps.target();
    let ab = ring.mul(&a, &b);
    let (s0, mut terms) = scalar_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::Principal(z.clone())), ring, target)?;
    let mut check = Check::default();

    // Euler at z t^delta: prod (ab z t^{n-i}/c)/(z t^{n-i}) 2Phi1(c/a, c/b; c; (ab/c) z t^delta)
    let abc = ring.div(&ab, &c)?;
    let pre3 = prod(ring, each(n, |i| tp(ring, &ring.mul(&abc, &z), ni - i)), each(n, |i| tp(ring, &z, ni - i)))?;
    let spec3 = phi(vec![ring.div(&c, &a)?, ring.div(&c, &b)?], vec![c.clone()], Arg::Principal(ring.mul(&abc, &z)));
    let (s3, t3) = scalar_series(&spec3, ring, target)?;
    terms += t3;
    check.push(Claim::scalars("euler at z t^delta", s0.clone(), ring.mul(&pre3, &s3)));

    if ps.mode == Mode::FormalQ {
        let (h1, t1) = heine_rhs(ring, n, &a, &b, &c, &z, target)?;
        // second step: prod (c t^{1-i}/b)(b z t^{n-i}) / ((c t^{1-i})(z t^{n-i}))
        //   2Phi1(ab z t^{n-1}/c, b; b z t^{n-1}; (c/b) t^{1-n} t^delta)
        let cb = ring.div(&c, &b)?;
        let pre2 = prod(
            ring,
            cat(vec![each(n, |i| tp(ring, &cb, 1 - i)), each(n, |i| tp(ring, &ring.mul(&b, &z), ni - i))]),
            cat(vec![each(n, |i| tp(ring, &c, 1 - i)), each(n, |i| tp(ring, &z, ni - i))]),
        )?;
        let spec2 = phi(
            vec![tp(ring, &ring.mul(&abc, &z), n1), b.clone()],
            vec![tp(ring, &ring.mul(&b, &z), n1)],
            Arg::Principal(tp(ring, &cb, -n1)),
        );
        let (s2, t2) = scalar_series(&spec2, ring, target)?;
        terms += t1 + t2;
        check.push(Claim::scalars("one Heine step", s0.clone(), h1));
        check.push(Claim::scalars("two Heine steps", s0, ring.mul(&pre2, &s2)));
    }
    check.terms = terms;
    Ok(check)
}

// ---------------------------------------------------------------------- Euler

static EULER: Entry = Entry {
    id: "EULER",
    summary: "2Phi1(a,b;c;z) = prod_i (ab z_i/c)_inf/(z_i)_inf 2Phi1(c/a,c/b;c;ab z/c), general z",
    kind: CheckKind::Series,
    modes: RATIONAL,
    constraints: &[],
    fill: abc_fill,
    envelope: euler_envelope,
    build: euler_build,
};

fn abc_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    if ps.t.is_none() && ps.k.is_none() {
        let q = ps.q.clone().unwrap();
        ps.t = Some(s.generic_t(&q));
    }
    generic(ps, s, &[("a", 0), ("b", 0), ("c", 0)]);
}

fn euler_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        let mut ps = ParamSpec::new(Mode::RationalPoint, n);
        ps.k = None;
        ps.dz = 4;
        v.push(Case::new(ps, 5));
    }
    let mut ps = ParamSpec::new(Mode::RationalPoint, 2).with("a", Value::Int(1));
    ps.dz = 4;
    v.push(Case::new(ps, 1));
    v
}

fn euler_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let abc = ring.div(&ring.mul(&a, &b), &c)?;
    let dz = ps.dz;
    let (lhs, t1) = general_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::General(Scalar::one())), ring, dz)?;
    let pre = product_general(ps.n, &[(abc.clone(), true), (Scalar::one(), false)], ring, dz)?;
    let (s, t2) = general_series(&phi(vec![ring.div(&c, &a)?, ring.div(&c, &b)?], vec![c.clone()], Arg::General(abc)), ring, dz)?;
    let rhs = pre.mul_deg(&s, ring, dz);
    let mut check = Check { terms: t1 + t2, ..Default::default() };
    check.push(Claim::new("euler", Side::Poly(lhs), Side::Poly(rhs)));
    Ok(check)
}

// ------------------------------------------------------------- Kaneko system

static KANEKO_SYSTEM: Entry = Entry {
    id: "KANEKO_SYSTEM",
    summary: "the truncated 2Phi1(a,b;c;z) solves the second-order q-difference system",
    kind: CheckKind::Residual,
    modes: RATIONAL,
    constraints: &[Constraint { text: "variant is 0 (corrected) or 1 (uncorrected)", holds: variant_ok }],
    fill: kaneko_fill,
    envelope: kaneko_envelope,
    build: kaneko_build,
};

fn variant_ok(ps: &ParamSpec) -> bool {
    matches!(ps.int("variant"), Ok(0) | Ok(1))
}

fn kaneko_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    abc_fill(ps, s);
    default(ps, "variant", || Value::Int(0));
}

fn kaneko_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for (n, dz) in [(1, 5), (2, 5), (3, 3)] {
        let mut ps = ParamSpec::new(Mode::RationalPoint, n);
        ps.k = None;
        ps.dz = dz;
        v.push(Case::new(ps, if n == 2 { 3 } else { 1 }));
    }
    v
}

fn kaneko_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a, b, c) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?, ps.scalar("c", ring)?);
    let dz = ps.dz;
    let (s, terms) = general_series(&phi(vec![a.clone(), b.clone()], vec![c.clone()], Arg::General(Scalar::one())), ring, dz)?;
    let mut p = QdifParams::new(a, b, c);
    p.variant = match ps.int("variant")? {
        0 => Variant::Corrected,
        1 => Variant::Uncorrected,
        v => return Err(Error::Params(format!("variant {v}"))),
    };
    let mut check = Check { terms, ..Default::default() };
    for i in 0..ps.n {
        let r = qdif_residual(&s, &p, i, dz, ring)?;
        // every coefficient the residual carries is certified
        check.push(Claim::new(format!("equation i={}", i + 1), Side::Table(monomial_table(&r)), Side::Table(Default::default())));
    }
    Ok(check)
}
