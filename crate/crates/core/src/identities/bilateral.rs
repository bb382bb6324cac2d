//! Bilateral series: the ₁Ψ₁ sum, the constant-term evaluations and the
//! ₂Ψ₂ transformations.

use super::build::*;
use super::params::{Mode, ParamSpec, Sampler, Value};
use super::{Case, Check, CheckKind, Claim, Constraint, Entry};
use crate::error::{Error, Result};
use crate::hyperseries::{Arg, SeriesSpec};
use crate::macdonald::{ct_a_closed, ct_a_direct, inner_product, macdonald_poly, normalized_ct};
use crate::partition::{partitions_up_to, Partition};
use crate::ring::{MPoly, Ring, Scalar};

pub(super) const ENTRIES: &[&Entry] =
    &[&ONE_PSI_ONE, &KADELL_KANEKO_CT, &LLAVE, &TWO_PSI_TWO_A, &TWO_PSI_TWO_SUM, &TWO_PSI_TWO_B, &PSI_INVERSION, &BAILEY];

/// The `q`-exponent of a formal parameter `c·q^e`.
fn exponent(ps: &ParamSpec, name: &str) -> Option<i64> {
    match ps.params.get(name)? {
        Value::QPow { e, .. } => Some(*e),
        Value::Int(_) | Value::Rat(_) => Some(0),
    }
}

/// A bilateral sum below `target` after checking the indices one step
/// outside its window.
fn psi(spec: &SeriesSpec, ring: &Ring, target: i64) -> Result<(Scalar, usize)> {
    spec.check_outside(ring, target)?;
    scalar_series(spec, ring, target)
}

fn psi_spec(upper: Vec<Scalar>, lower: Vec<Scalar>, arg: Arg) -> Result<SeriesSpec> {
    SeriesSpec::psi(upper, lower, arg)
}

// ------------------------------------------------------------------- ₁Ψ₁

static ONE_PSI_ONE: Entry = Entry {
    id: "ONE_PSI_ONE",
    summary: "1Psi1(a; b; x) as a product, for |b/a| < |x_i| < 1",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[Constraint { text: "x_i = q^chi_i with 0 < chi_i < beta - alpha (a ~ q^alpha, b ~ q^beta)", holds: window_ok }],
    fill: raman_fill,
    envelope: raman_envelope,
    build: raman_build,
};

fn window_ok(ps: &ParamSpec) -> bool {
    let (Some(al), Some(be)) = (exponent(ps, "a"), exponent(ps, "b")) else { return false };
    ps.chi.len() == ps.n && ps.chi.iter().all(|&c| 0 < c && c < be - al)
}

fn raman_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic(ps, s, &[("a", 1), ("b", 4)]);
    if ps.chi.is_empty() {
        let gap = match (exponent(ps, "a"), exponent(ps, "b")) {
            (Some(al), Some(be)) => (be - al - 1).max(1),
            _ => 1,
        };
        ps.chi = (0..ps.n as i64).map(|i| i % gap + 1).collect();
    }
}

fn raman_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for (n, k) in [(1, 1), (2, 1), (2, 2)] {
        v.push(Case::new(ParamSpec::new(Mode::FormalQ, n).with_k(k), 2));
        let mut ps = ParamSpec::new(Mode::FormalQ, n).with_k(k);
        ps.chi = vec![2; n];
        v.push(Case::new(ps, 1));
    }
    // b = q: the q-binomial theorem
    for (n, k) in [(1, 1), (2, 1), (2, 2)] {
        let mut ps = ParamSpec::new(Mode::FormalQ, n).with_k(k).with("b", Value::qpow(1));
        ps.params.insert("a".into(), Value::QPow { c: crate::ring::rat(-2, 3), e: -2 });
        ps.chi = (1..=n as i64).collect();
        v.push(Case::new(ps, 1));
    }
    v
}

fn raman_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a, b) = (ps.scalar("a", ring)?, ps.scalar("b", ring)?);
    let x: Vec<Scalar> = ps.chi.iter().map(|&c| ring.q_pow(c)).collect();
    let target = ps.target();
    let spec = psi_spec(vec![a.clone()], vec![b.clone()], Arg::Point(x.clone()))?;
    let (lhs, terms) = psi(&spec, ring, target)?;
    let q = ring.q();
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (i, xi) in x.iter().enumerate() {
        let ax = ring.mul(&a, xi);
        let ti = ring.t_pow(i as i64);
        num.extend([ax.clone(), ring.div(q, &ax)?, ring.div(&ring.mul(&b, &ti), &a)?, q.clone()]);
        den.extend([xi.clone(), ring.div(&b, &ax)?, ring.div(&ring.mul(q, &ti), &a)?, b.clone()]);
    }
    let rhs = prod(ring, num, den)?;
    let mut check = Check { claims: Vec::new(), terms };
    check.push(Claim::scalars("1Psi1 sum", lhs.clone(), rhs));
    if ps.unit_exponent("b") == Some(1) {
        let (phi0, _) = scalar_series(&phi(vec![a.clone()], vec![], Arg::Point(x.clone())), ring, target)?;
        let qbin = prod(ring, x.iter().map(|xi| ring.mul(&a, xi)).collect(), x)?;
        check.push(Claim::scalars("b = q: 1Phi0 series", lhs.clone(), phi0));
        check.push(Claim::scalars("b = q: q-binomial product", lhs, qbin));
    }
    Ok(check)
}

// ------------------------------------------------------- constant terms

const CT_PARAMS: Constraint = Constraint { text: "t = q^k; a, b non-negative integers", holds: ct_ok };

fn ct_ok(ps: &ParamSpec) -> bool {
    let nonneg = |name: &str| matches!(ps.params.get(name), Some(Value::Int(i)) if *i >= 0);
    ps.k.is_some() && (ps.mode == Mode::FormalQ || ps.t.is_none()) && nonneg("a") && nonneg("b")
}

fn ct_fill(ps: &mut ParamSpec, _s: &mut Sampler) {
    default(ps, "a", || Value::Int(1));
    default(ps, "b", || Value::Int(1));
    if ps.lambda.is_none() {
        ps.lambda = Some(Partition::empty());
    }
}

/// `n ≤ 2`, `a, b ≤ 2`, `|λ| ≤ 2` with `k = 1`, and a few `k = 2` and
/// rational-point cases.
fn ct_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=2 {
        for lam in partitions_up_to(2, n) {
            for a in 0..=2 {
                for b in 0..=2 {
                    let mut ps = ParamSpec::new(Mode::FormalQ, n).with("a", Value::Int(a)).with("b", Value::Int(b));
                    ps.lambda = Some(lam.clone());
                    v.push(Case::new(ps, 1));
                }
            }
        }
    }
    for lam in partitions_up_to(2, 2) {
        let mut ps = ParamSpec::new(Mode::FormalQ, 2).with_k(2).with("a", Value::Int(1)).with("b", Value::Int(2));
        ps.lambda = Some(lam.clone());
        v.push(Case::new(ps, 1));
        let mut ps = ParamSpec::new(Mode::RationalPoint, 2).with("a", Value::Int(2)).with("b", Value::Int(1));
        ps.lambda = Some(lam);
        v.push(Case::new(ps, 1));
    }
    v
}

fn ct_args(ps: &ParamSpec) -> Result<(u32, u32, Partition)> {
    let a = u32::try_from(ps.int("a")?).map_err(|_| Error::Params("a must be non-negative".into()))?;
    let b = u32::try_from(ps.int("b")?).map_err(|_| Error::Params("b must be non-negative".into()))?;
    let lam = ps.lambda.clone().unwrap_or_else(Partition::empty);
    if lam.len() > ps.n {
        return Err(Error::LengthExceeded { len: lam.len(), n: ps.n });
    }
    Ok((a, b, lam))
}

static KADELL_KANEKO_CT: Entry = Entry {
    id: "KADELL_KANEKO_CT",
    summary: "C.T. of P_lambda(x) prod_i (x_i)_a (q/x_i)_b Delta_q(x) in closed form",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[CT_PARAMS],
    fill: ct_fill,
    envelope: ct_envelope,
    build: ct_build,
};

fn ct_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a, b, lam) = ct_args(ps)?;
    let n = ps.n;
    let direct = ct_a_direct(&lam, a, b, n, ring)?;
    let closed = ct_a_closed(&lam, a, b, n, ring)?;
    let mut check = Check { claims: Vec::new(), terms: 1 };
    check.push(Claim::scalars("constant term", direct.clone(), closed));
    if lam.is_empty() {
        // the ground value from the inner product itself, not its closed form
        let one = MPoly::one(n);
        let ground = inner_product(&one, &one, ring)?;
        let mut num = Vec::new();
        let mut den = Vec::new();
        for i in 0..n as i64 {
            let ti = ring.t_pow(i);
            let at = |e: i64| ring.mul(&ring.q_pow(e), &ti);
            num.extend([at(1 + a as i64), at(1 + b as i64)]);
            den.extend([at(1), at(1 + (a + b) as i64)]);
        }
        let rhs = ring.mul(&prod(ring, num, den)?, &ground);
        check.push(Claim::scalars("empty partition against <1,1>", direct.clone(), rhs));
        if n == 1 && a == 1 && b == 1 {
            let one_plus_q = Scalar::one() + ring.q().clone();
            check.push(Claim::scalars("n = 1, a = b = 1", direct, one_plus_q));
        }
    }
    Ok(check)
}

static LLAVE: Entry = Entry {
    id: "LLAVE",
    summary: "C.T. of P_lambda(1/x) prod_i (q^-u/x_i)_a (q^(1+u) x_i)_b Delta_q = q^(u|lambda|) A_lambda(a,b)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[CT_PARAMS],
    fill: llave_fill,
    envelope: llave_envelope,
    build: llave_build,
};

fn llave_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    ct_fill(ps, s);
    default(ps, "u", || Value::Int(1));
}

fn llave_envelope() -> Vec<Case> {
    let mut v = Vec::new();
    for (i, case) in ct_envelope().into_iter().enumerate() {
        let u = [1, -1, 2, 0][i % 4];
        v.push(Case::new(case.spec.with("u", Value::Int(u)), 1));
    }
    v
}

/// `∏_i (c_1 x_i^{s_1}; q)_{m_1} (c_2 x_i^{s_2}; q)_{m_2}` for signs `s`.
fn linear_weight(n: usize, factors: &[(Scalar, i64, u32)], ring: &Ring) -> MPoly {
    let mut acc = MPoly::one(n);
    for i in 0..n {
        for (c, sign, m) in factors {
            let mut e = vec![0; n];
            e[i] = *sign;
            for j in 0..*m as i64 {
                let term = MPoly::monomial(e.clone(), ring.mul(c, &ring.q_pow(j)));
                acc = acc.mul(&MPoly::one(n).sub(&term), ring);
            }
        }
    }
    acc
}

fn llave_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a, b, lam) = ct_args(ps)?;
    let u = ps.int("u")?;
    let n = ps.n;
    let p = macdonald_poly(&lam, n, ring)?.to_mpoly().invert_vars();
    let weight = linear_weight(n, &[(ring.q_pow(-u), -1, a), (ring.q_pow(1 + u), 1, b)], ring);
    let lhs = normalized_ct(&p.mul(&weight, ring), ring)?;
    let scale = ring.q_pow(u * lam.weight() as i64);
    let rhs = ring.mul(&scale, &ct_a_closed(&lam, a, b, n, ring)?);
    let direct = ring.mul(&scale, &ct_a_direct(&lam, a, b, n, ring)?);
    let mut check = Check { claims: Vec::new(), terms: 1 };
    check.push(Claim::scalars("closed form", lhs.clone(), rhs));
    check.push(Claim::scalars("direct constant term", lhs, direct));
    Ok(check)
}

// ------------------------------------------------------------------- ₂Ψ₂

fn psi22(ring: &Ring, up: [&Scalar; 2], down: [&Scalar; 2], arg: Arg, target: i64) -> Result<(Scalar, usize)> {
    let spec = psi_spec(vec![up[0].clone(), up[1].clone()], vec![down[0].clone(), down[1].clone()], arg)?;
    psi(&spec, ring, target)
}

/// `α_1, …, α_4`.
fn alphas(ps: &ParamSpec, ring: &Ring) -> Result<[Scalar; 4]> {
    Ok([ps.scalar("a1", ring)?, ps.scalar("a2", ring)?, ps.scalar("a3", ring)?, ps.scalar("a4", ring)?])
}

/// `x · t^{i}` for `i = 0..n`.
fn rows(ring: &Ring, x: &Scalar) -> Vec<Scalar> {
    (0..ring.n as i64).map(|i| tp(ring, x, i)).collect()
}

/// `x` repeated once per variable.
fn flat(ring: &Ring, x: &Scalar) -> Vec<Scalar> {
    vec![x.clone(); ring.n]
}

fn d(ring: &Ring, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    ring.div(a, b)
}

/// Formal-mode defaults: exponents keep every argument of positive
/// valuation on both sides.
fn alpha_fill(ps: &mut ParamSpec, s: &mut Sampler, exps: [i64; 4]) {
    generic(ps, s, &[("a1", exps[0]), ("a2", exps[1]), ("a3", exps[2]), ("a4", exps[3])]);
}

fn alpha_envelope(points: usize) -> Vec<Case> {
    [(1, 1), (2, 1), (2, 2)].into_iter().map(|(n, k)| {
        let mut ps = ParamSpec::new(Mode::FormalQ, n).with_k(k);
        ps.dq = 8;
        Case::new(ps, points)
    }).collect()
}

/// The right side of the first transformation (`z = α_3/(α_1 α_2)`).
fn beetroot_rhs(ring: &Ring, al: &[Scalar; 4], target: i64) -> Result<(Scalar, usize)> {
    let [a1, a2, a3, a4] = al;
    let q = ring.q();
    let n = ring.n as i64;
    let pre = prod(
        ring,
        cat(vec![flat(ring, q), rows(ring, &d(ring, a3, a1)?), rows(ring, &d(ring, a4, a2)?), rows(ring, &d(ring, a3, a2)?)]),
        cat(vec![flat(ring, a3), rows(ring, a4), rows(ring, &d(ring, q, a2)?), rows(ring, &d(ring, a3, &ring.mul(a1, a2))?)]),
    )?;
    let spec = phi(
        vec![d(ring, q, a4)?, d(ring, &ring.mul(q, a2), a3)?],
        vec![d(ring, &tp(ring, q, n - 1), a1)?],
        Arg::Principal(d(ring, a4, a2)?),
    );
    let (series, terms) = scalar_series(&spec, ring, target)?;
    Ok((ring.mul(&pre, &series), terms))
}

static TWO_PSI_TWO_A: Entry = Entry {
    id: "TWO_PSI_TWO_A",
    summary: "2Psi2(a1,a2; a3,a4 t^(n-1); a3/(a1 a2) t^delta) as a product times a 2Phi1",
    kind: CheckKind::Series,
    modes: BOTH,
    constraints: &[
        Constraint { text: "rational point: integral route (integers a, b, a2, b2 >= 0 and u)", holds: beet_ok },
        Constraint { text: "formal mode: a3/(a1 a2) and a4/a2 of positive valuation", holds: beet_positive },
    ],
    fill: beet_fill,
    envelope: beet_envelope,
    build: beet_build,
};

fn integral_route(ps: &ParamSpec) -> bool {
    ps.has("u")
}

fn beet_ok(ps: &ParamSpec) -> bool {
    let nonneg = |name: &str| matches!(ps.params.get(name), Some(Value::Int(i)) if *i >= 0);
    if integral_route(ps) {
        return ps.k.is_some() && ps.t.is_none() && ["a", "b", "a2", "b2"].iter().all(|n| nonneg(n)) && ps.int("u").is_ok();
    }
    ps.mode == Mode::FormalQ
}

fn beet_positive(ps: &ParamSpec) -> bool {
    if integral_route(ps) {
        return true;
    }
    let e = |n: &str| exponent(ps, n).unwrap_or(0);
    e("a3") - e("a1") - e("a2") > 0 && e("a4") - e("a2") > 0
}

fn beet_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    if integral_route(ps) {
        for name in ["a", "b", "a2", "b2"] {
            default(ps, name, || Value::Int(1));
        }
        return;
    }
    alpha_fill(ps, s, [0, 0, 1, 1]);
}

fn beet_envelope() -> Vec<Case> {
    let mut v = alpha_envelope(2);
    for mode in [Mode::FormalQ, Mode::RationalPoint] {
        for (n, k) in [(1, 1), (2, 1), (2, 2)] {
            for (a, b, a2, b2) in [(1, 1, 1, 1), (2, 1, 0, 2), (1, 2, 2, 0)] {
                for u in [a - 1, 0, 1] {
                    let ps = ParamSpec::new(mode, n)
                        .with_k(k)
                        .with("a", Value::Int(a))
                        .with("b", Value::Int(b))
                        .with("a2", Value::Int(a2))
                        .with("b2", Value::Int(b2))
                        .with("u", Value::Int(u));
                    v.push(Case::new(ps, 1));
                }
            }
        }
    }
    v
}

fn beet_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let target = ps.target();
    let mut check = Check::default();
    let al = if integral_route(ps) {
        integral_claims(ps, ring, &mut check)?
    } else {
        alphas(ps, ring)?
    };
    if integral_route(ps) && ps.int("u")? != ps.int("a")? - 1 {
        return Ok(check);
    }
    let [a1, a2, a3, a4] = &al;
    let n = ps.n as i64;
    let z = d(ring, a3, &ring.mul(a1, a2))?;
    let (lhs, terms) = psi22(ring, [a1, a2], [a3, &tp(ring, a4, n - 1)], Arg::Principal(z), target)?;
    let (rhs, _) = beetroot_rhs(ring, &al, target)?;
    check.terms += terms;
    check.push(Claim::scalars("2Psi2 to 2Phi1", lhs, rhs));
    Ok(check)
}

/// `I(a, b, a', b'; u)` as a constant term against its bilateral
/// expansion and, for `u = a - 1`, its terminating `₂Φ₁` form. Returns the
/// `α` these integers correspond to.
fn integral_claims(ps: &ParamSpec, ring: &Ring, check: &mut Check) -> Result<[Scalar; 4]> {
    let n = ps.n;
    let get = |name: &str| -> Result<i64> { ps.int(name) };
    let (a, b, a2, b2, u) = (get("a")?, get("b")?, get("a2")?, get("b2")?, get("u")?);
    let qp = |e: i64| ring.q_pow(e);
    let weight = linear_weight(
        n,
        &[(Scalar::one(), 1, a as u32), (qp(1), -1, b as u32), (qp(-u), -1, a2 as u32), (qp(u + 1), 1, b2 as u32)],
        ring,
    );
    let ct = normalized_ct(&weight, ring)?;
    let one = MPoly::one(n);
    let ground = inner_product(&one, &one, ring)?;
    let target = ps.target();
    let pre = prod(
        ring,
        cat(vec![flat(ring, &qp(1 + a)), rows(ring, &qp(1 + b)), rows(ring, &qp(1 + a2)), rows(ring, &qp(1 + b2))]),
        cat(vec![flat(ring, &qp(1)), rows(ring, &qp(1)), rows(ring, &qp(1 + a + b)), rows(ring, &qp(1 + a2 + b2))]),
    )?;
    let arg = Arg::Principal(qp(b + b2 + 2 + u));
    let (series, terms) = psi22(ring, [&qp(-b), &qp(-b2)], [&qp(1 + a), &tp(ring, &qp(1 + a2), n as i64 - 1)], arg, target)?;
    check.terms += terms;
    let bilateral = mul(ring, &[&pre, &ground, &series]);
    check.push(Claim::scalars("constant term against 2Psi2", ct.clone(), bilateral));
    if u == a - 1 {
        let pre = prod(
            ring,
            cat(vec![rows(ring, &qp(1 + b)), rows(ring, &qp(1 + a + b2))]),
            cat(vec![rows(ring, &qp(1)), rows(ring, &qp(1 + a + b + b2))]),
        )?;
        let spec = phi(
            vec![qp(-a2), qp(-a - b2)],
            vec![tp(ring, &qp(1 + b), n as i64 - 1)],
            Arg::Principal(qp(1 + a2 + b2)),
        );
        let (series, _) = scalar_series(&spec, ring, target)?;
        check.push(Claim::scalars("constant term against 2Phi1", ct, mul(ring, &[&pre, &ground, &series])));
    }
    Ok([qp(-b), qp(-b2), qp(1 + a), qp(1 + a2)])
}

static TWO_PSI_TWO_SUM: Entry = Entry {
    id: "TWO_PSI_TWO_SUM",
    summary: "2Psi2(a1,a2; q a1, a4 t^(n-1); q/a2 t^delta) as a product",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[Constraint { text: "q/a2 of positive valuation", holds: sum_ok }],
    fill: sum_fill,
    envelope: sum_envelope,
    build: sum_build,
};

fn sum_ok(ps: &ParamSpec) -> bool {
    1 - exponent(ps, "a2").unwrap_or(0) > 0
}

fn sum_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    generic(ps, s, &[("a1", 0), ("a2", 0), ("a4", 1)]);
}

fn sum_envelope() -> Vec<Case> {
    alpha_envelope(3)
}

fn sum_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let (a1, a2, a4) = (ps.scalar("a1", ring)?, ps.scalar("a2", ring)?, ps.scalar("a4", ring)?);
    let q = ring.q();
    let n = ps.n as i64;
    let qa1 = ring.mul(q, &a1);
    let (lhs, terms) = psi22(ring, [&a1, &a2], [&qa1, &tp(ring, &a4, n - 1)], Arg::Principal(d(ring, q, &a2)?), ps.target())?;
    let rhs = prod(
        ring,
        cat(vec![flat(ring, q), rows(ring, q), rows(ring, &d(ring, &qa1, &a2)?), rows(ring, &d(ring, &a4, &a1)?)]),
        cat(vec![flat(ring, &qa1), rows(ring, &a4), rows(ring, &d(ring, q, &a2)?), rows(ring, &d(ring, q, &a1)?)]),
    )?;
    let mut check = Check { claims: Vec::new(), terms };
    check.push(Claim::scalars("2Psi2 sum", lhs, rhs));
    Ok(check)
}

static TWO_PSI_TWO_B: Entry = Entry {
    id: "TWO_PSI_TWO_B",
    summary: "2Psi2(a1,a2; a3,a4 t^(n-1); q/(a1 a2) t^delta) = products times 2Psi2(a1, q/a3; q/a2, a4 t^(n-1); a3/a1 t^delta)",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[
        Constraint { text: "q/(a1 a2) and a3/a1 of positive valuation", holds: corn_ok },
        Constraint { text: "variant is 0 (q/a3) or 1 (q a3)", holds: variant_ok },
    ],
    fill: corn_fill,
    envelope: corn_envelope,
    build: corn_build,
};

fn variant_ok(ps: &ParamSpec) -> bool {
    matches!(ps.int("variant"), Ok(0) | Ok(1))
}

fn corn_ok(ps: &ParamSpec) -> bool {
    let e = |n: &str| exponent(ps, n).unwrap_or(0);
    1 - e("a1") - e("a2") > 0 && e("a3") - e("a1") > 0
}

fn corn_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    alpha_fill(ps, s, [0, 0, 1, 1]);
    default(ps, "variant", || Value::Int(0));
}

fn corn_envelope() -> Vec<Case> {
    alpha_envelope(2)
}

/// Both sides of the second transformation; `variant` 1 takes `q α_3` as
/// the second upper parameter on the right.
fn corn_sides(ring: &Ring, al: &[Scalar; 4], variant: i64, target: i64) -> Result<(Scalar, Scalar, usize)> {
    let [a1, a2, a3, a4] = al;
    let q = ring.q();
    let n = ring.n as i64;
    let a4t = tp(ring, a4, n - 1);
    let (lhs, terms) = psi22(ring, [a1, a2], [a3, &a4t], Arg::Principal(d(ring, q, &ring.mul(a1, a2))?), target)?;
    let pre = prod(
        ring,
        cat(vec![flat(ring, &d(ring, q, a2)?), rows(ring, a3), rows(ring, &d(ring, a4, a2)?), rows(ring, &d(ring, a3, a1)?)]),
        cat(vec![
            flat(ring, a3),
            rows(ring, &d(ring, q, a2)?),
            rows(ring, &d(ring, q, &ring.mul(a1, a2))?),
            rows(ring, &d(ring, &ring.mul(a3, a4), q)?),
        ]),
    )?;
    let second = if variant == 1 { ring.mul(q, a3) } else { d(ring, q, a3)? };
    let (series, more) = psi22(ring, [a1, &second], [&d(ring, q, a2)?, &a4t], Arg::Principal(d(ring, a3, a1)?), target)?;
    Ok((lhs, ring.mul(&pre, &series), terms + more))
}

fn corn_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let al = alphas(ps, ring)?;
    let (lhs, rhs, terms) = corn_sides(ring, &al, ps.int("variant")?, ps.target())?;
    let mut check = Check { claims: Vec::new(), terms };
    check.push(Claim::scalars("2Psi2 to 2Psi2", lhs, rhs));
    Ok(check)
}

static PSI_INVERSION: Entry = Entry {
    id: "PSI_INVERSION",
    summary: "2Psi2(a,b;c,d;z) = products times 2Psi2(q/c, q t^(n-1)/d; q/a, q t^(n-1)/b; c d/(a b) z^-1)",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[
        Constraint { text: "z = w t^delta; w and c d/(a b w t^(n-1)) of positive valuation", holds: inversion_ok },
        Constraint { text: "variant is 0 (cd/(ab)) or 1 (cd/(ac))", holds: variant_ok },
    ],
    fill: inversion_fill,
    envelope: inversion_envelope,
    build: inversion_build,
};

fn inversion_ok(ps: &ParamSpec) -> bool {
    let e = |n: &str| exponent(ps, n).unwrap_or(0);
    let k = ps.k.unwrap_or(1) as i64;
    e("w") > 0 && e("a3") + e("a4") - e("a1") - e("a2") - e("w") - k * (ps.n as i64 - 1) > 0
}

fn inversion_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    alpha_fill(ps, s, [0, 0, 1, 4]);
    generic(ps, s, &[("w", 1)]);
    default(ps, "variant", || Value::Int(0));
}

fn inversion_envelope() -> Vec<Case> {
    alpha_envelope(2)
}

fn inversion_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let [a, b, c, dd] = alphas(ps, ring)?;
    let w = ps.scalar("w", ring)?;
    let q = ring.q();
    let n = ps.n as i64;
    let target = ps.target();
    let (lhs, terms) = psi22(ring, [&a, &b], [&c, &dd], Arg::Principal(w.clone()), target)?;
    let scale = if ps.int("variant")? == 1 {
        d(ring, &ring.mul(&c, &dd), &ring.mul(&a, &c))?
    } else {
        d(ring, &ring.mul(&c, &dd), &ring.mul(&a, &b))?
    };
    let point: Vec<Scalar> =
        rows(ring, &w).iter().map(|wi| d(ring, &scale, wi)).collect::<Result<_>>()?;
    let qt = tp(ring, q, n - 1);
    let (series, more) = psi22(
        ring,
        [&d(ring, q, &c)?, &d(ring, &qt, &dd)?],
        [&d(ring, q, &a)?, &d(ring, &qt, &b)?],
        Arg::Point(point),
        target,
    )?;
    let pre = prod(ring, cat(vec![rows(ring, &c), flat(ring, &d(ring, q, &a)?)]), cat(vec![flat(ring, &c), rows(ring, &d(ring, q, &a)?)]))?;
    let mut check = Check { claims: Vec::new(), terms: terms + more };
    check.push(Claim::scalars("inversion", lhs, ring.mul(&pre, &series)));
    Ok(check)
}

static BAILEY: Entry = Entry {
    id: "BAILEY",
    summary: "2Psi2(a1,a2; a3,a4 t^(n-1); z t^delta) = products times 2Psi2(a2, a1 a2 z/a4; a2 z, a3 t^(n-1); a4/a2 t^delta)",
    kind: CheckKind::Series,
    modes: FORMAL,
    constraints: &[
        Constraint { text: "z, a4, a3/a1 and a3 a4 t^(n-1)/(a1 a2 z) of positive valuation", holds: bailey_ok },
        Constraint { text: "variant is 0 (argument a4/a2 t^delta) or 1 (a4 t^(n-1)/a2 t^delta)", holds: variant_ok },
        Constraint { text: "reduce is 0 (none), 1 (z = a3/(a1 a2)) or 2 (z = q/(a1 a2))", holds: reduce_ok },
    ],
    fill: bailey_fill,
    envelope: bailey_envelope,
    build: bailey_build,
};

fn reduce_ok(ps: &ParamSpec) -> bool {
    matches!(ps.int("reduce"), Ok(0) | Ok(1) | Ok(2))
}

fn bailey_ok(ps: &ParamSpec) -> bool {
    let e = |n: &str| exponent(ps, n).unwrap_or(0);
    let k = ps.k.unwrap_or(1) as i64;
    let z = match ps.int("reduce") {
        Ok(1) => e("a3") - e("a1") - e("a2"),
        Ok(2) => 1 - e("a1") - e("a2"),
        _ => e("z"),
    };
    z > 0 && e("a3") - e("a1") > 0 && e("a4") > 0 && e("a3") + e("a4") + k * (ps.n as i64 - 1) - e("a1") - e("a2") - z > 0
}

fn bailey_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    alpha_fill(ps, s, [0, 0, 1, 1]);
    default(ps, "variant", || Value::Int(0));
    default(ps, "reduce", || Value::Int(0));
    if ps.int("reduce").ok() == Some(0) {
        generic(ps, s, &[("z", 1)]);
    }
}

fn bailey_envelope() -> Vec<Case> {
    let mut v = alpha_envelope(2);
    for reduce in [1, 2] {
        for case in alpha_envelope(1) {
            v.push(Case::new(case.spec.with("reduce", Value::Int(reduce)), 1));
        }
    }
    v
}

fn bailey_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let al = alphas(ps, ring)?;
    let [a1, a2, a3, a4] = &al;
    let q = ring.q();
    let n = ps.n as i64;
    let target = ps.target();
    let reduce = ps.int("reduce")?;
    let z = match reduce {
        1 => d(ring, a3, &ring.mul(a1, a2))?,
        2 => d(ring, q, &ring.mul(a1, a2))?,
        _ => ps.scalar("z", ring)?,
    };
    let a4t = tp(ring, a4, n - 1);
    let (lhs, terms) = psi22(ring, [a1, a2], [a3, &a4t], Arg::Principal(z.clone()), target)?;
    let a2z = ring.mul(a2, &z);
    let a12z = mul(ring, &[a1, a2, &z]);
    let pre = prod(
        ring,
        cat(vec![
            rows(ring, a3),
            rows(ring, &d(ring, a3, a1)?),
            rows(ring, &d(ring, a4, a2)?),
            flat(ring, &a2z),
            rows(ring, &d(ring, &ring.mul(q, a4), &a12z)?),
        ]),
        cat(vec![
            flat(ring, a3),
            rows(ring, &d(ring, q, a1)?),
            rows(ring, a4),
            rows(ring, &z),
            rows(ring, &d(ring, &ring.mul(a3, a4), &a12z)?),
        ]),
    )?;
    let (series, more) = psi22(
        ring,
        [a2, &d(ring, &a12z, a4)?],
        [&a2z, &tp(ring, a3, n - 1)],
        Arg::Principal(d(ring, if ps.int("variant")? == 1 { &a4t } else { a4 }, a2)?),
        target,
    )?;
    let rhs = ring.mul(&pre, &series);
    let mut check = Check { claims: Vec::new(), terms: terms + more };
    check.push(Claim::scalars("Bailey transformation", lhs.clone(), rhs.clone()));
    match reduce {
        1 => {
            let (special, _) = beetroot_rhs(ring, &al, target)?;
            check.push(Claim::scalars("z = a3/(a1 a2): first transformation", rhs, special));
        }
        2 => {
            let (_, special, _) = corn_sides(ring, &al, 0, target)?;
            check.push(Claim::scalars("z = q/(a1 a2): second transformation", rhs, special));
        }
        _ => {}
    }
    Ok(check)
}
