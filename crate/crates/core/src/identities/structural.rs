//! Finite identities among factorials, hooks and Macdonald polynomials,
//! checked exhaustively over small boxes and weights.

use std::collections::BTreeMap;


use super::build::*;
use super::params::{Mode, ParamSpec, Sampler, Value};
use super::{Case, Check, CheckKind, Claim, Constraint, Entry, Side};
use crate::error::Result;
use crate::macdonald::{
    gen_factorial, ground_closed, hooks, hprime_inf, inner_product, macdonald_gen, macdonald_poly, norm_ratio, psi_weight,
    u_eval,
};
use crate::partition::{partitions_of, partitions_up_to, Partition};
use crate::ring::{MPoly, Ring, Scalar};

pub(super) const ENTRIES: &[&Entry] =
    &[&OTOTO, &SHUMI, &LAPIZ, &SOMBRERO, &SYMM, &NORM_GROUND, &SHIFT, &JB, &NEG_REVERSE_P];

fn parts(lam: &Partition, n: usize) -> Result<Vec<i64>> {
    Ok(lam.padded(n)?.into_iter().map(i64::from).collect())
}

fn fac(ring: &Ring, a: &Scalar, lam: &Partition, n: usize) -> Result<Scalar> {
    gen_factorial(ring, a, &parts(lam, n)?)
}

fn hp(ring: &Ring, lam: &Partition) -> Scalar {
    hooks(lam, ring).1
}

fn key(lam: &Partition) -> String {
    format!("{:?}", lam.parts())
}

/// Partitions with at most `n` parts, each at most `width`.
fn in_box(width: u32, n: usize) -> Vec<Partition> {
    (0..=width * n as u32).flat_map(|w| partitions_of(w, n, width)).collect()
}

fn p_poly(lam: &Partition, n: usize, ring: &Ring) -> Result<MPoly> {
    Ok(macdonald_poly(lam, n, ring)?.to_mpoly())
}

fn box_width(ps: &ParamSpec) -> Result<u32> {
    Ok(ps.int("N")? as u32)
}

fn width_ok(ps: &ParamSpec) -> bool {
    ps.int("N").is_ok_and(|n| (0..=16).contains(&n))
}

fn needs_qk(ps: &ParamSpec) -> bool {
    ps.t.is_none() && ps.k.is_some()
}

const WIDTH: Constraint = Constraint { text: "0 <= N <= 16", holds: width_ok };
const T_IS_QK: Constraint = Constraint { text: "t = q^k", holds: needs_qk };

/// Largest weight enumerated.
const MAX_WEIGHT: u32 = 4;

/// A random `t` unless one is given.
fn t_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    if ps.mode == Mode::RationalPoint && ps.t.is_none() && ps.k.is_none() {
        let q = ps.q.clone().expect("q is sampled before parameters");
        ps.t = Some(s.generic_t(&q));
    }
}

fn a_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    t_fill(ps, s);
    generic(ps, s, &[("a", 1)]);
}

/// Per `n ≤ 3`: rational points with `t = q`, `t = q^2` and, unless the
/// identity needs `t = q^k`, an unrelated `t`; formal mode with `k = 1`.
fn modes_for(n: usize, any_t: bool) -> Vec<ParamSpec> {
    let mut v = vec![ParamSpec::new(Mode::RationalPoint, n), ParamSpec::new(Mode::RationalPoint, n).with_k(2)];
    if any_t {
        let mut ps = ParamSpec::new(Mode::RationalPoint, n);
        ps.k = None;
        v.push(ps);
    }
    v.push(ParamSpec::new(Mode::FormalQ, n));
    v
}

fn weight_envelope(any_t: bool) -> Vec<Case> {
    (1..=3).flat_map(|n| modes_for(n, any_t)).map(|ps| Case::new(ps, 1)).collect()
}

fn box_envelope(any_t: bool) -> Vec<Case> {
    let mut v = Vec::new();
    for n in 1..=3 {
        for ps in modes_for(n, any_t) {
            for w in 1..=3 {
                v.push(Case::new(ps.clone().with("N", Value::Int(w)), 1));
            }
        }
    }
    v
}

fn any_t_weights() -> Vec<Case> {
    weight_envelope(true)
}

fn qk_weights() -> Vec<Case> {
    weight_envelope(false)
}

fn any_t_boxes() -> Vec<Case> {
    box_envelope(true)
}

fn table_claim(label: &str, lhs: BTreeMap<String, Scalar>, rhs: BTreeMap<String, Scalar>) -> Claim {
    Claim::new(label, Side::Table(lhs), Side::Table(rhs))
}

// ---------------------------------------------------------- complement factorial

static OTOTO: Entry = Entry {
    id: "OTOTO",
    summary: "(a)_{hat l} = t^n(l) q^{n(l')-(N-1)|l|} (a)_(N^n) / ((-a)^|l| (t^{n-1} q^{1-N}/a)_l), hat l the complement in (N^n)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[WIDTH],
    fill: a_fill,
    envelope: any_t_boxes,
    build: ototo_build,
};

fn ototo_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let w = box_width(ps)?;
    let a = ps.scalar("a", ring)?;
    let full = fac(ring, &a, &Partition::rectangle(w, n), n)?;
    let inner = ring.div(&ring.mul(&ring.t_pow(n as i64 - 1), &ring.q_pow(1 - w as i64)), &a)?;
    let neg_a = Scalar::zero() - &a;
    let (mut lhs, mut rhs) = (BTreeMap::new(), BTreeMap::new());
    for lam in in_box(w, n) {
        let size = lam.weight() as i64;
        lhs.insert(key(&lam), fac(ring, &a, &lam.complement(w, n)?, n)?);
        let num = mul(ring, &[&ring.t_pow(lam.n_stat()), &ring.q_pow(lam.n_conj_stat() - (w as i64 - 1) * size), &full]);
        let den = ring.mul(&ring.pow(&neg_a, size)?, &fac(ring, &inner, &lam, n)?);
        rhs.insert(key(&lam), ring.div(&num, &den)?);
    }
    let mut check = Check { terms: lhs.len(), ..Default::default() };
    check.push(table_claim("complement factorial", lhs, rhs));
    Ok(check)
}

// -------------------------------------------------------------- complement hook

static SHUMI: Entry = Entry {
    id: "SHUMI",
    summary: "h'_{hat l}/h'_l = (-1)^|l| t^{n(l)-n((N^n))} q^{n(l')-N|l|} (q t^{n-1})_(N^n) / ((q^-N)_l (q t^{n-1})_l)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[WIDTH],
    fill: t_fill,
    envelope: any_t_boxes,
    build: shumi_build,
};

fn shumi_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let w = box_width(ps)?;
    let rect = Partition::rectangle(w, n);
    let qt = ring.mul(ring.q(), &ring.t_pow(n as i64 - 1));
    let full = fac(ring, &qt, &rect, n)?;
    let qn = ring.q_pow(-(w as i64));
    let (mut lhs, mut rhs) = (BTreeMap::new(), BTreeMap::new());
    for lam in in_box(w, n) {
        let size = lam.weight() as i64;
        lhs.insert(key(&lam), ring.div(&hp(ring, &lam.complement(w, n)?), &hp(ring, &lam))?);
        let sign = if size % 2 == 0 { Scalar::one() } else { Scalar::zero() - &Scalar::one() };
        let num = mul(
            ring,
            &[&sign, &ring.t_pow(lam.n_stat() - rect.n_stat()), &ring.q_pow(lam.n_conj_stat() - w as i64 * size), &full],
        );
        let den = ring.mul(&fac(ring, &qn, &lam, n)?, &fac(ring, &qt, &lam, n)?);
        rhs.insert(key(&lam), ring.div(&num, &den)?);
    }
    let mut check = Check { terms: lhs.len(), ..Default::default() };
    check.push(table_claim("complement hook", lhs, rhs));
    Ok(check)
}

// -------------------------------------------------------- hook as a product

static LAPIZ: Entry = Entry {
    id: "LAPIZ",
    summary: "h'_l = (q)_inf^n prod_i 1/(q^{l_i+1} t^{n-i})_inf prod_{i<j} (q^{l_i-l_j+1} t^{j-i})_inf / (q^{l_i-l_j+1} t^{j-i-1})_inf",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[T_IS_QK],
    fill: no_fill,
    envelope: qk_weights,
    build: lapiz_build,
};

fn no_fill(_: &mut ParamSpec, _: &mut Sampler) {}

fn lapiz_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let (mut lhs, mut rhs) = (BTreeMap::new(), BTreeMap::new());
    for lam in partitions_up_to(MAX_WEIGHT, n) {
        lhs.insert(key(&lam), hp(ring, &lam));
        rhs.insert(key(&lam), hprime_inf(ring, &parts(&lam, n)?)?.resolve("hook product")?);
    }
    let mut check = Check { terms: lhs.len(), ..Default::default() };
    check.push(table_claim("hook product", lhs, rhs));
    Ok(check)
}

// ------------------------------------------------------------ complement poly

static SOMBRERO: Entry = Entry {
    id: "SOMBRERO",
    summary: "P_{hat l}(x) = |x|^N P_l(1/x)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[WIDTH],
    fill: t_fill,
    envelope: any_t_boxes,
    build: sombrero_build,
};

fn sombrero_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let w = box_width(ps)?;
    let mut check = Check::default();
    for lam in in_box(w, n) {
        let hat = p_poly(&lam.complement(w, n)?, n, ring)?;
        let flipped = p_poly(&lam, n, ring)?.invert_vars().shift(&vec![w as i64; n]);
        check.push(table_claim(&format!("complement of {}", key(&lam)), monomial_table(&hat), monomial_table(&flipped)));
        check.terms += 1;
    }
    Ok(check)
}

// ----------------------------------------------------------------- symmetry

static SYMM: Entry = Entry {
    id: "SYMM",
    summary: "u_l(P_mu)/u_0(P_mu) = u_mu(P_l)/u_0(P_l)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[],
    fill: t_fill,
    envelope: any_t_weights,
    build: symm_build,
};

fn symm_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let all = partitions_up_to(MAX_WEIGHT, n);
    let zero = vec![0; n];
    let mut ground = BTreeMap::new();
    for mu in &all {
        ground.insert(mu.clone(), u_eval(&zero, mu, n, ring)?);
    }
    let (mut lhs, mut rhs) = (BTreeMap::new(), BTreeMap::new());
    for lam in &all {
        for mu in &all {
            if lam >= mu {
                continue;
            }
            let k = format!("{}|{}", key(lam), key(mu));
            lhs.insert(k.clone(), ring.div(&u_eval(&parts(lam, n)?, mu, n, ring)?, &ground[mu])?);
            rhs.insert(k, ring.div(&u_eval(&parts(mu, n)?, lam, n, ring)?, &ground[lam])?);
        }
    }
    let mut check = Check { terms: lhs.len(), ..Default::default() };
    check.push(table_claim("evaluation symmetry", lhs, rhs));
    Ok(check)
}

// ------------------------------------------------------------ norm and ground

static NORM_GROUND: Entry = Entry {
    id: "NORM_GROUND",
    summary: "<1,1> in closed form and <P_l,P_l>/<1,1> = (t^n)_l h'_l / ((q t^{n-1})_l h_l)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[T_IS_QK],
    fill: no_fill,
    envelope: norm_envelope,
    build: norm_build,
};

fn norm_envelope() -> Vec<Case> {
    qk_weights()
}

fn norm_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let one = MPoly::one(n);
    let ground = inner_product(&one, &one, ring)?;
    let mut check = Check::default();
    check.push(Claim::scalars("ground", ground.clone(), ground_closed(n, ring)?));
    let (mut lhs, mut rhs) = (BTreeMap::new(), BTreeMap::new());
    for lam in partitions_up_to(MAX_WEIGHT, n) {
        let p = p_poly(&lam, n, ring)?;
        lhs.insert(key(&lam), ring.div(&inner_product(&p, &p, ring)?, &ground)?);
        rhs.insert(key(&lam), norm_ratio(&lam, n, ring)?);
    }
    check.terms = lhs.len();
    check.push(table_claim("norm", lhs, rhs));
    Ok(check)
}

// -------------------------------------------------------------------- shift

static SHIFT: Entry = Entry {
    id: "SHIFT",
    summary: "|x|^a P_l = P_{l+a}",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[],
    fill: t_fill,
    envelope: any_t_weights,
    build: shift_build,
};

fn shift_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let mut check = Check::default();
    for lam in partitions_up_to(MAX_WEIGHT, n) {
        let p = p_poly(&lam, n, ring)?;
        for a in 1..=2i64 {
            let shifted = Partition::new(lam.padded(n)?.into_iter().map(|x| x + a as u32).collect())?;
            let direct = p_poly(&shifted, n, ring)?;
            let label = format!("{} + {a}", key(&lam));
            check.push(table_claim(&label, monomial_table(&p.shift(&vec![a; n])), monomial_table(&direct)));
            check.terms += 1;
        }
    }
    Ok(check)
}

// --------------------------------------------------- negated reversed indices

static JB: Entry = Entry {
    id: "JB",
    summary: "(a)_{-l^R} = (-q/a)^|l| q^n(l') t^n(l) / (q t^{n-1}/a)_l and (q t^{n-1})_{-l^R}/h'_{-l^R} = t^{(1-n)|l|} (q t^{n-1})_l / h'_l",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[T_IS_QK, Constraint { text: "variant is 0 (with t^n(l)) or 1 (without)", holds: variant_ok }],
    fill: jb_fill,
    envelope: qk_weights,
    build: jb_build,
};

fn variant_ok(ps: &ParamSpec) -> bool {
    matches!(ps.int("variant"), Ok(0) | Ok(1))
}

fn jb_fill(ps: &mut ParamSpec, s: &mut Sampler) {
    a_fill(ps, s);
    default(ps, "variant", || Value::Int(0));
}

fn jb_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    // variant 1 drops the t^{n(λ)} that the definition of (a)_λ produces
    let with_t = ps.int("variant")? == 0;
    let a = ps.scalar("a", ring)?;
    let qt = ring.mul(ring.q(), &ring.t_pow(n as i64 - 1));
    let mq_a = Scalar::zero() - &ring.div(ring.q(), &a)?;
    let (mut f1, mut f2, mut w1, mut w2) = (BTreeMap::new(), BTreeMap::new(), BTreeMap::new(), BTreeMap::new());
    for lam in partitions_up_to(MAX_WEIGHT, n) {
        let neg: Vec<i64> = parts(&lam, n)?.into_iter().rev().map(|p| -p).collect();
        let size = lam.weight() as i64;
        f1.insert(key(&lam), gen_factorial(ring, &a, &neg)?);
        let den = fac(ring, &ring.div(&qt, &a)?, &lam, n)?;
        let t_part = if with_t { ring.t_pow(lam.n_stat()) } else { Scalar::one() };
        let num = mul(ring, &[&ring.pow(&mq_a, size)?, &ring.q_pow(lam.n_conj_stat()), &t_part]);
        f2.insert(key(&lam), ring.div(&num, &den)?);
        w1.insert(key(&lam), psi_weight(ring, &neg)?);
        let rhs = ring.div(&ring.mul(&ring.t_pow((1 - n as i64) * size), &fac(ring, &qt, &lam, n)?), &hp(ring, &lam))?;
        w2.insert(key(&lam), rhs);
    }
    let mut check = Check { terms: f1.len(), ..Default::default() };
    check.push(table_claim("factorial", f1, f2));
    check.push(table_claim("bilateral weight", w1, w2));
    Ok(check)
}

// ------------------------------------------------------------ reversed poly

static NEG_REVERSE_P: Entry = Entry {
    id: "NEG_REVERSE_P",
    summary: "P_{-l^R}(z) = P_l(1/z)",
    kind: CheckKind::Coefficient,
    modes: BOTH,
    constraints: &[],
    fill: t_fill,
    envelope: any_t_weights,
    build: neg_reverse_build,
};

fn neg_reverse_build(ps: &ParamSpec, ring: &Ring) -> Result<Check> {
    let n = ps.n;
    let mut check = Check::default();
    for lam in partitions_up_to(MAX_WEIGHT, n) {
        let lhs = macdonald_gen(&lam.to_gen(n)?.neg_reverse(), ring)?;
        let rhs = p_poly(&lam, n, ring)?.invert_vars();
        check.push(table_claim(&key(&lam), monomial_table(&lhs), monomial_table(&rhs)));
        check.terms += 1;
    }
    Ok(check)
}
