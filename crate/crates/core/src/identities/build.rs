//! Shared pieces for identity builders.

use crate::error::Result;
use crate::hyperseries::{Arg, SeriesSpec};
use crate::identities::params::{Mode, ParamSpec, Sampler, Value};
use crate::ring::{InfProd, MPoly, Rat, Ring, Scalar};
use num_traits::Zero;

pub const BOTH: &[Mode] = &[Mode::FormalQ, Mode::RationalPoint];
pub const FORMAL: &[Mode] = &[Mode::FormalQ];
pub const RATIONAL: &[Mode] = &[Mode::RationalPoint];

/// The ratio `x/y` of two parameters is `q^m` for an integer `m` in `range`.
pub fn ratio_is_q_power(ps: &ParamSpec, x: &str, y: &str, range: std::ops::RangeInclusive<i64>) -> bool {
    let Ok(ring) = ps.ring(8) else { return false };
    let (Ok(a), Ok(b)) = (ps.scalar(x, &ring), ps.scalar(y, &ring)) else { return false };
    let Ok(r) = ring.div(&a, &b) else { return false };
    ring.q_log(&r).is_some_and(|m| range.contains(&m))
}

pub fn terminating(ps: &ParamSpec, name: &str) -> bool {
    ps.unit_exponent(name).is_some_and(|e| e <= 0)
}

/// `[f(1), …, f(n)]`.
pub fn each(n: usize, f: impl Fn(i64) -> Scalar) -> Vec<Scalar> {
    (1..=n as i64).map(f).collect()
}

/// `∏ (u;q)_∞ / ∏ (v;q)_∞`.
pub fn prod(ring: &Ring, num: Vec<Scalar>, den: Vec<Scalar>) -> Result<Scalar> {
    let mut p = InfProd::new();
    for u in num {
        p = p.num(u);
    }
    for v in den {
        p = p.den(v);
    }
    p.eval(ring)
}

/// Concatenates per-`i` factor lists.
pub fn cat(parts: Vec<Vec<Scalar>>) -> Vec<Scalar> {
    parts.into_iter().flatten().collect()
}

/// `x · t^e`.
pub fn tp(ring: &Ring, x: &Scalar, e: i64) -> Scalar {
    ring.mul(x, &ring.t_pow(e))
}

pub fn mul(ring: &Ring, xs: &[&Scalar]) -> Scalar {
    xs.iter().fold(Scalar::one(), |acc, x| ring.mul(&acc, x))
}

/// A scalar-valued series and its term count.
pub fn scalar_series(spec: &SeriesSpec, ring: &Ring, target: i64) -> Result<(Scalar, usize)> {
    let r = spec.evaluate(ring, target)?;
    Ok((r.scalar()?.clone(), r.terms))
}

/// A formal-argument series as a polynomial in the monomial basis.
pub fn general_series(spec: &SeriesSpec, ring: &Ring, dz: i64) -> Result<(MPoly, usize)> {
    let r = spec.evaluate(ring, dz + 1)?;
    Ok((r.sym()?.to_monomial(ring)?, r.terms))
}

pub fn phi(upper: Vec<Scalar>, lower: Vec<Scalar>, arg: Arg) -> SeriesSpec {
    SeriesSpec::phi(upper, lower, arg)
}

/// The principal argument `z`: the formal variable at a rational point,
/// the parameter `z` in formal mode.
pub fn principal_z(ps: &ParamSpec, ring: &Ring) -> Result<Scalar> {
    match ps.mode {
        Mode::RationalPoint => Ok(Scalar::var_pow(1)),
        Mode::FormalQ => ps.scalar("z", ring),
    }
}

/// Sets `name` unless present.
pub fn default(ps: &mut ParamSpec, name: &str, v: impl FnOnce() -> Value) {
    if !ps.has(name) {
        let v = v();
        ps.params.insert(name.to_string(), v);
    }
}

/// Fills each name with a generic rational at a rational point, or a
/// generic coefficient times `q^e` in formal mode.
pub fn generic(ps: &mut ParamSpec, s: &mut Sampler, names: &[(&str, i64)]) {
    for &(name, e) in names {
        match ps.mode {
            Mode::RationalPoint => {
                let q = ps.q.clone().expect("q is sampled before parameters");
                let t = ps.t.clone().unwrap_or_else(|| num_traits::pow(q.clone(), ps.k.unwrap_or(1) as usize));
                let others: Vec<_> =
                    ps.params.values().filter_map(|v| if let Value::Rat(r) = v { Some(r.clone()) } else { None }).collect();
                default(ps, name, || Value::Rat(s.generic_rat(&q, &t, &others)))
            }
            Mode::FormalQ => default(ps, name, || s.qpow(e)),
        }
    }
}

/// `generic`, redrawn at a rational point until every value from `derived`
/// is off the `±q^m t^l` lattice. Pairwise avoidance does not reach lower
/// parameters built from three or more sampled values.
pub fn generic_with(ps: &mut ParamSpec, s: &mut Sampler, names: &[(&str, i64)], derived: impl Fn(&ParamSpec) -> Vec<Rat>) {
    if ps.mode == Mode::FormalQ {
        return generic(ps, s, names);
    }
    let missing: Vec<&str> = names.iter().map(|(x, _)| *x).filter(|x| !ps.has(x)).collect();
    let q = ps.q.clone().expect("q is sampled before parameters");
    let t = ps.point_t().expect("t or k is set");
    for _ in 0..1000 {
        generic(ps, s, names);
        if !derived(ps).iter().any(|x| x.is_zero() || Sampler::on_lattice(&q, &t, x)) {
            return;
        }
        for x in &missing {
            ps.params.remove(*x);
        }
    }
    generic(ps, s, names);
}

/// A parameter's value at a rational point.
pub fn pv(ps: &ParamSpec, name: &str) -> Rat {
    ps.point_value(name).expect("parameter is set at a rational point")
}

/// Monomial coefficients keyed by their exponent vectors.
pub fn monomial_table(p: &MPoly) -> std::collections::BTreeMap<String, Scalar> {
    p.terms().filter(|(_, c)| !c.is_exact_zero()).map(|(e, c)| (format!("{e:?}"), c.clone())).collect()
}
