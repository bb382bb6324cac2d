//! Truncated unilateral (`Φ`) and bilateral (`Ψ`) series built on Macdonald
//! polynomials, with valuation-driven enumeration of the index set.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::macdonald::{
    gen_factorial_factored, hooks, macdonald_gen, principal_spec, psi_weight_factored, SymSeries,
};
use crate::partition::{gen_window, GenPartition, Partition};
use crate::ring::qpoch::{qpoch_inf, Factored};
use crate::ring::{InfProd, MPoly, Ring, Scalar, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Phi,
    Psi,
}

/// Where the series' polynomials are evaluated.
#[derive(Clone, Debug)]
pub enum Arg {
    /// `z t^δ = (z, z t, …, z t^{n-1})`.
    Principal(Scalar),
    /// An explicit point.
    Point(Vec<Scalar>),
    /// Formal variables scaled by a constant, `(c z_1, …, c z_n)`; the result
    /// is a symmetric series truncated by total degree. Rational points only.
    General(Scalar),
}

#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub kind: Kind,
    pub upper: Vec<Scalar>,
    /// For `Ψ` the first entry is the distinguished parameter `b`.
    pub lower: Vec<Scalar>,
    pub arg: Arg,
}

/// One enumerated term: the coefficient of `P_λ` (for a formal argument) or
/// the evaluated term, with its certified valuation bound.
#[derive(Clone, Debug)]
pub struct TermRecord {
    pub index: GenPartition,
    pub value: Scalar,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesValue {
    Scalar(Scalar),
    Sym(SymSeries),
}

#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub value: SeriesValue,
    pub terms: usize,
}

impl SeriesResult {
    pub fn scalar(&self) -> Result<&Scalar> {
        match &self.value {
            SeriesValue::Scalar(s) => Ok(s),
            SeriesValue::Sym(_) => Err(Error::Params("series has a formal argument".into())),
        }
    }

    pub fn sym(&self) -> Result<&SymSeries> {
        match &self.value {
            SeriesValue::Sym(s) => Ok(s),
            SeriesValue::Scalar(_) => Err(Error::Params("series has a scalar argument".into())),
        }
    }
}

impl SeriesSpec {
    pub fn phi(upper: Vec<Scalar>, lower: Vec<Scalar>, arg: Arg) -> Self {
        SeriesSpec { kind: Kind::Phi, upper, lower, arg }
    }

    pub fn psi(upper: Vec<Scalar>, lower: Vec<Scalar>, arg: Arg) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::Params("a bilateral series needs the lower parameter b".into()));
        }
        Ok(SeriesSpec { kind: Kind::Psi, upper, lower, arg })
    }

    /// The exponent `s + 1 - r` of `(-1)^{|λ|} q^{n(λ')}`.
    pub fn twist(&self) -> i64 {
        let s = match self.kind {
            Kind::Phi => self.lower.len(),
            Kind::Psi => self.lower.len() - 1,
        };
        s as i64 + 1 - self.upper.len() as i64
    }

    /// `a_1⋯a_r q t^{n-1} = b_1⋯b_s`.
    pub fn balanced(&self, ring: &Ring) -> bool {
        let prod = |v: &[Scalar]| v.iter().fold(Scalar::one(), |acc, x| &acc * x);
        let lower = match self.kind {
            Kind::Phi => &self.lower[..],
            Kind::Psi => &self.lower[1..],
        };
        let left = &(&prod(&self.upper) * ring.q()) * &ring.t_pow(ring.n as i64 - 1);
        left == prod(lower)
    }

    /// Coefficient of `P_λ(z)` in the sum, without the `Ψ` prefactor.
    pub fn coefficient(&self, parts: &[i64], ring: &Ring) -> Result<Scalar> {
        let n = parts.len();
        let index = || format!("{parts:?}");
        let e = self.twist();
        let nc: i64 = parts.iter().map(|&p| p * (p - 1) / 2).sum();
        let w: i64 = parts.iter().sum();
        let mut sign = Scalar::one();
        if (e * w).rem_euclid(2) == 1 {
            sign = -sign;
        }
        let mut acc = Factored::from_scalar(ring.mul(&sign, &ring.q_pow(e * nc)));
        let mut upper_zero = false;
        for a in &self.upper {
            let f = gen_factorial_factored(ring, a, parts)?;
            upper_zero |= f.zeros > 0;
            acc = acc.mul(&f, ring);
        }
        if upper_zero {
            return Ok(Scalar::zero());
        }
        let lower: Vec<Scalar> = match self.kind {
            Kind::Phi => self.lower.clone(),
            Kind::Psi => {
                let mut v = self.lower.clone();
                v[0] = ring.mul(&v[0], &ring.t_pow(n as i64 - 1));
                v
            }
        };
        for b in &lower {
            let f = gen_factorial_factored(ring, b, parts)?;
            acc = Factored { zeros: acc.zeros - f.zeros, value: ring.mul(&acc.value, &ring.inv(&f.value)?) };
        }
        match self.kind {
            Kind::Phi => {
                let lam = to_partition(parts)?;
                let (_, hp) = hooks(&lam, ring);
                acc.value = ring.div(&acc.value, &hp)?;
            }
            Kind::Psi => acc = acc.mul(&psi_weight_factored(ring, parts)?, ring),
        }
        match acc.zeros {
            0 => Ok(acc.value),
            z if z > 0 => Ok(Scalar::zero()),
            _ => Err(Error::Pole { index: index(), detail: "a lower factorial vanishes".into() }),
        }
    }

    /// `P_λ` at a scalar argument.
    pub fn arg_value(&self, parts: &[i64], ring: &Ring) -> Result<Scalar> {
        let n = parts.len() as i64;
        match &self.arg {
            Arg::Principal(z) => {
                let last = *parts.last().unwrap_or(&0);
                let mu = to_partition(&parts.iter().map(|p| p - last).collect::<Vec<_>>())?;
                let w: i64 = parts.iter().sum();
                let zw = ring.pow(z, w)?;
                let tw = ring.t_pow(last * n * (n - 1) / 2);
                Ok(ring.mul(&ring.mul(&zw, &tw), &principal_spec(&mu, parts.len(), ring)?))
            }
            Arg::Point(x) => macdonald_gen(&GenPartition::new(parts.to_vec())?, ring)?.eval(x, ring),
            Arg::General(_) => Err(Error::Params("formal argument has no scalar value".into())),
        }
    }

    /// `∏_i (b t^{i-1})_∞ (q)_∞ / ((q t^{i-1})_∞ (b)_∞)` for `Ψ`, else 1.
    pub fn prefactor(&self, ring: &Ring) -> Result<Scalar> {
        if self.kind == Kind::Phi {
            return Ok(Scalar::one());
        }
        let b = &self.lower[0];
        let mut p = InfProd::new();
        for i in 0..ring.n as i64 {
            let ti = ring.t_pow(i);
            p = p.num(ring.mul(b, &ti)).num(ring.q().clone()).den(ring.mul(ring.q(), &ti)).den(b.clone());
        }
        p.eval(ring)
    }

    /// Certified per-row valuation bounds and the index window they imply
    /// for terms of valuation below `target`.
    pub fn plan(&self, ring: &Ring, target: i64) -> Result<Window> {
        Window::plan(self, ring, target)
    }

    /// Every term with bound below `target`, in canonical order.
    pub fn terms(&self, ring: &Ring, target: i64) -> Result<Vec<TermRecord>> {
        let window = self.plan(ring, target)?;
        let idx = window.indices(target);
        let scale = match &self.arg {
            Arg::General(c) => Some(c.clone()),
            _ => None,
        };
        idx.into_par_iter()
            .map(|(lam, bound)| {
                let c = self.coefficient(lam.parts(), ring)?;
                let value = if c.is_exact_zero() {
                    c
                } else {
                    match &scale {
                        Some(s) => ring.mul(&c, &ring.pow(s, lam.weight())?),
                        None => ring.mul(&c, &self.arg_value(lam.parts(), ring)?),
                    }
                };
                Ok(TermRecord { index: lam, value, bound })
            })
            .collect()
    }

    /// The truncated series: valuation below `target` for scalar arguments,
    /// total degree below `target` for a formal argument.
    pub fn evaluate(&self, ring: &Ring, target: i64) -> Result<SeriesResult> {
        let pre = self.prefactor(ring)?;
        let inner = self.inner_target(&pre, target);
        let terms = self.terms(ring, inner)?;
        let count = terms.len();
        let value = match self.arg {
            Arg::General(_) => {
                let mut s = SymSeries::new(ring.n, target - 1);
                for t in terms {
                    let lam = t.index.to_partition().ok_or_else(|| {
                        Error::Params("a formal argument needs non-negative indices".into())
                    })?;
                    s.add(lam, ring.mul(&pre, &t.value));
                }
                SeriesValue::Sym(s)
            }
            _ => {
                let sum: Scalar = terms.into_iter().map(|t| t.value).sum();
                SeriesValue::Scalar(ring.mul(&pre, &sum).truncate(target))
            }
        };
        Ok(SeriesResult { value, terms: count })
    }
}

impl SeriesSpec {
    /// The term target that leaves the sum right below `target` after
    /// multiplying by a prefactor of negative valuation.
    fn inner_target(&self, pre: &Scalar, target: i64) -> i64 {
        match self.arg {
            Arg::General(_) => target,
            _ => target - pre.val_bound().min(0),
        }
    }

    /// Checks every index one step outside the planned window: each term
    /// there must lie at or above `target` once the prefactor is applied.
    /// Returns how many non-zero terms were examined.
    pub fn check_outside(&self, ring: &Ring, target: i64) -> Result<usize> {
        let pre = self.prefactor(ring)?;
        let inner = self.inner_target(&pre, target);
        let window = self.plan(ring, inner)?;
        let inside: HashSet<GenPartition> = gen_window(window.lo.len(), &window.lo, &window.hi).into_iter().collect();
        let mut seen = 0;
        for lam in window.widened(1) {
            if inside.contains(&lam) {
                continue;
            }
            let c = self.coefficient(lam.parts(), ring)?;
            if c.is_exact_zero() {
                continue;
            }
            let v = ring.mul(&c, &self.arg_value(lam.parts(), ring)?);
            seen += 1;
            match v.val() {
                Some(e) if e < inner => {
                    return Err(Error::Invariant(format!(
                        "term {:?} outside the window has valuation {e} below {inner}",
                        lam.parts()
                    )))
                }
                None if v.prec() < inner => {
                    return Err(Error::Precision(format!("term {:?} outside the window", lam.parts())))
                }
                _ => {}
            }
        }
        Ok(seen)
    }
}

fn to_partition(parts: &[i64]) -> Result<Partition> {
    if parts.iter().any(|&p| p < 0) {
        return Err(Error::InvalidPartition(format!("{parts:?} has a negative part")));
    }
    Partition::new(parts.iter().map(|&p| p as u32).collect())
}

/// Valuation of `1 - y`; `None` for an exact zero.
fn one_minus_val(y: &Scalar) -> Option<i64> {
    let d = Scalar::one() - y;
    if d.is_exact_zero() {
        None
    } else {
        Some(d.val().unwrap_or_else(|| d.val_bound()))
    }
}

/// What lies beyond the scanned part of a row in one direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tail {
    /// Every further term vanishes.
    Ends,
    /// The bound grows without limit.
    Grows,
    /// The bound never decreases but need not grow; the row must be
    /// confined by its neighbours.
    Flat,
}

/// The valuation model of one row `i`: a term's bound is the sum over rows
/// of a function of `λ_i` alone.
#[derive(Clone, Debug)]
struct RowModel {
    /// Upper parameters as they enter row `i`: `a t^{1-i}`.
    ups: Vec<Scalar>,
    downs: Vec<Scalar>,
    /// Bound increment per unit of `λ_i` from powers of `t` and the argument.
    lin: i64,
    /// Coefficient of `λ_i(λ_i-1)/2`.
    quad: i64,
    q: Scalar,
    qinv: Scalar,
    /// Beyond this many steps every increment is linear in the step.
    settle: i64,
    /// `Φ` rows start at zero.
    bilateral: bool,
}

/// A step's increment, or `None` when the term vanishes from here on.
impl RowModel {
    fn step_up(&self, m: i64) -> Option<i64> {
        let qj = pow_of(&self.q, m - 1);
        let mut d = self.lin + self.quad * (m - 1);
        for u in &self.ups {
            d += one_minus_val(&(u * &qj))?;
        }
        for w in &self.downs {
            d -= one_minus_val(&(w * &qj)).unwrap_or(0);
        }
        Some(d)
    }

    fn step_down(&self, m: i64) -> Option<i64> {
        let qj = pow_of(&self.qinv, m);
        let mut d = -self.lin + self.quad * m;
        for u in &self.ups {
            d -= one_minus_val(&(u * &qj)).unwrap_or(0);
        }
        for w in &self.downs {
            d += one_minus_val(&(w * &qj))?;
        }
        Some(d)
    }

    fn step(&self, up: bool, m: i64) -> Option<i64> {
        if up {
            self.step_up(m)
        } else {
            self.step_down(m)
        }
    }
}

fn pow_of(x: &Scalar, e: i64) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..e {
        acc = &acc * x;
    }
    acc
}

/// Cumulative bounds along one direction of a row.
#[derive(Clone, Debug)]
struct Ray {
    vals: Vec<Option<i64>>,
    tail: Tail,
}

impl Ray {
    fn scan(model: &RowModel, up: bool) -> Result<Ray> {
        let mut vals = vec![Some(0)];
        let mut g = 0i64;
        let mut m = 1;
        while m <= model.settle {
            match model.step(up, m) {
                None => return Ok(Ray { vals, tail: Tail::Ends }),
                Some(d) => {
                    g += d;
                    vals.push(Some(g));
                }
            }
            m += 1;
        }
        let (Some(d1), Some(d2)) = (model.step(up, m), model.step(up, m + 1)) else {
            // a vanishing factor beyond the settling point: scan on to it
            loop {
                match model.step(up, m) {
                    None => return Ok(Ray { vals, tail: Tail::Ends }),
                    Some(d) => {
                        g += d;
                        vals.push(Some(g));
                    }
                }
                m += 1;
            }
        };
        let slope = d2 - d1;
        if slope > 0 || (slope == 0 && d1 > 0) {
            // walk until the increments turn positive for good
            loop {
                let d = model.step(up, m).expect("settled rows do not vanish");
                if d > 0 {
                    break;
                }
                g += d;
                vals.push(Some(g));
                m += 1;
            }
            Ok(Ray { vals, tail: Tail::Grows })
        } else if slope == 0 && d1 == 0 {
            Ok(Ray { vals, tail: Tail::Flat })
        } else {
            Err(Error::Valuation(format!(
                "term valuations decrease without bound as λ_i {} (increment {d1}, slope {slope})",
                if up { "grows" } else { "decreases" }
            )))
        }
    }

    fn min(&self) -> i64 {
        self.vals.iter().flatten().copied().min().unwrap_or(0)
    }

    /// Extends the stored bounds through step `m`.
    fn extend_to(&mut self, model: &RowModel, up: bool, m: i64) {
        while (self.vals.len() as i64) <= m {
            let k = self.vals.len() as i64;
            let next = match (self.vals.last().copied().flatten(), self.tail) {
                (_, Tail::Ends) => None,
                (None, _) => None,
                (Some(g), _) => model.step(up, k).map(|d| g + d),
            };
            self.vals.push(next);
        }
    }

    fn get(&self, m: i64) -> Option<i64> {
        self.vals.get(m as usize).copied().flatten()
    }

    /// Last step index carrying a finite bound below `budget`, growing
    /// directions only.
    fn reach(&mut self, model: &RowModel, up: bool, budget: i64) -> Option<i64> {
        match self.tail {
            Tail::Ends => Some(self.vals.iter().rposition(|v| v.is_some()).unwrap_or(0) as i64),
            Tail::Flat => None,
            Tail::Grows => {
                let mut m = self.vals.len() as i64 - 1;
                loop {
                    self.extend_to(model, up, m + 1);
                    match self.get(m + 1) {
                        Some(g) if g < budget => m += 1,
                        _ => break,
                    }
                }
                // include everything up to the last in-budget value seen so far
                let last = self.vals.iter().rposition(|v| v.is_some_and(|g| g < budget)).unwrap_or(0);
                Some(last as i64)
            }
        }
    }
}

/// Row-separable valuation bounds and the per-row index ranges they imply.
#[derive(Clone, Debug)]
pub struct Window {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    models: Vec<RowModel>,
    up: Vec<Ray>,
    down: Vec<Ray>,
}

impl Window {
    fn plan(spec: &SeriesSpec, ring: &Ring, target: i64) -> Result<Window> {
        let n = ring.n;
        let vt = ring.t_val();
        let vq = ring.q_val();
        let bilateral = spec.kind == Kind::Psi;
        let slopes: Vec<i64> = match &spec.arg {
            Arg::Principal(z) => (0..n as i64).map(|i| z.val_bound() + i * vt).collect(),
            Arg::Point(x) => {
                if x.len() != n {
                    return Err(Error::Params(format!("point has {} coordinates, expected {n}", x.len())));
                }
                let mut v: Vec<i64> = x.iter().map(|s| s.val_bound()).collect();
                v.sort();
                v
            }
            Arg::General(_) => {
                if ring.var != Var::Z {
                    return Err(Error::Params("a formal argument needs a rational point".into()));
                }
                if bilateral {
                    return Err(Error::Params("a bilateral series needs a scalar argument".into()));
                }
                vec![1; n]
            }
        };
        let lower_t: Vec<Scalar> = match spec.kind {
            Kind::Phi => spec.lower.clone(),
            Kind::Psi => {
                let mut v = spec.lower.clone();
                v[0] = &v[0] * &ring.t_pow(n as i64 - 1);
                v
            }
        };
        let t_count = spec.upper.len() as i64 - lower_t.len() as i64 + i64::from(bilateral);
        let mut models = Vec::with_capacity(n);
        for i in 0..n {
            let ti = ring.t_pow(-(i as i64));
            let ups: Vec<Scalar> = spec.upper.iter().map(|a| a * &ti).collect();
            let downs: Vec<Scalar> = lower_t.iter().map(|b| b * &ti).collect();
            let mut settle = 3;
            for y in ups.iter().chain(&downs) {
                let v = y.val_bound();
                if vq > 0 {
                    settle = settle.max(v.abs() / vq + 3);
                }
                if let Some(l) = ring.q_log(y) {
                    settle = settle.max(l.abs() + 3);
                }
            }
            models.push(RowModel {
                ups,
                downs,
                lin: i as i64 * vt * t_count + slopes[i],
                quad: spec.twist() * vq,
                q: ring.q().clone(),
                qinv: ring.q_pow(-1),
                settle,
                bilateral,
            });
        }
        let mut up = Vec::with_capacity(n);
        let mut down = Vec::with_capacity(n);
        for m in &models {
            up.push(Ray::scan(m, true)?);
            down.push(if m.bilateral { Ray::scan(m, false)? } else { Ray { vals: vec![Some(0)], tail: Tail::Ends } });
        }
        let mins: Vec<i64> = (0..n).map(|i| up[i].min().min(down[i].min())).collect();
        let total_min: i64 = mins.iter().sum();
        let mut own_hi = vec![None; n];
        let mut own_lo = vec![None; n];
        for i in 0..n {
            let budget = target - (total_min - mins[i]);
            own_hi[i] = up[i].reach(&models[i], true, budget);
            own_lo[i] = down[i].reach(&models[i], false, budget).map(|m| -m);
        }
        let mut hi = vec![0; n];
        for i in 0..n {
            let inherited = if i == 0 { None } else { Some(hi[i - 1]) };
            hi[i] = match (own_hi[i], inherited) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => {
                    return Err(Error::Valuation(
                        "the series does not terminate and its terms do not gain valuation: not truncatable".into(),
                    ))
                }
            };
        }
        let mut lo = vec![0; n];
        for i in (0..n).rev() {
            let inherited = if i + 1 == n { None } else { Some(lo[i + 1]) };
            lo[i] = match (own_lo[i], inherited) {
                (Some(a), Some(b)) => a.max(b),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => {
                    return Err(Error::Valuation(
                        "bilateral terms do not gain valuation as λ_n decreases: not truncatable".into(),
                    ))
                }
            };
        }
        let mut w = Window { lo, hi, models, up, down };
        w.fill(1);
        Ok(w)
    }

    /// Makes bounds available one step beyond the window on every side.
    fn fill(&mut self, extra: i64) {
        for i in 0..self.models.len() {
            let top = self.hi[i] + extra;
            if top > 0 {
                self.up[i].extend_to(&self.models[i], true, top);
            }
            let bottom = -(self.lo[i] - extra);
            if bottom > 0 && self.models[i].bilateral {
                self.down[i].extend_to(&self.models[i], false, bottom);
            }
        }
    }

    /// The bound for one index; `None` when the term is known to vanish or
    /// lies outside the tabulated range.
    pub fn bound(&self, parts: &[i64]) -> Option<i64> {
        let mut total = 0;
        for (i, &m) in parts.iter().enumerate() {
            let g = if m >= 0 { self.up[i].get(m)? } else if self.models[i].bilateral { self.down[i].get(-m)? } else { return None };
            total += g;
        }
        Some(total)
    }

    /// Indices in the window whose bound is below `target`.
    pub fn indices(&self, target: i64) -> Vec<(GenPartition, i64)> {
        gen_window(self.lo.len(), &self.lo, &self.hi)
            .into_iter()
            .filter_map(|lam| self.bound(lam.parts()).filter(|&b| b < target).map(|b| (lam, b)))
            .collect()
    }

    /// The window widened by `by` on every side, for checking that nothing
    /// outside it contributes.
    pub fn widened(&self, by: i64) -> Vec<GenPartition> {
        let lo: Vec<i64> = self.lo.iter().zip(&self.models).map(|(l, m)| if m.bilateral { l - by } else { *l }).collect();
        let hi: Vec<i64> = self.hi.iter().map(|h| h + by).collect();
        gen_window(lo.len(), &lo, &hi)
    }
}

/// `∏_i ∏_f (c_f z_i; q)_∞^{±1}` over formal `z`, truncated to total degree
/// `dz`: every factor expanded through Euler's series and multiplied out.
pub fn product_general(n: usize, factors: &[(Scalar, bool)], ring: &Ring, dz: i64) -> Result<MPoly> {
    if ring.var != Var::Z {
        return Err(Error::Params("formal-argument products need a rational point".into()));
    }
    let r = ring.with_cap(dz + 1);
    let mut uni = Scalar::one();
    for (c, is_num) in factors {
        let p = qpoch_inf(&r, &c.shift(1))?;
        uni = r.mul(&uni, &if *is_num { p } else { r.inv(&p)? });
    }
    let mut out = MPoly::one(n);
    for i in 0..n {
        let mut f = MPoly::zero(n);
        for (e, c) in uni.terms() {
            let mut exps = vec![0; n];
            exps[i] = e;
            f.add_term(exps, Scalar::constant(c.clone()));
        }
        out = out.mul_deg(&f, &r, dz);
    }
    Ok(out)
}

/// The same product through the expansion of `₁Φ₀`:
/// `∏_i (α z_i)_∞/(β z_i)_∞ = ₁Φ₀(α/β; β z)`.
pub fn product_general_qbin(alpha: &Scalar, beta: &Scalar, ring: &Ring, dz: i64) -> Result<SymSeries> {
    let spec = SeriesSpec::phi(vec![ring.div(alpha, beta)?], vec![], Arg::General(beta.clone()));
    Ok(spec.evaluate(ring, dz + 1)?.sym()?.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    fn c(r: crate::ring::Rat) -> Scalar {
        Scalar::constant(r)
    }

    #[test]
    fn geometric_one_phi_zero() {
        let ring = Ring::rational(1, rat(1, 2), rat(1, 3), 5).unwrap();
        let spec = SeriesSpec::phi(vec![ring.q().clone()], vec![], Arg::Principal(Scalar::var_pow(1)));
        let got = spec.evaluate(&ring, 5).unwrap();
        let want = Scalar::from_terms((0..5).map(|e| (e, rat_int(1))), 5);
        assert_eq!(got.scalar().unwrap(), &want);
    }

    #[test]
    fn unit_parameter_gives_one() {
        let ring = Ring::rational(2, rat(1, 2), rat(1, 3), 6).unwrap();
        let spec = SeriesSpec::phi(
            vec![Scalar::one(), c(rat(2, 7))],
            vec![c(rat(3, 5))],
            Arg::Principal(Scalar::var_pow(1)),
        );
        assert_eq!(spec.evaluate(&ring, 6).unwrap().scalar().unwrap(), &Scalar::one().truncate(6));
    }

    #[test]
    fn terminating_gauss_by_hand() {
        let (q, b, cc) = (rat(1, 2), rat(1, 3), rat(1, 5));
        let ring = Ring::rational(1, q.clone(), rat(1, 3), 4).unwrap();
        let z = &cc / &b * &q;
        let spec = SeriesSpec::phi(
            vec![c(q.recip()), c(b.clone())],
            vec![c(cc.clone())],
            Arg::Principal(c(z)),
        );
        let got = spec.evaluate(&ring, 4).unwrap();
        let want = (&b - &cc) / (&b * (rat_int(1) - &cc));
        assert_eq!(got.scalar().unwrap(), &c(want).truncate(4));
        assert_eq!(got.terms, 2);
    }

    #[test]
    fn psi_prefactor_is_one_for_one_variable() {
        let ring = Ring::formal(1, 1, 10);
        let spec = SeriesSpec::psi(vec![ring.q_pow(1)], vec![ring.q_pow(4)], Arg::Point(vec![ring.q_pow(2)])).unwrap();
        assert!(spec.prefactor(&ring).unwrap().agrees_to(&Scalar::one(), 10));
    }

    #[test]
    fn one_psi_one_bound_example() {
        let ring = Ring::formal(1, 1, 12);
        let mono = |c: i64, e: i64| Scalar::monomial(rat_int(c), e);
        // generic coefficients keep (a)_λ and 1/(b)_λ free of zeros and poles
        let spec = SeriesSpec::psi(vec![mono(2, 1)], vec![mono(3, 4)], Arg::Point(vec![ring.q_pow(2)])).unwrap();
        let w = spec.plan(&ring, 8).unwrap();
        assert_eq!(w.bound(&[0]), Some(0));
        for m in -4..=4 {
            let term = ring.mul(&spec.coefficient(&[m], &ring).unwrap(), &spec.arg_value(&[m], &ring).unwrap());
            assert_eq!(w.bound(&[m]), term.val(), "m = {m}");
        }
        // slope β − α − χ = 1 towards -∞
        assert_eq!(w.bound(&[-7]).unwrap() - w.bound(&[-6]).unwrap(), 1);
    }

    #[test]
    fn window_rejects_divergent_argument() {
        let ring = Ring::formal(1, 1, 12);
        let mono = |c: i64, e: i64| Scalar::monomial(rat_int(c), e);
        // χ = β − α: terms stop gaining valuation towards -∞
        let spec = SeriesSpec::psi(vec![mono(2, 1)], vec![mono(3, 4)], Arg::Point(vec![ring.q_pow(3)])).unwrap();
        assert!(matches!(spec.plan(&ring, 8), Err(Error::Valuation(_))));
    }

    #[test]
    fn euler_and_qbin_routes_agree() {
        let ring = Ring::rational(2, rat(1, 3), rat(1, 9), 3).unwrap();
        let a = c(rat(1, 9));
        let euler = product_general(2, &[(a.clone(), true), (Scalar::one(), false)], &ring, 2).unwrap();
        let qbin = product_general_qbin(&a, &Scalar::one(), &ring, 2).unwrap();
        assert_eq!(qbin.to_monomial(&ring).unwrap(), euler);
        let trivial = product_general(2, &[(Scalar::one(), true), (Scalar::one(), false)], &ring, 2).unwrap();
        assert_eq!(trivial, MPoly::one(2));
    }

    #[test]
    fn balanced_flag() {
        let ring = Ring::rational(2, rat(1, 2), rat(1, 3), 4).unwrap();
        let (b, cc, e) = (rat(2, 7), rat(3, 11), rat(5, 13));
        let q = rat(1, 2);
        let t = rat(1, 3);
        let f = &q.recip() * &b * &cc * &q * &t / &e;
        let spec = SeriesSpec::phi(vec![c(q.recip()), c(b), c(cc)], vec![c(e), c(f)], Arg::Principal(c(q)));
        assert!(spec.balanced(&ring));
    }
}
