//! Turns merged verify settings into a validated list of verifications.

use std::fs;
use std::str::FromStr;

use mhq_core::identities::{instances, default_instances, lookup, registry, Case, Entry, Mode, ParamSpec, Value};
use mhq_core::{Partition, Rat};
use serde_json::json;

use crate::args::VerifyArgs;
use crate::UsageError;

pub struct Plan {
    pub items: Vec<(&'static Entry, ParamSpec)>,
    /// Settings that determine the results, in canonical form.
    pub config: serde_json::Value,
    pub settings: VerifyArgs,
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// Reads `--config` (if any) and lays the command-line flags over it.
pub fn merge(flags: VerifyArgs) -> Result<VerifyArgs, UsageError> {
    let Some(path) = flags.config.clone() else { return Ok(flags) };
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("config {}: {e}", path.display())))?;
    let base: VerifyArgs = serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))?;
    Ok(flags.over(base))
}

fn parse_rat(name: &str, s: &str) -> Result<Rat, UsageError> {
    Rat::from_str(s.trim()).map_err(|_| usage(format!("--{name} {s:?} is not a rational p/q")))
}

pub fn build(v: VerifyArgs) -> Result<Plan, UsageError> {
    let id = v.identity.clone().ok_or_else(|| usage("--identity is required"))?;
    let seed = v.seed.unwrap_or(0);
    if v.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let entries: Vec<&'static Entry> = if id.eq_ignore_ascii_case("all") {
        if v.has_overrides() {
            return Err(usage("--identity all runs the default envelopes; parameter flags need a named identity"));
        }
        registry()
    } else {
        id.split(',').map(|s| lookup(s.trim()).map_err(|e| usage(e.to_string()))).collect::<Result<_, _>>()?
    };
    let items = if v.has_overrides() {
        let template = template(&v)?;
        let case = Case::new(template, v.points.unwrap_or(1));
        let mut out = Vec::new();
        for e in &entries {
            for ps in instances(e, &case, seed, 0) {
                out.push((*e, ps));
            }
        }
        out
    } else {
        default_instances(&entries, seed)
    };
    for (e, ps) in &items {
        ps.ring(ps.target()).map_err(|err| usage(format!("{}: {err}", e.id)))?;
    }
    let ids: Vec<&str> = entries.iter().map(|e| e.id).collect();
    let mut params: Vec<String> = v.param.clone();
    params.sort();
    let config = json!({
        "identity": ids,
        "n": v.n,
        "k": v.k,
        "N": v.big_n,
        "mode": v.mode,
        "q": v.q,
        "t": v.t,
        "param": params,
        "chi": v.chi,
        "lambda": v.lambda,
        "points": v.points,
        "seed": seed,
        "dq": v.dq,
        "dz": v.dz,
    });
    Ok(Plan { items, config, settings: v })
}

/// The single parameter template described by explicit flags.
fn template(v: &VerifyArgs) -> Result<ParamSpec, UsageError> {
    let mode = match &v.mode {
        Some(m) => Mode::from_str(m).map_err(|e| usage(e.to_string()))?,
        None => Mode::FormalQ,
    };
    let n = v.n.unwrap_or(2);
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let mut ps = ParamSpec::new(mode, n);
    match mode {
        Mode::FormalQ => {
            if v.q.is_some() || v.t.is_some() {
                return Err(usage("--q and --t need --mode rational-point; formal mode takes --k"));
            }
            ps.k = Some(v.k.unwrap_or(1));
        }
        Mode::RationalPoint => {
            if let Some(q) = &v.q {
                ps.q = Some(parse_rat("q", q)?);
            }
            match (&v.t, v.k) {
                (Some(_), Some(_)) => return Err(usage("give --t or --k, not both")),
                (Some(t), None) => {
                    ps.t = Some(parse_rat("t", t)?);
                    ps.k = None;
                }
                (None, k) => ps.k = Some(k.unwrap_or(1)),
            }
        }
    }
    if ps.k == Some(0) {
        return Err(usage("--k must be at least 1"));
    }
    if let Some(big_n) = v.big_n {
        ps.params.insert("N".into(), Value::Int(big_n));
    }
    for p in &v.param {
        let (name, value) = p.split_once('=').ok_or_else(|| usage(format!("--param {p:?} is not NAME=VALUE")))?;
        let value = Value::from_str(value).map_err(|e| usage(e.to_string()))?;
        ps.params.insert(name.trim().to_string(), value);
    }
    if let Some(chi) = &v.chi {
        let c: Vec<i64> = chi
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| usage(format!("--chi {chi:?} is not a list of integers")))?;
        if c.len() != n {
            return Err(usage(format!("--chi has {} entries for n = {n}", c.len())));
        }
        ps.chi = c;
    }
    if let Some(l) = &v.lambda {
        let lam = Partition::from_str(l).map_err(|e| usage(e.to_string()))?;
        if lam.len() > n {
            return Err(usage(format!("--lambda {l} has more than {n} parts")));
        }
        ps.lambda = Some(lam);
    }
    if let Some(dq) = v.dq {
        if dq < 0 {
            return Err(usage("--dq must be non-negative"));
        }
        ps.dq = dq;
    }
    if let Some(dz) = v.dz {
        if dz < 0 {
            return Err(usage("--dz must be non-negative"));
        }
        ps.dz = dz;
    }
    if v.points == Some(0) {
        return Err(usage("--points must be at least 1"));
    }
    Ok(ps)
}
