//! Registry of identities with executable sides, admissible modes and
//! machine-checkable parameter constraints.

pub mod compare;
pub mod params;

mod bilateral;
mod build;
mod classical;
mod saal;
mod structural;
mod transform;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

pub use compare::{compare, Check, Claim, Side, Witness};
pub use params::{case_seed, Mode, ParamSpec, Sampler, Value};

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Series,
    Coefficient,
    Residual,
}

/// A predicate on parameters, with the text shown in listings and reports.
pub struct Constraint {
    pub text: &'static str,
    pub holds: fn(&ParamSpec) -> bool,
}

/// A parameter template and how many sampled points to run from it.
#[derive(Clone, Debug)]
pub struct Case {
    pub spec: ParamSpec,
    pub points: usize,
}

impl Case {
    pub fn new(spec: ParamSpec, points: usize) -> Self {
        Case { spec, points }
    }
}

pub struct Entry {
    pub id: &'static str,
    pub summary: &'static str,
    pub kind: CheckKind,
    pub modes: &'static [Mode],
    pub constraints: &'static [Constraint],
    /// Completes a template with sampled values, keeping what is set.
    pub fill: fn(&mut ParamSpec, &mut Sampler),
    /// The default desk-scale cases.
    pub envelope: fn() -> Vec<Case>,
    pub build: fn(&ParamSpec, &Ring) -> Result<Check>,
}

/// Registry summary row.
#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub id: &'static str,
    pub kind: CheckKind,
    pub modes: Vec<&'static str>,
    pub constraints: Vec<&'static str>,
    pub summary: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dq: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dz: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub mode: Mode,
    pub params: BTreeMap<String, String>,
    pub fingerprint: String,
    pub truncation: Truncation,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Skip reason or error text.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<String>,
    pub terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

/// Listing order; entries not named here follow in family order.
const ORDER: [&str; 29] = [
    "Q_BINOMIAL",
    "HEINE",
    "GAUSS",
    "EULER",
    "KANEKO_SYSTEM",
    "SAAL_COEFF",
    "SAALSCHUTZ",
    "CHU_VANDERMONDE",
    "MACDONALD_RECT",
    "OTOTO",
    "SHUMI",
    "LAPIZ",
    "SOMBRERO",
    "SYMM",
    "NORM_GROUND",
    "CHICHI",
    "SHIFTED_GAUSS",
    "PFAFF_KUMMER",
    "SEARS",
    "ONE_PSI_ONE",
    "KADELL_KANEKO_CT",
    "LLAVE",
    "TWO_PSI_TWO_A",
    "TWO_PSI_TWO_SUM",
    "TWO_PSI_TWO_B",
    "PSI_INVERSION",
    "JB",
    "NEG_REVERSE_P",
    "BAILEY",
];

pub fn registry() -> Vec<&'static Entry> {
    let mut v: Vec<&'static Entry> = Vec::new();
    v.extend(classical::ENTRIES);
    v.extend(saal::ENTRIES);
    v.extend(structural::ENTRIES);
    v.extend(transform::ENTRIES);
    v.extend(bilateral::ENTRIES);
    v.sort_by_key(|e| ORDER.iter().position(|id| *id == e.id).unwrap_or(ORDER.len()));
    v
}

pub fn lookup(id: &str) -> Result<&'static Entry> {
    registry().into_iter().find(|e| e.id.eq_ignore_ascii_case(id)).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

pub fn list_identities() -> Vec<EntrySummary> {
    registry()
        .into_iter()
        .map(|e| EntrySummary {
            id: e.id,
            kind: e.kind,
            modes: e.modes.iter().map(|m| m.name()).collect(),
            constraints: e.constraints.iter().map(|c| c.text).collect(),
            summary: e.summary,
        })
        .collect()
}

const MARGINS: [i64; 5] = [8, 16, 32, 64, 128];

/// Builds both sides of `entry` at `ps` and compares them exactly,
/// widening the working precision when a side comes back short.
pub fn verify(entry: &Entry, ps: &ParamSpec) -> IdentityReport {
    let start = Instant::now();
    let truncation = match ps.mode {
        Mode::FormalQ => Truncation { dq: Some(ps.dq), dz: None },
        Mode::RationalPoint => Truncation { dq: None, dz: Some(ps.dz) },
    };
    let mut report = IdentityReport {
        identity: entry.id.to_string(),
        mode: ps.mode,
        params: ps.fields(),
        fingerprint: ps.fingerprint(),
        truncation,
        status: Status::Skipped,
        witness: None,
        diagnosis: None,
        terms: 0,
        elapsed_ms: None,
    };
    let finish = |mut r: IdentityReport| {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        r
    };
    if !entry.modes.contains(&ps.mode) {
        report.diagnosis = Some(format!("mode {} not admissible", ps.mode.name()));
        return finish(report);
    }
    if let Some(c) = entry.constraints.iter().find(|c| !(c.holds)(ps)) {
        report.diagnosis = Some(format!("constraint: {}", c.text));
        return finish(report);
    }
    let target = ps.target();
    let mut last = None;
    for margin in MARGINS {
        match attempt(entry, ps, target + margin, target) {
            Ok((terms, witness)) => {
                report.terms = terms;
                report.status = if witness.is_some() { Status::Fail } else { Status::Pass };
                report.witness = witness;
                return finish(report);
            }
            Err(Error::Precision(m)) => last = Some(m),
            Err(e) => {
                report.status = Status::Fail;
                report.diagnosis = Some(e.to_string());
                return finish(report);
            }
        }
    }
    report.status = Status::Fail;
    report.diagnosis = Some(format!("precision not reached: {}", last.unwrap_or_default()));
    finish(report)
}

fn attempt(entry: &Entry, ps: &ParamSpec, cap: i64, target: i64) -> Result<(usize, Option<Witness>)> {
    let ring = ps.ring(cap)?;
    let check = (entry.build)(ps, &ring)?;
    for claim in &check.claims {
        if let Some(w) = compare(&ring, claim, target)? {
            return Ok((check.terms, Some(w)));
        }
    }
    Ok((check.terms, None))
}

/// The parameter points of `case`, sampled deterministically from `seed`.
pub fn instances(entry: &Entry, case: &Case, seed: u64, case_index: usize) -> Vec<ParamSpec> {
    (0..case.points.max(1))
        .map(|p| {
            let mut spec = case.spec.clone();
            let mut s = Sampler::new(case_seed(seed, entry.id, case_index, p));
            if spec.mode == Mode::RationalPoint && spec.q.is_none() {
                spec.q = Some(s.q());
            }
            (entry.fill)(&mut spec, &mut s);
            spec
        })
        .collect()
}

/// Every default case of the given entries, in registry order.
pub fn default_instances(entries: &[&'static Entry], seed: u64) -> Vec<(&'static Entry, ParamSpec)> {
    let mut out = Vec::new();
    for e in entries {
        for (i, case) in (e.envelope)().iter().enumerate() {
            for ps in instances(e, case, seed, i) {
                out.push((*e, ps));
            }
        }
    }
    out
}

/// Runs verifications in parallel; reports come back in input order.
pub fn run_all(items: &[(&'static Entry, ParamSpec)]) -> Vec<IdentityReport> {
    items.par_iter().map(|(e, ps)| verify(e, ps)).collect()
}
