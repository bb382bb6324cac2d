//! Exact comparison of the two sides of an identity.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{MPoly, Ring, Scalar, Var};

/// One side of an identity.
#[derive(Clone, Debug)]
pub enum Side {
    Scalar(Scalar),
    /// Monomial basis, compared by total degree below the target.
    Poly(MPoly),
    /// Labelled scalars, compared entry by entry (missing entries are zero).
    Table(BTreeMap<String, Scalar>),
}

/// A labelled equality to check below `X^target`.
#[derive(Clone, Debug)]
pub struct Claim {
    pub label: String,
    pub lhs: Side,
    pub rhs: Side,
}

impl Claim {
    pub fn new(label: impl Into<String>, lhs: Side, rhs: Side) -> Self {
        Claim { label: label.into(), lhs, rhs }
    }

    pub fn scalars(label: impl Into<String>, lhs: Scalar, rhs: Scalar) -> Self {
        Self::new(label, Side::Scalar(lhs), Side::Scalar(rhs))
    }
}

/// Everything a builder produces for one parameter point.
#[derive(Clone, Debug, Default)]
pub struct Check {
    pub claims: Vec<Claim>,
    pub terms: usize,
}

impl Check {
    pub fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }
}

/// The first coefficient where the sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub claim: String,
    /// Entry label or monomial exponents.
    pub index: String,
    /// Power of the formal variable.
    pub power: i64,
    pub lhs: String,
    pub rhs: String,
}

/// `None` if the scalars agree below `target`; errors when either side is
/// known to less precision than that.
fn scalar_diff(ring: &Ring, label: &str, index: &str, a: &Scalar, b: &Scalar, target: i64) -> Result<Option<Witness>> {
    let p = a.prec().min(b.prec());
    if p < target {
        return Err(Error::Precision(format!("{label}[{index}] known below X^{p}, need X^{target}")));
    }
    let d = a - b;
    let first = d.terms().map(|(e, _)| e).filter(|&e| e < target).min();
    Ok(first.map(|e| {
        let name = ring.var.name();
        Witness {
            claim: label.to_string(),
            index: index.to_string(),
            power: e,
            lhs: format!("{}*{name}^{e}", a.coeff(e)),
            rhs: format!("{}*{name}^{e}", b.coeff(e)),
        }
    }))
}

/// Compares one claim; `Ok(None)` means the sides agree.
///
/// At a rational point the variable is the formal argument, so polynomial
/// sides are cut by total degree below `target` and their coefficients are
/// constants; in formal mode each coefficient is compared below `q^target`.
pub fn compare(ring: &Ring, claim: &Claim, target: i64) -> Result<Option<Witness>> {
    let label = &claim.label;
    match (&claim.lhs, &claim.rhs) {
        (Side::Scalar(a), Side::Scalar(b)) => scalar_diff(ring, label, "", a, b, target),
        (Side::Poly(a), Side::Poly(b)) => {
            let (a, b, ct) = match ring.var {
                Var::Z => (a.truncate_degree(target - 1), b.truncate_degree(target - 1), 1),
                Var::Q => (a.clone(), b.clone(), target),
            };
            let keys: BTreeSet<Vec<i64>> = a.terms().chain(b.terms()).map(|(e, _)| e.to_vec()).collect();
            for e in keys {
                if let Some(w) = scalar_diff(ring, label, &format!("{e:?}"), &a.coeff(&e), &b.coeff(&e), ct)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
        (Side::Table(a), Side::Table(b)) => {
            let zero = Scalar::zero();
            let keys: BTreeSet<&String> = a.keys().chain(b.keys()).collect();
            for k in keys {
                let x = a.get(k).unwrap_or(&zero);
                let y = b.get(k).unwrap_or(&zero);
                if let Some(w) = scalar_diff(ring, label, k, x, y, target)? {
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
        _ => Err(Error::Invariant(format!("claim {label}: sides of different kinds"))),
    }
}
