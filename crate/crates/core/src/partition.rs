//! Partitions and generalized partitions.
//!
//! A [`Partition`] is a non-increasing sequence of non-negative integers with
//! trailing zeros stripped. A [`GenPartition`] has a fixed length `n` and may
//! carry negative parts; these index bilateral sums.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, stripping trailing zeros. Fails if the parts are
    /// not non-increasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle `(width^height)`.
    pub fn rectangle(width: u32, height: usize) -> Self {
        if width == 0 {
            return Self::empty();
        }
        Partition(vec![width; height])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (0..width)
            .map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &p)| i as i64 * p as i64).sum()
    }

    /// `n(λ')`, computed as `Σ λ_i (λ_i - 1) / 2`.
    pub fn n_conj_stat(&self) -> i64 {
        self.0.iter().map(|&p| p as i64 * (p as i64 - 1) / 2).sum()
    }

    /// Arm and leg lengths of every cell, row by row.
    pub fn arm_legs(&self) -> Vec<(u32, u32)> {
        let conj = self.conjugate();
        let mut cells = Vec::with_capacity(self.weight() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.part(j as usize) - i as u32 - 1;
                cells.push((arm, leg));
            }
        }
        cells
    }

    pub fn diagram_stats(&self) -> DiagramStats {
        DiagramStats {
            conjugate: self.conjugate(),
            nlam: self.n_stat(),
            nlam_conj: self.n_conj_stat(),
            cells: self.arm_legs(),
        }
    }

    /// Dominance order: `self ≤ other` iff equal weight and every partial sum
    /// of `self` is bounded by that of `other`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.part(i);
            b += other.part(i);
            if a > b {
                return false;
            }
        }
        true
    }

    /// Parts padded with zeros to length `n`. Fails if `len > n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if self.len() > n {
            return Err(Error::LengthExceeded { len: self.len(), n });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    /// Complement in the rectangle `(N^n)`: `λ̂_i = N - λ_{n+1-i}`.
    pub fn complement(&self, width: u32, n: usize) -> Result<Partition> {
        if self.part(0) > width {
            return Err(Error::InvalidPartition(format!(
                "{self} does not fit in a box of width {width}"
            )));
        }
        let p = self.padded(n)?;
        Partition::new((0..n).map(|i| width - p[n - 1 - i]).collect())
    }

    pub fn to_gen(&self, n: usize) -> Result<GenPartition> {
        Ok(GenPartition(self.padded(n)?.into_iter().map(|p| p as i64).collect()))
    }

    /// Canonical comparison: graded by weight, then reverse lexicographic
    /// (larger parts first).
    pub fn canonical_cmp(&self, other: &Partition) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub conjugate: Partition,
    pub nlam: i64,
    pub nlam_conj: i64,
    pub cells: Vec<(u32, u32)>,
}

/// A non-increasing integer `n`-tuple; negative parts allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenPartition(Vec<i64>);

impl GenPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("generalized partition needs n >= 1".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(GenPartition(parts))
    }

    pub fn zero(n: usize) -> Self {
        GenPartition(vec![0; n])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("non-empty")
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &p)| i as i64 * p).sum()
    }

    /// `Σ λ_i (λ_i - 1) / 2`, the extension of `n(λ')` to integer parts.
    pub fn n_conj_stat(&self) -> i64 {
        self.0.iter().map(|&p| p * (p - 1) / 2).sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.last() >= 0
    }

    /// `λ + a` (every part shifted).
    pub fn shift(&self, a: i64) -> GenPartition {
        GenPartition(self.0.iter().map(|p| p + a).collect())
    }

    /// `λ - λ_n` as an ordinary partition, plus the removed shift `λ_n`.
    pub fn normalize(&self) -> (Partition, i64) {
        let last = self.last();
        let parts = self.0.iter().map(|p| (p - last) as u32).collect();
        (Partition::new(parts).expect("shifted parts stay ordered"), last)
    }

    /// `-λ^R = (-λ_n, …, -λ_1)`.
    pub fn neg_reverse(&self) -> GenPartition {
        GenPartition(self.0.iter().rev().map(|p| -p).collect())
    }

    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_nonnegative() {
            return None;
        }
        Partition::new(self.0.iter().map(|&p| p as u32).collect()).ok()
    }
}

impl fmt::Display for GenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for GenPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("generalized partition {s:?}: {e}")))?;
        GenPartition::new(parts)
    }
}

/// Bounds accepted by [`enumerate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounds {
    /// All partitions with at most `n` parts and weight `<= w`.
    MaxWeight(i64),
    /// All partitions inside the `(N^n)` box.
    Box(i64),
    /// All generalized partitions with `hi >= λ_1 >= … >= λ_n >= lo`.
    GenWindow(i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indexed {
    Plain(Vec<Partition>),
    General(Vec<GenPartition>),
}

/// Partitions of exactly `weight` into at most `n` parts with parts `<= max_part`,
/// reverse lexicographic order.
pub fn partitions_of(weight: u32, n: usize, max_part: u32) -> Vec<Partition> {
    fn rec(rem: u32, slots: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            // remaining slots must be able to absorb the rest
            if (p as u64) * (slots as u64) < rem as u64 {
                break;
            }
            cur.push(p);
            rec(rem - p, slots - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(weight, n, max_part, &mut Vec::new(), &mut out);
    out
}

/// Partitions with at most `n` parts and weight `<= max_weight`, graded order.
pub fn partitions_up_to(max_weight: u32, n: usize) -> Vec<Partition> {
    (0..=max_weight).flat_map(|w| partitions_of(w, n, w)).collect()
}

/// Complete duplicate-free enumeration in canonical order.
pub fn enumerate(n: usize, bounds: Bounds) -> Result<Indexed> {
    match bounds {
        Bounds::MaxWeight(w) => {
            if w < 0 {
                return Err(Error::InvalidBounds(format!("max_weight {w} < 0")));
            }
            Ok(Indexed::Plain(partitions_up_to(w as u32, n)))
        }
        Bounds::Box(width) => {
            if width < 0 {
                return Err(Error::InvalidBounds(format!("box width {width} < 0")));
            }
            let w = width as u32;
            let top = w * n as u32;
            Ok(Indexed::Plain((0..=top).flat_map(|k| partitions_of(k, n, w)).collect()))
        }
        Bounds::GenWindow(lo, hi) => {
            if n == 0 {
                return Err(Error::InvalidBounds("generalized window needs n >= 1".into()));
            }
            Ok(Indexed::General(gen_window(n, &vec![lo; n], &vec![hi; n])))
        }
    }
}

/// Generalized partitions with `lo[i] <= λ_i <= hi[i]`, ordered by weight
/// then reverse lexicographically.
pub fn gen_window(n: usize, lo: &[i64], hi: &[i64]) -> Vec<GenPartition> {
    fn rec(i: usize, cap: i64, lo: &[i64], hi: &[i64], cur: &mut Vec<i64>, out: &mut Vec<GenPartition>) {
        if i == lo.len() {
            out.push(GenPartition(cur.clone()));
            return;
        }
        let top = cap.min(hi[i]);
        let mut v = top;
        while v >= lo[i] {
            cur.push(v);
            rec(i + 1, v, lo, hi, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    let mut out = Vec::new();
    rec(0, i64::MAX, &lo[..n], &hi[..n], &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.0.cmp(&a.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn diagram_stats_examples() {
        let s = p(&[2, 1]).diagram_stats();
        assert_eq!(s.conjugate, p(&[2, 1]));
        assert_eq!((s.nlam, s.nlam_conj), (1, 1));
        assert_eq!(s.cells, vec![(1, 1), (0, 0), (0, 0)]);

        let s = p(&[3, 1]).diagram_stats();
        assert_eq!(s.conjugate, p(&[2, 1, 1]));
        assert_eq!((s.nlam, s.nlam_conj), (1, 3));

        let s = Partition::empty().diagram_stats();
        assert!(s.conjugate.is_empty());
        assert_eq!((s.nlam, s.nlam_conj), (0, 0));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(p(&[1]).complement(2, 2).unwrap(), p(&[2, 1]));
        assert_eq!(Partition::rectangle(3, 2).complement(3, 2).unwrap(), Partition::empty());
        assert_eq!(p(&[2, 1]).complement(3, 3).unwrap(), p(&[3, 2, 1]));
        assert!(p(&[3]).complement(2, 2).is_err());
        assert!(p(&[1, 1, 1]).complement(2, 2).is_err());
    }

    #[test]
    fn neg_reverse_examples() {
        let g = |v: &[i64]| GenPartition::new(v.to_vec()).unwrap();
        assert_eq!(g(&[2, 0, -1]).neg_reverse(), g(&[1, 0, -2]));
        assert_eq!(g(&[0, 0]).neg_reverse(), g(&[0, 0]));
        assert_eq!(g(&[3, 3]).neg_reverse(), g(&[-3, -3]));
    }

    #[test]
    fn enumerate_examples() {
        let Indexed::Plain(v) = enumerate(2, Bounds::MaxWeight(2)).unwrap() else { panic!() };
        assert_eq!(v, vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1])]);
        let Indexed::Plain(v) = enumerate(2, Bounds::Box(1)).unwrap() else { panic!() };
        assert_eq!(v, vec![p(&[]), p(&[1]), p(&[1, 1])]);
        let Indexed::General(v) = enumerate(1, Bounds::GenWindow(-1, 1)).unwrap() else { panic!() };
        let got: Vec<_> = v.iter().map(|g| g.parts()[0]).collect();
        assert_eq!(got, vec![-1, 0, 1]);
        assert!(enumerate(2, Bounds::MaxWeight(-1)).is_err());
        assert!(enumerate(2, Bounds::Box(-3)).is_err());
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(GenPartition::new(vec![-1, 0]).is_err());
    }

    #[test]
    fn serialization() {
        assert_eq!(p(&[2, 1]).to_string(), "2,1");
        assert_eq!(Partition::empty().to_string(), "");
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("2,0,-1".parse::<GenPartition>().unwrap().to_string(), "2,0,-1");
        assert_eq!("3,1,0".parse::<Partition>().unwrap(), p(&[3, 1]));
    }

    #[test]
    fn dominance() {
        assert!(p(&[1, 1]).dominated_by(&p(&[2])));
        assert!(!p(&[2]).dominated_by(&p(&[1, 1])));
        assert!(!p(&[3, 3]).dominated_by(&p(&[4, 1, 1])));
        assert!(!p(&[4, 1, 1]).dominated_by(&p(&[3, 3])));
    }
}
