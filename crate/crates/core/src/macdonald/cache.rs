//! On-disk cache of Macdonald polynomials.
//!
//! One file per entry. A file holds the header line `MHQCACHE 1`, a key
//! line, a precision line and one `μ<TAB>coefficient` line per monomial
//! coefficient. Writes go to a temporary file that is renamed into place.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::{macdonald_poly_uncached, MacPoly};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::ring::{Rat, Ring, Scalar, EXACT};

pub const HEADER: &str = "MHQCACHE 1";
const EXT: &str = "mhq";

fn dir_slot() -> &'static Mutex<Option<PathBuf>> {
    static D: OnceLock<Mutex<Option<PathBuf>>> = OnceLock::new();
    D.get_or_init(|| Mutex::new(None))
}

/// Enables (or with `None`, disables) the disk cache for this process.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *dir_slot().lock().expect("cache lock") = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    dir_slot().lock().expect("cache lock").clone()
}

fn key_line(fingerprint: &str, n: usize, lambda: &Partition) -> String {
    format!("{fingerprint}|n={n}|{lambda}")
}

fn file_name(key: &str) -> String {
    let mut s = String::new();
    for ch in key.chars() {
        match ch {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '-' | ',' | '=' | '.' => s.push(ch),
            _ => s.push_str(&format!("%{:02X}", ch as u32)),
        }
    }
    format!("{s}.{EXT}")
}

fn serialize(p: &MacPoly, ring: &Ring) -> String {
    let mut out = format!("{HEADER}\n{}\n", key_line(&ring.fingerprint(), p.n, &p.lambda));
    let prec = p.prec();
    out.push_str(&if prec == EXACT { "prec exact\n".to_string() } else { format!("prec {prec}\n") });
    for (mu, c) in &p.coeffs {
        out.push_str(&format!("{mu}\t{}\n", ring.text(c)));
    }
    out
}

struct Entry {
    fingerprint: String,
    n: usize,
    lambda: Partition,
    prec: i64,
    coeffs: BTreeMap<Partition, String>,
}

fn parse(text: &str) -> Result<Entry> {
    let mut lines = text.lines();
    if lines.next() != Some(HEADER) {
        return Err(Error::Cache("missing header".into()));
    }
    let key = lines.next().ok_or_else(|| Error::Cache("missing key".into()))?;
    let fields: Vec<&str> = key.split('|').collect();
    if fields.len() != 3 {
        return Err(Error::Cache(format!("malformed key {key:?}")));
    }
    let n: usize = fields[1]
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Cache(format!("malformed key {key:?}")))?;
    let lambda: Partition = fields[2].parse()?;
    let prec_line = lines.next().ok_or_else(|| Error::Cache("missing precision".into()))?;
    let prec = match prec_line.strip_prefix("prec ") {
        Some("exact") => EXACT,
        Some(v) => v.parse().map_err(|_| Error::Cache(format!("bad precision {v:?}")))?,
        None => return Err(Error::Cache("missing precision".into())),
    };
    let mut coeffs = BTreeMap::new();
    for line in lines {
        let (mu, c) = line.split_once('\t').ok_or_else(|| Error::Cache(format!("malformed line {line:?}")))?;
        coeffs.insert(mu.parse()?, c.to_string());
    }
    Ok(Entry { fingerprint: fields[0].to_string(), n, lambda, prec, coeffs })
}

fn decode(e: &Entry, ring: &Ring) -> Result<MacPoly> {
    let mut coeffs = BTreeMap::new();
    for (mu, c) in &e.coeffs {
        coeffs.insert(mu.clone(), Scalar::parse_text(c, ring.var.name())?);
    }
    Ok(MacPoly { lambda: e.lambda.clone(), n: e.n, coeffs })
}

/// Looks up `P_λ`; entries with less precision than the ring's cap miss.
pub fn load(lambda: &Partition, n: usize, ring: &Ring) -> Option<MacPoly> {
    let dir = cache_dir()?;
    let key = key_line(&ring.fingerprint(), n, lambda);
    let text = fs::read_to_string(dir.join(file_name(&key))).ok()?;
    let entry = parse(&text).ok()?;
    if entry.prec < ring.cap || entry.lambda != *lambda || entry.n != n || entry.fingerprint != ring.fingerprint() {
        return None;
    }
    let p = decode(&entry, ring).ok()?;
    Some(if entry.prec == EXACT { p } else { p.truncate(ring.cap) })
}

/// Publishes `P_λ`. Failures are ignored: the cache is an optimization.
pub fn store(p: &MacPoly, ring: &Ring) {
    let Some(dir) = cache_dir() else { return };
    let name = file_name(&key_line(&ring.fingerprint(), p.n, &p.lambda));
    if let Some(old) = fs::read_to_string(dir.join(&name)).ok().and_then(|t| parse(&t).ok()) {
        if old.prec >= p.prec() {
            return;
        }
    }
    let _ = write_atomic(&dir, &name, &serialize(p, ring));
}

fn write_atomic(dir: &Path, name: &str, body: &str) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(dir.join(name)).map_err(|e| e.error)?;
    Ok(())
}

fn entries(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(dir)
        .map(|rd| rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == EXT)).collect())
        .unwrap_or_default();
    v.sort();
    v
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub entries: usize,
    pub bytes: u64,
}

pub fn stats(dir: &Path) -> CacheStats {
    let files = entries(dir);
    let bytes = files.iter().filter_map(|p| fs::metadata(p).ok()).map(|m| m.len()).sum();
    CacheStats { entries: files.len(), bytes }
}

/// Removes every cache entry; returns how many were removed.
pub fn clear(dir: &Path) -> Result<usize> {
    let files = entries(dir);
    for f in &files {
        fs::remove_file(f).map_err(|e| Error::Cache(format!("{}: {e}", f.display())))?;
    }
    Ok(files.len())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntegrityReport {
    pub checked: usize,
    pub matched: usize,
    /// File names of entries that failed to parse or to match a
    /// recomputation; each is renamed with a `.corrupt` suffix.
    pub quarantined: Vec<String>,
}

fn ring_for(fingerprint: &str, n: usize, prec: i64) -> Result<Ring> {
    let cap = if prec == EXACT { 32 } else { prec };
    if let Some(k) = fingerprint.strip_prefix("fq;k=") {
        let k: u32 = k.parse().map_err(|_| Error::Cache(format!("bad fingerprint {fingerprint:?}")))?;
        return Ok(Ring::formal(n, k, cap));
    }
    if let Some(rest) = fingerprint.strip_prefix("rp;q=") {
        let (q, t) = rest.split_once(";t=").ok_or_else(|| Error::Cache(format!("bad fingerprint {fingerprint:?}")))?;
        let q: Rat = q.parse().map_err(|_| Error::Cache(format!("bad q in {fingerprint:?}")))?;
        let t: Rat = t.parse().map_err(|_| Error::Cache(format!("bad t in {fingerprint:?}")))?;
        return Ring::rational(n, q, t, cap);
    }
    Err(Error::Cache(format!("unknown fingerprint {fingerprint:?}")))
}

fn check_entry(path: &Path) -> Result<bool> {
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(e.to_string()))?;
    let entry = parse(&text)?;
    let ring = ring_for(&entry.fingerprint, entry.n, entry.prec)?;
    if file_name(&key_line(&ring.fingerprint(), entry.n, &entry.lambda)) != path.file_name().and_then(|s| s.to_str()).unwrap_or("") {
        return Ok(false);
    }
    let stored = decode(&entry, &ring)?;
    let fresh = macdonald_poly_uncached(&entry.lambda, entry.n, &ring)?;
    Ok(stored == fresh)
}

/// Recomputes a random sample of at most `sample` entries and compares.
pub fn verify_integrity(dir: &Path, sample: usize, seed: u64) -> IntegrityReport {
    let mut files = entries(dir);
    files.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    files.truncate(sample);
    files.sort();
    let mut report = IntegrityReport::default();
    for f in files {
        report.checked += 1;
        if matches!(check_entry(&f), Ok(true)) {
            report.matched += 1;
        } else {
            let name = f.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let _ = fs::rename(&f, f.with_extension(format!("{EXT}.corrupt")));
            report.quarantined.push(name);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_names_escape_separators() {
        let name = file_name("rp;q=1/2;t=1/3|n=2|2,1");
        assert!(!name.contains('/') && !name.contains(';') && !name.contains('|'));
        assert_ne!(file_name("a/b"), file_name("a_b"));
    }

    #[test]
    fn round_trip_through_text() {
        let ring = Ring::formal(2, 1, 8);
        let lambda: Partition = "2".parse().unwrap();
        let p = macdonald_poly_uncached(&lambda, 2, &ring).unwrap();
        let e = parse(&serialize(&p, &ring)).unwrap();
        assert_eq!(e.prec, 8);
        assert_eq!(decode(&e, &ring).unwrap(), p);
    }
}
