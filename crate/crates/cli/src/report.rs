//! The report document and its atomic write.

use std::io::Write;
use std::path::Path;

use mhq_core::identities::{IdentityReport, Status};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Summary {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Summary { total: reports.len(), pass: count(Status::Pass), fail: count(Status::Fail), skipped: count(Status::Skipped) }
    }
}

#[derive(Serialize)]
pub struct Document<'a> {
    pub version: &'static str,
    pub config: &'a serde_json::Value,
    pub config_fingerprint: String,
    pub summary: Summary,
    pub reports: &'a [IdentityReport],
}

pub fn fingerprint(config: &serde_json::Value) -> String {
    let digest = Sha256::digest(config.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
