/// `println!` that ignores a closed stdout (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod args;
mod plan;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use mhq_core::identities::{list_identities, run_all, Mode, Status};
use mhq_core::macdonald::{cache, macdonald_poly};
use mhq_core::{Partition, Rat, Ring};

use args::{CacheOp, Cli, Command, ComputeCmd, PointArgs, VerifyArgs};

/// Bad flags or config; exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<mhq_core::Error> for UsageError {
    fn from(e: mhq_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("mhq: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    if let Some(d) = &cli.cache_dir {
        return Some(d.clone());
    }
    if let Some(d) = std::env::var_os("MHQ_CACHE_DIR").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(d));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|d| !d.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("mhq"))
}

fn ensure_dir(dir: &PathBuf) -> Result<(), UsageError> {
    std::fs::create_dir_all(dir).map_err(|e| UsageError(format!("cache dir {}: {e}", dir.display())))
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    let dir = cache_dir(&cli);
    if let Command::Cache { op } = &cli.command {
        let dir = dir.ok_or_else(|| UsageError("no cache directory; set MHQ_CACHE_DIR".into()))?;
        ensure_dir(&dir)?;
        return cache_admin(op, &dir);
    }
    if !cli.no_cache {
        if let Some(d) = &dir {
            ensure_dir(d)?;
            cache::set_cache_dir(Some(d.clone()));
        }
    }
    match cli.command {
        Command::Verify(v) => verify(v),
        Command::Compute { what: ComputeCmd::Macdonald(p) } => compute_macdonald(&p),
        Command::ListIdentities { json } => {
            list(json);
            Ok(0)
        }
        Command::Cache { .. } => unreachable!(),
    }
}

fn verify(flags: VerifyArgs) -> Result<u8, UsageError> {
    let merged = plan::merge(flags)?;
    let plan = plan::build(merged)?;
    let v = &plan.settings;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = v.jobs {
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| UsageError(format!("thread pool: {e}")))?;
    let mut reports = pool.install(|| run_all(&plan.items));
    if v.omit_timing {
        for r in &mut reports {
            r.elapsed_ms = None;
        }
    }
    for r in &reports {
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        out!("{status:<8} {:<18} {}", r.identity, r.fingerprint);
        if let Some(d) = &r.diagnosis {
            eprintln!("{} [{}]: {d}", r.identity, r.fingerprint);
        }
        if let Some(w) = &r.witness {
            eprintln!(
                "{} [{}]: {} differs at {} power {}: {} vs {}",
                r.identity, r.fingerprint, w.claim, w.index, w.power, w.lhs, w.rhs
            );
        }
    }
    let summary = report::Summary::of(&reports);
    out!("{} passed, {} failed, {} skipped", summary.pass, summary.fail, summary.skipped);
    let ok = summary.fail == 0 && (summary.skipped == 0 || v.allow_skip);
    if let Some(path) = &v.report {
        let doc = report::Document {
            version: env!("CARGO_PKG_VERSION"),
            config: &plan.config,
            config_fingerprint: report::fingerprint(&plan.config),
            summary,
            reports: &reports,
        };
        let mut bytes = serde_json::to_vec_pretty(&doc).expect("report serializes");
        bytes.push(b'\n');
        if let Err(e) = report::write_atomic(path, &bytes) {
            eprintln!("mhq: writing {}: {e}", path.display());
            return Ok(2);
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn compute_macdonald(p: &PointArgs) -> Result<u8, UsageError> {
    let lambda = Partition::from_str(&p.lambda)?;
    if p.n == 0 || lambda.len() > p.n {
        return Err(UsageError(format!("--lambda {} does not fit in n = {}", p.lambda, p.n)));
    }
    let mode = Mode::from_str(&p.mode)?;
    let parse = |name: &str, s: &Option<String>| -> Result<Option<Rat>, UsageError> {
        s.as_deref()
            .map(|s| Rat::from_str(s.trim()).map_err(|_| UsageError(format!("--{name} {s:?} is not a rational p/q"))))
            .transpose()
    };
    let ring = match mode {
        Mode::FormalQ => {
            if p.q.is_some() || p.t.is_some() {
                return Err(UsageError("--q and --t need --mode rational-point".into()));
            }
            Ring::formal(p.n, p.k.unwrap_or(1), p.dq + 1)
        }
        Mode::RationalPoint => {
            let q = parse("q", &p.q)?.ok_or_else(|| UsageError("rational-point mode needs --q".into()))?;
            match (parse("t", &p.t)?, p.k) {
                (Some(t), None) => Ring::rational(p.n, q, t, 1)?,
                (None, Some(k)) => Ring::rational_qk(p.n, q, k, 1)?,
                _ => return Err(UsageError("rational-point mode needs exactly one of --t, --k".into())),
            }
        }
    };
    if ring.k.is_none() && mode == Mode::FormalQ {
        return Err(UsageError("formal mode needs --k".into()));
    }
    let poly = macdonald_poly(&lambda, p.n, &ring).map_err(|e| {
        eprintln!("mhq: {e}");
        e
    });
    let Ok(poly) = poly else { return Ok(1) };
    out!("P_({lambda}) in {} variables, {}", p.n, ring.fingerprint());
    let mut rows: Vec<_> = poly.coeffs.iter().collect();
    rows.sort_by(|a, b| a.0.canonical_cmp(b.0));
    for (mu, c) in rows {
        let c = if mode == Mode::FormalQ { c.truncate(p.dq + 1) } else { c.clone() };
        out!("m_({mu})\t{}", ring.text(&c));
    }
    Ok(0)
}

fn list(json: bool) {
    let rows = list_identities();
    if json {
        out!("{}", serde_json::to_string_pretty(&rows).expect("registry serializes"));
        return;
    }
    out!("{:<18} {:<12} {:<26} CONSTRAINTS", "ID", "KIND", "MODES");
    for r in rows {
        let kind = serde_json::to_value(r.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        out!("{:<18} {:<12} {:<26} {}", r.id, kind, r.modes.join(","), r.constraints.join("; "));
    }
}

fn cache_admin(op: &CacheOp, dir: &PathBuf) -> Result<u8, UsageError> {
    match op {
        CacheOp::Stats => {
            let s = cache::stats(dir);
            out!("{}", serde_json::json!({ "dir": dir, "entries": s.entries, "bytes": s.bytes }));
            Ok(0)
        }
        CacheOp::Clear => {
            let removed = cache::clear(dir)?;
            out!("{}", serde_json::json!({ "dir": dir, "removed": removed }));
            Ok(0)
        }
        CacheOp::VerifyIntegrity { sample, seed } => {
            let r = cache::verify_integrity(dir, *sample, *seed);
            out!("{}", serde_json::to_string(&r).expect("report serializes"));
            for q in &r.quarantined {
                eprintln!("mhq: quarantined {q}");
            }
            Ok(if r.quarantined.is_empty() { 0 } else { 1 })
        }
    }
}
