//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use mhq_core::hyperseries::{Arg, SeriesSpec};
use mhq_core::identities::{
    default_instances, instances, lookup, run_all, verify, Case, IdentityReport, Mode, ParamSpec, Status, Value,
};
use mhq_core::macdonald::{ct_a_direct, ground_closed, inner_product, macdonald_poly, norm_ratio};
use mhq_core::partition::{partitions_of, partitions_up_to};
use mhq_core::{rat, rat_int, MPoly, Partition, Ring, Scalar};

const SEED: u64 = 20240611;

type Outcome = Result<String, String>;

fn reports(id: &str, cases: Vec<Case>) -> Vec<IdentityReport> {
    let entry = lookup(id).expect("registered");
    let items: Vec<_> = cases
        .iter()
        .enumerate()
        .flat_map(|(i, c)| instances(entry, c, SEED, i).into_iter().map(move |ps| (entry, ps)))
        .collect();
    run_all(&items)
}

fn envelope(ids: &[&str]) -> Vec<IdentityReport> {
    let entries: Vec<_> = ids.iter().map(|id| lookup(id).expect("registered")).collect();
    run_all(&default_instances(&entries, SEED))
}

/// All reports pass; returns their count.
fn all_pass(what: &str, rs: &[IdentityReport]) -> Result<usize, String> {
    if rs.is_empty() {
        return Err(format!("{what}: nothing ran"));
    }
    match rs.iter().find(|r| r.status != Status::Pass) {
        None => Ok(rs.len()),
        Some(r) => Err(format!(
            "{what}: {:?} at {} ({})",
            r.status,
            r.fingerprint,
            r.diagnosis.clone().or_else(|| r.witness.as_ref().map(|w| w.claim.clone())).unwrap_or_default()
        )),
    }
}

fn rational(n: usize, k: u32) -> ParamSpec {
    ParamSpec::new(Mode::RationalPoint, n).with_k(k)
}

fn formal(n: usize, k: u32) -> ParamSpec {
    ParamSpec::new(Mode::FormalQ, n).with_k(k)
}

fn with_dq(mut ps: ParamSpec, dq: i64) -> ParamSpec {
    ps.dq = dq;
    ps
}

fn with_dz(mut ps: ParamSpec, dz: i64) -> ParamSpec {
    ps.dz = dz;
    ps
}

fn kernel() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in [2usize, 3] {
        for k in [1u32, 2] {
            let ring = Ring::rational_qk(n, rat(2, 3), k, 8).map_err(|e| e.to_string())?;
            let one = MPoly::one(n);
            let ground = inner_product(&one, &one, &ring).map_err(|e| e.to_string())?;
            if ground != ground_closed(n, &ring).map_err(|e| e.to_string())? {
                return Err(format!("ground n={n} k={k}"));
            }
            let parts = partitions_up_to(4, n);
            let polys: Vec<MPoly> = parts.iter().map(|l| macdonald_poly(l, n, &ring).unwrap().to_mpoly()).collect();
            for (i, lam) in parts.iter().enumerate() {
                let p = macdonald_poly(lam, n, &ring).unwrap();
                if p.coeff(lam) != Scalar::one() || p.coeffs.keys().any(|mu| !mu.dominated_by(lam)) {
                    return Err(format!("triangularity of P_({lam}) n={n} k={k}"));
                }
                for (j, mu) in parts.iter().enumerate() {
                    let ip = inner_product(&polys[i], &polys[j], &ring).map_err(|e| e.to_string())?;
                    let want = if i == j { ring.mul(&norm_ratio(lam, n, &ring).unwrap(), &ground) } else { Scalar::zero() };
                    if ip != want {
                        return Err(format!("<P_({lam}), P_({mu})> n={n} k={k}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    let formal_ring = Ring::formal(2, 2, 24);
    let one = MPoly::one(2);
    let g = inner_product(&one, &one, &formal_ring).map_err(|e| e.to_string())?;
    let want = Scalar::from_terms([(0, rat_int(1)), (1, rat_int(1)), (2, rat_int(1))], 24);
    if !g.agrees_to(&want, 24) {
        return Err(format!("<1,1> at n=2, k=2 is {g}"));
    }
    let at_point = Ring::rational_qk(2, rat(2, 3), 2, 8).unwrap();
    if inner_product(&one, &one, &at_point).unwrap() != Scalar::constant(rat(19, 9)) {
        return Err("<1,1> at q = 2/3, t = q^2 is not 1 + q + q^2".into());
    }
    let took = start.elapsed();
    if took > Duration::from_secs(60) {
        return Err(format!("kernel suite took {took:?}"));
    }
    Ok(format!("{checked} inner products exact, <1,1> = 1+q+q^2, {:.1}s", took.as_secs_f64()))
}

fn q_binomial() -> Outcome {
    let mut cases = Vec::new();
    for chi in [1, 2] {
        let mut ps = with_dq(formal(2, 2).with("a", Value::qpow(3)), 12);
        ps.chi = vec![chi, chi];
        cases.push(Case::new(ps, 1));
    }
    let mut ps = with_dq(formal(2, 2).with("a", Value::qpow(3)), 12);
    ps.chi = vec![1, 2];
    cases.push(Case::new(ps, 1));
    for m in 0..=3 {
        cases.push(Case::new(with_dz(rational(2, 1).with("a", Value::qpow(m)), 5), 1));
    }
    let n = all_pass("Q_BINOMIAL", &reports("Q_BINOMIAL", cases))?;
    Ok(format!("{n} PASS (formal chi in {{1,2}}, general z with a = q^m)"))
}

fn gauss() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=3 {
        for k in 1..=2 {
            for big_n in 0..=3 {
                cases.push(Case::new(rational(n, k).with("N", Value::Int(big_n)), 5));
            }
        }
    }
    let total = all_pass("GAUSS", &reports("GAUSS", cases))?;
    // n = 1, N = 1 by hand
    let (q, b, c) = (rat(1, 2), rat(1, 3), rat(1, 5));
    let ring = Ring::rational(1, q.clone(), rat(1, 3), 4).unwrap();
    let spec = SeriesSpec::phi(
        vec![Scalar::constant(q.recip()), Scalar::constant(b.clone())],
        vec![Scalar::constant(c.clone())],
        Arg::Principal(Scalar::constant(&c * &q / &b)),
    );
    let got = spec.evaluate(&ring, 4).map_err(|e| e.to_string())?;
    let want = (&b - &c) / (&b * (rat_int(1) - &c));
    if got.scalar().unwrap() != &Scalar::constant(want.clone()).truncate(4) {
        return Err(format!("n=1, N=1 value differs from {want}"));
    }
    Ok(format!("{total} PASS; n=1, N=1 gives (b-c)/(b(1-c)) = {want}"))
}

fn heine() -> Outcome {
    let mut cases = Vec::new();
    for n in 1..=2 {
        for m in 0..=2 {
            cases.push(Case::new(with_dz(rational(n, 1).with("m", Value::Int(m)), 5), 2));
        }
        for k in 1..=2 {
            cases.push(Case::new(with_dq(formal(n, k), 10), 2));
        }
    }
    let a = all_pass("HEINE", &reports("HEINE", cases))?;
    let paths = |id| {
        let mut cases = Vec::new();
        for n in 1..=2 {
            for k in 1..=2 {
                cases.push(Case::new(with_dq(formal(n, k), 10), 2));
            }
        }
        reports(id, cases)
    };
    let b = all_pass("HEINE_GAUSS_PATH", &paths("HEINE_GAUSS_PATH"))?;
    let c = all_pass("HEINE_EULER_PATH", &paths("HEINE_EULER_PATH"))?;
    Ok(format!("HEINE {a}, Heine->Gauss {b}, Heine twice->Euler {c} PASS"))
}

fn euler() -> Outcome {
    let mut ps = with_dz(ParamSpec::new(Mode::RationalPoint, 2), 4);
    ps.k = None;
    let n = all_pass("EULER", &reports("EULER", vec![Case::new(ps, 5)]))?;
    Ok(format!("{n} random points PASS at n=2, D_z=4"))
}

fn kaneko() -> Outcome {
    let base = || {
        let mut ps = with_dz(ParamSpec::new(Mode::RationalPoint, 2), 5);
        ps.k = None;
        ps
    };
    let n = all_pass("KANEKO_SYSTEM", &reports("KANEKO_SYSTEM", vec![Case::new(base(), 3)]))?;
    let bad = reports("KANEKO_SYSTEM", vec![Case::new(base().with("variant", Value::Int(1)), 3)]);
    if let Some(r) = bad.iter().find(|r| r.status != Status::Fail || r.witness.is_none()) {
        return Err(format!("uncorrected variant did not fail at {}", r.fingerprint));
    }
    Ok(format!("{n} PASS for i = 1, 2; uncorrected variant FAILS at {} points", bad.len()))
}

fn saalschutz_sears() -> Outcome {
    let mut total = 0;
    for id in ["SAALSCHUTZ", "SEARS"] {
        let mut cases = Vec::new();
        for n in 1..=2 {
            for k in 1..=2 {
                for big_n in 0..=2 {
                    cases.push(Case::new(rational(n, k).with("N", Value::Int(big_n)), 5));
                }
            }
        }
        total += all_pass(id, &reports(id, cases))?;
    }
    for id in ["SAAL_COEFF", "CHU_VANDERMONDE"] {
        let mut cases = Vec::new();
        for n in 1..=3 {
            for lam in partitions_up_to(3, n) {
                let mut ps = rational(n, 1);
                ps.lambda = Some(lam);
                cases.push(Case::new(ps, 1));
            }
        }
        total += all_pass(id, &reports(id, cases))?;
    }
    Ok(format!("{total} PASS"))
}

fn structural() -> Outcome {
    let ids = ["MACDONALD_RECT", "OTOTO", "SHUMI", "LAPIZ", "SOMBRERO", "SYMM", "SHIFT", "JB", "NEG_REVERSE_P"];
    let rs = envelope(&ids);
    for id in ids {
        if !rs.iter().any(|r| r.identity == id) {
            return Err(format!("{id} did not run"));
        }
    }
    let n = all_pass("structural", &rs)?;
    Ok(format!("{n} PASS across {} identities", ids.len()))
}

fn shifted() -> Outcome {
    let mut total = 0;
    for id in ["SHIFTED_GAUSS", "CHICHI", "PFAFF_KUMMER"] {
        let mut cases = Vec::new();
        for (n, k) in [(1, 1), (2, 1), (2, 2)] {
            if id != "PFAFF_KUMMER" {
                for w in 0..=2u32 {
                    for lam in partitions_of(w, n, w) {
                        let mut ps = with_dq(formal(n, k as u32), 10);
                        ps.lambda = Some(lam);
                        cases.push(Case::new(ps, 1));
                    }
                }
            } else {
                cases.push(Case::new(with_dq(formal(n, k as u32), 10), 2));
            }
        }
        total += all_pass(id, &reports(id, cases))?;
    }
    // a b that breaks b = aczx t^{n-1} is refused before anything is computed
    let entry = lookup("SHIFTED_GAUSS").unwrap();
    let mut ps = with_dq(formal(2, 1), 10);
    ps.lambda = Some(Partition::new(vec![1]).unwrap());
    let mut ps = instances(entry, &Case::new(ps, 1), SEED, 0).remove(0);
    ps.params.insert("b".into(), Value::QPow { c: rat(2, 9), e: 7 });
    let r = verify(entry, &ps);
    if r.status != Status::Skipped {
        return Err("SHIFTED_GAUSS ran with b off the constraint".into());
    }
    Ok(format!("{total} PASS; unwired b is SKIPPED"))
}

fn one_psi_one_ct() -> Outcome {
    let a = all_pass("ONE_PSI_ONE", &envelope(&["ONE_PSI_ONE"]))?;
    let mut cases = Vec::new();
    for n in 1..=2 {
        for w in 0..=2u32 {
            for lam in partitions_of(w, n, w) {
                for ea in 0..=2 {
                    for eb in 0..=2 {
                        let mut ps = formal(n, 1).with("a", Value::Int(ea)).with("b", Value::Int(eb));
                        ps.lambda = Some(lam.clone());
                        cases.push(Case::new(ps, 1));
                    }
                }
            }
        }
    }
    let b = all_pass("KADELL_KANEKO_CT", &reports("KADELL_KANEKO_CT", cases.clone()))?;
    let c = all_pass("LLAVE", &reports("LLAVE", cases))?;
    let ring = Ring::formal(1, 1, 10);
    let v = ct_a_direct(&Partition::empty(), 1, 1, 1, &ring).map_err(|e| e.to_string())?;
    if !v.agrees_to(&Scalar::from_terms([(0, rat_int(1)), (1, rat_int(1))], 10), 10) {
        return Err(format!("n=1, a=b=1 constant term is {v}"));
    }
    Ok(format!("ONE_PSI_ONE {a} (incl. b = q), KADELL_KANEKO_CT {b}, LLAVE {c} PASS; n=1 value 1+q"))
}

fn bilateral() -> Outcome {
    let ids = ["TWO_PSI_TWO_A", "TWO_PSI_TWO_SUM", "TWO_PSI_TWO_B", "PSI_INVERSION", "BAILEY"];
    let rs: Vec<IdentityReport> = envelope(&ids).into_iter().filter(|r| r.mode == Mode::FormalQ).collect();
    for id in ids {
        if !rs.iter().any(|r| r.identity == id) {
            return Err(format!("{id} did not run in formal mode"));
        }
    }
    let reductions = rs
        .iter()
        .filter(|r| r.identity == "BAILEY" && r.params.get("reduce").is_some_and(|v| v != "0"))
        .count();
    if reductions < 2 {
        return Err("BAILEY reductions to A and B did not run".into());
    }
    let n = all_pass("bilateral", &rs)?;
    Ok(format!("{n} formal PASS, {reductions} of them BAILEY specializations"))
}

fn run_all_cli(report: &Path, jobs: &str) -> Result<(Duration, String), String> {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_mhq"))
        .args(["verify", "--identity", "all", "--omit-timing", "--seed", "7", "--jobs", jobs, "--report"])
        .arg(report)
        .env("MHQ_CACHE_DIR", cache.path())
        .output()
        .map_err(|e| e.to_string())?;
    let took = start.elapsed();
    if out.status.code() != Some(0) {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    Ok((took, String::from_utf8_lossy(&out.stdout).lines().last().unwrap_or_default().to_string()))
}

fn full_run() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (r1, r2) = (dir.path().join("one.json"), dir.path().join("two.json"));
    let (took, summary) = run_all_cli(&r1, "1")?;
    if took > Duration::from_secs(600) {
        return Err(format!("took {took:?}"));
    }
    let doc: serde_json::Value = serde_json::from_slice(&std::fs::read(&r1).unwrap()).map_err(|e| e.to_string())?;
    if doc["summary"]["fail"] != 0 || doc["summary"]["total"] == 0 {
        return Err(format!("summary {}", doc["summary"]));
    }
    run_all_cli(&r2, "4")?;
    if std::fs::read(&r1).unwrap() != std::fs::read(&r2).unwrap() {
        return Err("reports differ between identical runs".into());
    }
    Ok(format!("{summary} in {:.0}s; rerun byte-identical", took.as_secs_f64()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("kernel suite", kernel),
        ("Q_BINOMIAL", q_binomial),
        ("GAUSS", gauss),
        ("HEINE and derivation paths", heine),
        ("EULER at general z", euler),
        ("KANEKO_SYSTEM", kaneko),
        ("SAALSCHUTZ, SEARS, SAAL_COEFF, CHU_VANDERMONDE", saalschutz_sears),
        ("structural identities", structural),
        ("SHIFTED_GAUSS, CHICHI, PFAFF_KUMMER", shifted),
        ("ONE_PSI_ONE, KADELL_KANEKO_CT, LLAVE", one_psi_one_ct),
        ("bilateral transformations", bilateral),
        ("verify --identity all", full_run),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
