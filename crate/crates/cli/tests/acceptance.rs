//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach stdout.

use liecv_cli::suites::{self, Ctx};
use liecv_cli::{Check, Config};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

type Run = fn(Ctx) -> liecv_core::Result<Vec<Check>>;

struct Criterion {
    num: usize,
    name: &'static str,
    limit: Duration,
    parts: Vec<Run>,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criteria() -> Vec<Criterion> {
    use suites::*;
    let c = |num, name, limit, parts: Vec<Run>| Criterion { num, name, limit, parts };
    vec![
        c(1, "BCH exactness", secs(5), vec![bch::oracle]),
        c(2, "Euclidean reduction", secs(10), vec![relconv::euclidean]),
        c(3, "Multiplication reduction", secs(1), vec![relconv::multiplication]),
        c(4, "Composition formula", secs(300), vec![relconv::composition]),
        c(5, "Effective decomposition", secs(300), vec![relconv::decomposition]),
        c(6, "Automorphism covariance", secs(120), vec![relconv::covariance]),
        c(7, "Weyl equivalence", secs(120), vec![weyl::gaussian_symbols, weyl::low_order]),
        c(8, "Bargmann vacuum autocorrelation", secs(60), vec![coherent::vacuum]),
        c(9, "Bargmann reproducing kernel", secs(120), vec![coherent::bargmann_kernel]),
        c(10, "Bergman reproduction", secs(120), vec![coherent::bergman]),
        c(11, "Projector properties", secs(120), vec![coherent::projector]),
        c(12, "Wavelet norm identity", secs(60), vec![coherent::wavelet]),
        c(13, "Dirac residual law", secs(180), vec![dirac::residual_law]),
        c(14, "Quantization closure", secs(1), vec![quantize::closure]),
    ]
}

fn line(pass: bool, num: usize, name: &str, detail: &str) {
    println!("{} {num:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn determinism(bin: &str) -> (bool, String) {
    let tmp = tempfile::tempdir().expect("temp dir");
    let cfg = tmp.path().join("light.json");
    std::fs::write(&cfg, "{\"profile\": \"light\", \"seed\": 7, \"bch_pairs\": 200}\n").expect("write config");
    let mut dirs = Vec::new();
    for run in ["a", "b"] {
        let dir = tmp.path().join(run);
        let out = Command::new(bin)
            .args(["run-suite", "all", "--config"])
            .arg(&cfg)
            .env("LIECV_REPORT_DIR", &dir)
            .output()
            .expect("run liecv");
        if !out.status.success() {
            return (false, format!("run {run} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stdout)));
        }
        dirs.push(dir);
    }
    let list = |d: &Path| {
        let mut v: Vec<_> = std::fs::read_dir(d).unwrap().map(|e| e.unwrap().file_name()).collect();
        v.sort();
        v
    };
    let names = list(&dirs[0]);
    if names != list(&dirs[1]) || names.len() != suites::SUITES.len() {
        return (false, format!("report sets differ: {names:?}"));
    }
    for n in &names {
        if std::fs::read(dirs[0].join(n)).unwrap() != std::fs::read(dirs[1].join(n)).unwrap() {
            return (false, format!("{} differs between runs", n.to_string_lossy()));
        }
    }
    (true, format!("{} report files byte-identical across two runs", names.len()))
}

fn main() {
    let cfg = Config::default();
    let ctx = Ctx::new(&cfg);
    let mut all = true;
    for c in criteria() {
        let t = Instant::now();
        let mut rows = Vec::new();
        let mut error = None;
        for part in &c.parts {
            match part(ctx) {
                Ok(r) => rows.extend(r),
                Err(e) => error = Some(e.to_string()),
            }
        }
        let elapsed = t.elapsed();
        let in_time = elapsed < c.limit;
        let pass = error.is_none() && in_time && !rows.is_empty() && rows.iter().all(|r| r.pass);
        all &= pass;
        let detail = format!("{:.2} s (limit {} s)", elapsed.as_secs_f64(), c.limit.as_secs());
        line(pass, c.num, c.name, &detail);
        for r in &rows {
            println!(
                "       {} {:<36} value {:.3e} tolerance {:.1e}",
                if r.pass { "ok  " } else { "FAIL" },
                r.check_id,
                r.value,
                r.tolerance
            );
        }
        if let Some(e) = error {
            println!("       error: {e}");
        }
    }
    let t = Instant::now();
    match suites::relconv::left_regular_composition(8) {
        Ok(v) => println!(
            "INFO    composition through left fields on an 8^3 grid: relative residual {v:.3e} ({:.1} s)",
            t.elapsed().as_secs_f64()
        ),
        Err(e) => println!("INFO    composition through left fields on an 8^3 grid failed: {e}"),
    }
    let (pass, detail) = determinism(env!("CARGO_BIN_EXE_liecv"));
    all &= pass;
    line(pass, 15, "Determinism", &detail);
    if !all {
        std::process::exit(1);
    }
}
