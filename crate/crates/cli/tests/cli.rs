use liecv_core::linop::frame_operators;
use liecv_core::relconv::{assemble, Quadrature};
use liecv_core::{Axis, FrameSpec, Grid, GridFunction};
use std::path::Path;
use std::process::{Command, Output};

fn liecv(args: &[&str], report: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_liecv"));
    c.args(args);
    if let Some(d) = report {
        c.env("LIECV_REPORT_DIR", d);
    }
    c.output().expect("spawn liecv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn save(f: &GridFunction, path: &Path) {
    f.write_csv(std::fs::File::create(path).unwrap()).unwrap();
}

#[test]
fn bch_prints_composed_point() {
    let o = liecv(&["bch", "--x", "1,2,3", "--y", "-1,0.5,2"], None);
    assert!(o.status.success());
    let v: Vec<f64> = stdout(&o).trim().split(',').map(|t| t.parse().unwrap()).collect();
    // x0 + y0 + (x1 y2 - x2 y1) / 2
    assert_eq!(v, vec![1.25, 2.5, 5.0]);
    assert_eq!(liecv(&["bch", "--algebra", "h2", "--x", "1,2", "--y", "1,2"], None).status.code(), Some(2));
}

#[test]
fn unknown_suite_and_bad_config_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(liecv(&["run-suite", "nope"], Some(dir.path())).status.code(), Some(2));
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\n  \"seed\": 1,\n  \"oops\": 2\n}\n").unwrap();
    let o = liecv(&["run-suite", "bch", "--config", cfg.to_str().unwrap()], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(liecv(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn suite_writes_report_and_fails_on_tight_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let o = liecv(&["run_suite", "quantize"], Some(dir.path()));
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(dir.path().join("quantize.csv")).unwrap();
    assert!(text.starts_with("check_id,anchor,value,tolerance,pass\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));

    let cfg = dir.path().join("tight.json");
    std::fs::write(&cfg, r#"{"tolerance": 1e-20}"#).unwrap();
    let o = liecv(&["run-suite", "quantize", "--config", cfg.to_str().unwrap()], Some(dir.path()));
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL quantize.pdo_central_element"));
}

#[test]
fn coherent_suite_reports_vacuum_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("light.json");
    std::fs::write(&cfg, r#"{"profile": "light"}"#).unwrap();
    let o = liecv(&["run-suite", "coherent", "--config", cfg.to_str().unwrap()], Some(dir.path()));
    assert!(o.status.success(), "{}", stdout(&o));
    let text = std::fs::read_to_string(dir.path().join("coherent.csv")).unwrap();
    let row = text.lines().find(|l| l.contains("bargmann-vacuum-autocorrelation")).unwrap();
    let value: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!(value <= 1e-6);
}

#[test]
fn relconv_applies_kernel_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = Grid::new(vec![Axis::new(64, -8.0, 8.0)]).unwrap();
    let f = GridFunction::from_real_fn(g.clone(), |y| (-(y[0] - 0.5).powi(2) / 3.0).exp());
    let k = GridFunction::from_real_fn(g.clone(), |y| (-y[0] * y[0]).exp());
    let specs = vec![FrameSpec::Momentum { axis: 0, scale: 1.0 }];
    std::fs::write(dir.path().join("frame.json"), serde_json::to_string(&specs).unwrap()).unwrap();
    save(&f, &dir.path().join("f.csv"));
    save(&k, &dir.path().join("k.csv"));
    let out = dir.path().join("out.csv");
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let o = liecv(
        &["relconv", "--frame", &p("frame.json"), "--kernel", &p("k.csv"), "--apply", &p("f.csv"), "--out", &p("out.csv")],
        None,
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let got = GridFunction::read_csv(std::fs::File::open(out).unwrap()).unwrap();
    let ops = frame_operators(&specs, &g).unwrap();
    let want = assemble(&ops, &k, &Quadrature::default()).unwrap().op.apply(&f).unwrap();
    let d = got.values.iter().zip(&want.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(d <= 1e-12 * want.max_abs());
}

#[test]
fn weyl_and_bergman_read_files() {
    let dir = tempfile::tempdir().unwrap();
    let ax = Axis::new(32, -8.0, 8.0);
    let sym = GridFunction::from_real_fn(Grid::new(vec![ax, ax]).unwrap(), |p| (-(p[0] * p[0] + p[1] * p[1]) / 2.0).exp());
    let u = GridFunction::from_real_fn(Grid::new(vec![ax]).unwrap(), |x| (-x[0] * x[0]).exp());
    save(&sym, &dir.path().join("a.csv"));
    save(&u, &dir.path().join("u.csv"));
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let o = liecv(&["weyl", "--symbol", &p("a.csv"), "--apply", &p("u.csv")], None);
    assert!(o.status.success());
    let back = GridFunction::read_csv(&o.stdout[..]).unwrap();
    assert_eq!(back.values.len(), 32);

    let disk = liecv_core::coherent::disk_grid(64, 64).unwrap();
    let f = GridFunction::from_fn(disk, |q| num_complex::Complex64::from_polar(q[0].powi(2), 2.0 * q[1]));
    save(&f, &dir.path().join("disk.csv"));
    let o = liecv(&["bergman", "--eval", &p("disk.csv"), "--zeta", "0.3,-0.2"], None);
    assert!(o.status.success());
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let v: Vec<f64> = line.split(',').map(|t| t.parse().unwrap()).collect();
    // (0.3 - 0.2i)^2 = 0.05 - 0.12i
    assert!((v[0] - 0.05).abs() < 1e-2 && (v[1] + 0.12).abs() < 1e-2, "{v:?}");
    assert_eq!(liecv(&["bergman", "--eval", &p("disk.csv"), "--zeta", "0.9,0"], None).status.code(), Some(2));
}

#[test]
fn dirac_sweep_table() {
    let o = liecv(&["dirac", "--n", "2", "--residual-sweep"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h,residual,ratio"));
    let ratios: Vec<f64> = lines.filter_map(|l| l.split(',').nth(2).filter(|s| !s.is_empty()).map(|s| s.parse().unwrap())).collect();
    assert_eq!(ratios.len(), 2);
    assert!(ratios.iter().all(|q| (3.5..=4.5).contains(q)));
}

#[test]
fn quantize_emits_algebra_and_frames() {
    let o = liecv(&["quantize", "--gens", "q,p", "--mode", "pdo", "--hbar", "0.5"], None);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"]["dim"], 3);
    assert_eq!(v["frames"][0]["kind"], "identity");
    assert_eq!(v["frames"][0]["scalar"], -0.5);
    assert_eq!(liecv(&["quantize", "--gens", "q^2,p^2,q*p"], None).status.code(), Some(2));
    assert_eq!(liecv(&["quantize", "--gens", "q^3,p^2", "--max-dim", "10"], None).status.code(), Some(1));
}

#[test]
fn demos_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["bargmann", "wavelet", "dirac", "quantize"] {
        let o = liecv(&["demo", name, "--out", dir.path().to_str().unwrap()], None);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        for line in stdout(&o).lines() {
            assert!(Path::new(line).exists(), "{line}");
        }
    }
    // the vacuum autocorrelation peaks at the identity
    let text = std::fs::read_to_string(dir.path().join("bargmann_table.csv")).unwrap();
    let rows: Vec<Vec<f64>> =
        text.lines().skip(1).map(|l| l.split(',').map(|t| t.parse().unwrap()).collect()).collect();
    let top = rows.iter().max_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    assert!(top[0].abs() < 1e-12 && top[1].abs() < 1e-12);
    assert!((top[2] - 1.0).abs() < 1e-10);

    let blocked = dir.path().join("file");
    std::fs::write(&blocked, "x").unwrap();
    let o = liecv(&["demo", "wavelet", "--out", blocked.join("sub").to_str().unwrap()], None);
    assert!(!o.status.success());
    assert_eq!(liecv(&["demo", "nope"], None).status.code(), Some(2));
}
