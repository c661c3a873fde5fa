//! Small end-to-end runs that write inputs, outputs and a plot-ready table.

use crate::suites::{coherent::bargmann_system, dirac::sweep};
use anyhow::{Context, Result};
use liecv_core::coherent::{wavelet_transform, Wavelet};
use liecv_core::quantize::{close_under_bracket, parse_gens, realize, QuantMode};
use liecv_core::{Axis, Grid, GridFunction};
use num_complex::Complex64 as C64;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const DEMOS: [&str; 4] = ["bargmann", "wavelet", "dirac", "quantize"];

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    let f = File::create(&path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn save(dir: &Path, name: &str, f: &GridFunction) -> Result<PathBuf> {
    f.write_csv(create(dir, name)?)?;
    Ok(dir.join(name))
}

fn table(dir: &Path, name: &str, head: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> Result<PathBuf> {
    let mut w = csv::Writer::from_writer(create(dir, name)?);
    w.write_record(head)?;
    for r in rows {
        w.write_record(r.iter().map(|v| format!("{v:.6e}")))?;
    }
    w.flush()?;
    Ok(dir.join(name))
}

/// Writes the files for demo `name` into `out`, returning their paths.
pub fn run(name: &str, out: &Path, n: usize) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    match name {
        "bargmann" => bargmann(out),
        "wavelet" => wavelet(out),
        "dirac" => dirac(out, n),
        "quantize" => quantize(out),
        _ => anyhow::bail!("unknown demo '{name}' (expected one of {})", DEMOS.join(", ")),
    }
}

fn bargmann(out: &Path) -> Result<Vec<PathBuf>> {
    let sys = bargmann_system(33, 4.0, 2)?;
    let e = sys.embed(&sys.vacuum)?;
    let c = sys.group_grid.counts();
    // the t = 0 slice
    let plane = c[1] * c[2];
    let t0 = sys.group_grid.axes()[0].points().iter().position(|t| t.abs() < 1e-12).unwrap_or(0);
    let rows = (0..plane).map(|k| {
        let g = sys.group_grid.point(t0 * plane + k);
        vec![g[1], g[2], e.values[t0 * plane + k].norm()]
    });
    Ok(vec![
        save(out, "bargmann_input.csv", &sys.vacuum)?,
        save(out, "bargmann_embed.csv", &e)?,
        table(out, "bargmann_table.csv", &["q", "p", "abs_embed"], rows)?,
    ])
}

fn wavelet(out: &Path) -> Result<Vec<PathBuf>> {
    let sg = Grid::new(vec![Axis::new(1024, -40.0, 40.0)])?;
    // two linear chirps under Gaussian envelopes
    let f = GridFunction::from_fn(sg, |y| {
        let y = y[0];
        let a = C64::from_polar((-(y + 12.0).powi(2) / 40.0).exp(), 0.8 * y + 0.05 * y * y);
        let b = C64::from_polar((-(y - 12.0).powi(2) / 40.0).exp(), 2.5 * y - 0.04 * y * y);
        a + b
    });
    let ab = Grid::with_cap(vec![Axis::new(161, -40.0, 40.0), Axis::new(41, -1.0, 3.0)], usize::MAX)?;
    let wt = wavelet_transform(&f, &Wavelet::Morlet { omega0: 5.0 }, &ab)?;
    let rows = (0..ab.len()).map(|i| {
        let p = ab.point(i);
        vec![p[0], p[1], wt.values[i].norm()]
    });
    Ok(vec![
        save(out, "wavelet_input.csv", &f)?,
        save(out, "wavelet_transform.csv", &wt)?,
        table(out, "wavelet_scalogram.csv", &["x1", "x2", "abs_transform"], rows)?,
    ])
}

fn dirac(out: &Path, n: usize) -> Result<Vec<PathBuf>> {
    let rows = sweep(n, false, false, 1)?;
    let t = rows.iter().map(|r| vec![r.h, r.residual, r.ratio.unwrap_or(f64::NAN)]);
    Ok(vec![table(out, &format!("dirac_n{n}_sweep.csv"), &["h", "residual", "ratio"], t)?])
}

fn quantize(out: &Path) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for (name, gens) in [("heisenberg", "q, p"), ("quadratic", "q^2, p^2, q*p")] {
        let c = close_under_bracket(&parse_gens(gens)?, 10)?;
        let path = out.join(format!("quantize_{name}.json"));
        let mut w = create(out, &format!("quantize_{name}.json"))?;
        let basis: Vec<String> = c.basis.iter().map(|b| b.to_string()).collect();
        let frames = realize(&c.algebra, QuantMode::Pdo, 1.0).ok();
        let doc = serde_json::json!({
            "generators": gens,
            "basis": basis,
            "algebra": serde_json::from_str::<serde_json::Value>(&c.algebra.to_json())?,
            "pdo_frames": frames,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        paths.push(path);
    }
    Ok(paths)
}
