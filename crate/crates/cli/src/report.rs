//! Check rows and their CSV form.

use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub check_id: String,
    /// Short name of the claim being checked.
    pub anchor: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(check_id: &str, anchor: &str, value: f64, tolerance: f64) -> Self {
        // NaN never passes
        let pass = value <= tolerance;
        Check { check_id: check_id.into(), anchor: anchor.into(), value, tolerance, pass }
    }
}

pub const COLUMNS: [&str; 5] = ["check_id", "anchor", "value", "tolerance", "pass"];

pub fn write_checks<W: Write>(w: W, checks: &[Check]) -> csv::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(COLUMNS)?;
    for c in checks {
        wr.write_record([
            c.check_id.clone(),
            c.anchor.clone(),
            format!("{:.6e}", c.value),
            format!("{:.6e}", c.tolerance),
            c.pass.to_string(),
        ])?;
    }
    wr.flush()?;
    Ok(())
}

/// `LIECV_REPORT_DIR` if set, else `report`.
pub fn report_dir() -> PathBuf {
    std::env::var_os("LIECV_REPORT_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("report"))
}

pub fn write_report(dir: &Path, suite: &str, checks: &[Check]) -> std::io::Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{suite}.csv"));
    let file = std::fs::File::create(&path)?;
    write_checks(std::io::BufWriter::new(file), checks).map_err(std::io::Error::other)?;
    Ok(path)
}
