use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use liecv_cli::suites::{self, Ctx};
use liecv_cli::{demo, report, Check, Config};
use liecv_core::coherent::bergman_reproduce;
use liecv_core::linop::frame_operators;
use liecv_core::dirac::SweepRow;
use liecv_core::quantize::{close_under_bracket, parse_gens, realize, QuantMode};
use liecv_core::relconv::{assemble, assemble_hat, Quadrature};
use liecv_core::{bch_compose, weyl_quantize, FrameSpec, GridFunction, LieAlgebra};
use num_complex::Complex64 as C64;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "liecv", version, about = "Relative convolutions on nilpotent Lie groups: checks, tools and demos")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compose two points in exponential coordinates.
    Bch {
        /// Algebra JSON file, or a built-in name: h<n>, abelian<n>, ax+b.
        #[arg(long, default_value = "h1")]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Assemble a relative convolution and apply it, or run residual checks.
    Relconv {
        /// JSON list of frame specs acting on the grid of --apply.
        #[arg(long, required_unless_present = "verify")]
        frame: Option<PathBuf>,
        /// Kernel samples (GridFunction CSV) over the algebra.
        #[arg(long, required_unless_present = "verify")]
        kernel: Option<PathBuf>,
        #[arg(long, required_unless_present = "verify")]
        apply: Option<PathBuf>,
        /// The kernel file already holds flow-side samples.
        #[arg(long)]
        hat: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with_all = ["frame", "kernel", "apply"])]
        verify: Option<RelconvCheck>,
    },
    /// Weyl-quantize a symbol and apply it, or print the calibration table.
    Weyl {
        #[arg(long, required_unless_present = "verify")]
        symbol: Option<PathBuf>,
        #[arg(long, required_unless_present = "verify")]
        apply: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["symbol", "apply"])]
        verify: bool,
    },
    /// Residual tables for a coherent-state system.
    Coherent {
        #[arg(long, value_enum)]
        system: System,
        #[arg(long, required = true)]
        verify: bool,
    },
    /// Evaluate a Bergman projection at one point of the unit disk.
    Bergman {
        /// Samples on the polar (r, theta) disk grid.
        #[arg(long)]
        eval: PathBuf,
        /// Point as "re,im", |zeta| <= 0.8.
        #[arg(long, allow_hyphen_values = true)]
        zeta: String,
    },
    /// Residual halving table for the synthesized Dirac solution.
    Dirac {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, required = true)]
        residual_sweep: bool,
        /// Random commuting self-adjoint generators instead of a Clifford model.
        #[arg(long)]
        commuting: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Close polynomial observables under the Poisson bracket and realize them.
    Quantize {
        #[arg(long)]
        gens: String,
        #[arg(long, default_value = "pdo")]
        mode: String,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 16)]
        max_dim: usize,
    },
    /// Run a verification suite and write report/<suite>.csv.
    #[command(name = "run-suite", alias = "run_suite")]
    RunSuite {
        /// all, bch, relconv, weyl, coherent, dirac or quantize.
        name: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Write demo inputs, outputs and a plot-ready table.
    Demo {
        /// bargmann, wavelet, dirac or quantize.
        name: String,
        #[arg(long, default_value = "demo")]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelconvCheck {
    Composition,
    Decomposition,
    Automorphism,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Bargmann,
    Wavelet,
    Gabor,
}

/// Failure classes mapped to exit codes.
enum Fail {
    Checks,
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Fail {
    fn from(e: anyhow::Error) -> Self {
        Fail::Runtime(e)
    }
}

fn usage<T>(r: Result<T>) -> std::result::Result<T, Fail> {
    r.map_err(Fail::Usage)
}

fn parse_vec(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(|t| t.trim().parse::<f64>().map_err(|_| anyhow!("cannot read number '{t}' in '{s}'"))).collect()
}

fn builtin_algebra(name: &str) -> Option<LieAlgebra> {
    if name == "ax+b" {
        return Some(LieAlgebra::ax_plus_b());
    }
    let (kind, n) = if let Some(n) = name.strip_prefix("abelian") {
        ("abelian", n)
    } else {
        ("h", name.strip_prefix('h')?)
    };
    let n: usize = n.parse().ok().filter(|n| *n >= 1)?;
    Some(if kind == "h" { LieAlgebra::heisenberg(n) } else { LieAlgebra::abelian(n) })
}

fn read_grid_function(path: &Path) -> Result<GridFunction> {
    let f = std::fs::File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    GridFunction::read_csv(f).with_context(|| format!("reading {}", path.display()))
}

fn write_grid_function(f: &GridFunction, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => f.write_csv(std::fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?)?,
        None => f.write_csv(std::io::stdout().lock())?,
    }
    Ok(())
}

fn print_checks(checks: &[Check]) -> std::result::Result<(), Fail> {
    report::write_checks(std::io::stdout().lock(), checks).map_err(|e| Fail::Runtime(e.into()))?;
    if checks.iter().all(|c| c.pass) {
        Ok(())
    } else {
        Err(Fail::Checks)
    }
}

// a closed pipe on stdout is not an error worth a panic
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

fn run(cmd: Cmd) -> std::result::Result<(), Fail> {
    match cmd {
        Cmd::Bch { algebra, x, y, order } => {
            let alg = match builtin_algebra(&algebra) {
                Some(a) => a,
                None => {
                    let text = usage(std::fs::read_to_string(&algebra).with_context(|| format!("cannot read {algebra}")))?;
                    usage(LieAlgebra::from_json(&text).map_err(Into::into))?
                }
            };
            let (x, y) = (usage(parse_vec(&x))?, usage(parse_vec(&y))?);
            let r = usage(bch_compose(&alg, &x, &y, order).map_err(Into::into))?;
            if r.truncated {
                eprintln!("warning: series truncated at order {order}; the algebra is not nilpotent of that step");
            }
            let row: Vec<String> = r.point.iter().map(|v| format!("{v:.17e}")).collect();
            out!("{}", row.join(","));
        }
        Cmd::Relconv { frame, kernel, apply, hat, out, verify } => {
            if let Some(v) = verify {
                let cfg = Config::default();
                let ctx = Ctx::new(&cfg);
                let checks = match v {
                    RelconvCheck::Composition => suites::relconv::composition(ctx),
                    RelconvCheck::Decomposition => suites::relconv::decomposition(ctx),
                    RelconvCheck::Automorphism => suites::relconv::covariance(ctx),
                }
                .map_err(|e| Fail::Runtime(e.into()))?;
                return print_checks(&checks);
            }
            let (frame, kernel, apply) = (frame.unwrap(), kernel.unwrap(), apply.unwrap());
            let text = usage(std::fs::read_to_string(&frame).with_context(|| format!("cannot read {}", frame.display())))?;
            let specs: Vec<FrameSpec> = usage(
                serde_json::from_str(&text)
                    .map_err(|e| anyhow!("frame spec at line {}, column {}: {e}", e.line(), e.column())),
            )?;
            let k = usage(read_grid_function(&kernel))?;
            let f = usage(read_grid_function(&apply))?;
            let ops = usage(frame_operators(&specs, &f.grid).map_err(Into::into))?;
            let q = Quadrature::default();
            let a = if hat { assemble_hat(&ops, &k, &q) } else { assemble(&ops, &k, &q) }.map_err(anyhow::Error::from)?;
            if a.truncated {
                eprintln!("warning: kernel does not decay at the grid boundary (ratio {:.3e})", a.boundary_ratio);
            }
            write_grid_function(&a.op.apply(&f).map_err(anyhow::Error::from)?, out.as_deref())?;
        }
        Cmd::Weyl { symbol, apply, out, verify } => {
            if verify {
                let cfg = Config::default();
                let ctx = Ctx::new(&cfg);
                let mut checks = suites::weyl::gaussian_symbols(ctx).map_err(|e| Fail::Runtime(e.into()))?;
                checks.extend(suites::weyl::low_order(ctx).map_err(|e| Fail::Runtime(e.into()))?);
                out!("# calibration constant {:.12e}", liecv_core::weyl::WEYL_CONSTANT);
                return print_checks(&checks);
            }
            let a = usage(read_grid_function(&symbol.unwrap()))?;
            let u = usage(read_grid_function(&apply.unwrap()))?;
            let w = usage(weyl_quantize(&a, &u.grid).map_err(Into::into))?;
            if w.truncated {
                eprintln!("warning: symbol does not decay at the grid boundary (ratio {:.3e})", w.boundary_ratio);
            }
            write_grid_function(&w.op.apply(&u).map_err(anyhow::Error::from)?, out.as_deref())?;
        }
        Cmd::Coherent { system, verify: _ } => {
            let cfg = Config::default();
            let ctx = Ctx::new(&cfg);
            let parts = match system {
                System::Bargmann => vec![
                    suites::coherent::vacuum(ctx),
                    suites::coherent::bargmann_kernel(ctx),
                    suites::coherent::projector(ctx),
                ],
                System::Wavelet => vec![suites::coherent::wavelet(ctx)],
                System::Gabor => vec![suites::coherent::gabor(ctx)],
            };
            let mut checks = Vec::new();
            for p in parts {
                checks.extend(p.map_err(|e| Fail::Runtime(e.into()))?);
            }
            return print_checks(&checks);
        }
        Cmd::Bergman { eval, zeta } => {
            let f = usage(read_grid_function(&eval))?;
            let z = usage(parse_vec(&zeta))?;
            if z.len() != 2 {
                return Err(Fail::Usage(anyhow!("--zeta takes 're,im'")));
            }
            let v = usage(bergman_reproduce(&f, C64::new(z[0], z[1])).map_err(Into::into))?;
            out!("re,im\n{:.12e},{:.12e}", v.re, v.im);
        }
        Cmd::Dirac { n, residual_sweep: _, commuting, seed } => {
            if !(1..=4).contains(&n) {
                return Err(Fail::Usage(anyhow!("--n must be between 1 and 4")));
            }
            let rows: Vec<SweepRow> = suites::dirac::sweep(n, commuting, false, seed).map_err(anyhow::Error::from)?;
            let mut out = std::io::stdout().lock();
            writeln!(out, "h,residual,ratio").map_err(anyhow::Error::from)?;
            for r in rows {
                let ratio = r.ratio.map(|q| format!("{q:.6e}")).unwrap_or_default();
                writeln!(out, "{:.6e},{:.6e},{ratio}", r.h, r.residual).map_err(anyhow::Error::from)?;
            }
        }
        Cmd::Quantize { gens, mode, hbar, max_dim } => {
            let mode: QuantMode = usage(mode.parse().map_err(anyhow::Error::from))?;
            let g = usage(parse_gens(&gens).map_err(Into::into))?;
            let c = close_under_bracket(&g, max_dim).map_err(anyhow::Error::from)?;
            let frames = usage(realize(&c.algebra, mode, hbar).map_err(Into::into))?;
            let algebra: serde_json::Value = serde_json::from_str(&c.algebra.to_json()).map_err(anyhow::Error::from)?;
            let doc = serde_json::json!({ "algebra": algebra, "frames": frames });
            out!("{}", serde_json::to_string_pretty(&doc).map_err(anyhow::Error::from)?);
        }
        Cmd::RunSuite { name, config } => {
            let cfg = match config {
                Some(p) => usage(Config::load(&p).map_err(Into::into))?,
                None => Config::default(),
            };
            return run_suite(&name, &cfg);
        }
        Cmd::Demo { name, out, n } => {
            if !demo::DEMOS.contains(&name.as_str()) {
                return Err(Fail::Usage(anyhow!("unknown demo '{name}' (expected one of {})", demo::DEMOS.join(", "))));
            }
            for p in demo::run(&name, &out, n)? {
                out!("{}", p.display());
            }
        }
    }
    Ok(())
}

fn run_suite(name: &str, cfg: &Config) -> std::result::Result<(), Fail> {
    let results: Vec<(&str, Vec<Check>)> = if name == "all" {
        suites::run_all(cfg)
    } else {
        let Some(rows) = suites::run_rows(name, cfg) else {
            return Err(Fail::Usage(anyhow!("unknown suite '{name}' (expected all, {})", suites::SUITES.join(", "))));
        };
        vec![(suites::SUITES.iter().find(|s| **s == name).unwrap(), rows)]
    };
    let dir = report::report_dir();
    let mut failed = Vec::new();
    for (suite, rows) in &results {
        let path = report::write_report(&dir, suite, rows).map_err(|e| Fail::Runtime(e.into()))?;
        let passed = rows.iter().filter(|c| c.pass).count();
        out!("{suite}: {passed}/{} passed -> {}", rows.len(), path.display());
        failed.extend(rows.iter().filter(|c| !c.pass));
    }
    for c in &failed {
        out!("FAIL {} value {:.6e} tolerance {:.6e}", c.check_id, c.value, c.tolerance);
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Fail::Checks)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Checks) => ExitCode::from(1),
        Err(Fail::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Fail::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
