//! Verification suites. Each function returns finished check rows; the
//! acceptance harness calls them one criterion at a time.

pub mod bch;
pub mod coherent;
pub mod dirac;
pub mod quantize;
pub mod relconv;
pub mod weyl;

use crate::config::Config;
use crate::report::Check;
use liecv_core::Result;

pub const SUITES: [&str; 6] = ["bch", "relconv", "weyl", "coherent", "dirac", "quantize"];

#[derive(Clone, Copy)]
pub struct Ctx<'a> {
    pub cfg: &'a Config,
}

impl<'a> Ctx<'a> {
    pub fn new(cfg: &'a Config) -> Self {
        Ctx { cfg }
    }

    pub fn check(&self, id: &str, anchor: &str, value: f64, default_tol: f64) -> Check {
        Check::new(id, anchor, value, self.cfg.tolerance_for(id, default_tol))
    }
}

fn collect(parts: Vec<Result<Vec<Check>>>) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

pub fn run(name: &str, cfg: &Config) -> Option<Result<Vec<Check>>> {
    let ctx = Ctx::new(cfg);
    let r = match name {
        "bch" => collect(vec![bch::oracle(ctx), bch::properties(ctx)]),
        "relconv" => collect(vec![
            relconv::euclidean(ctx),
            relconv::multiplication(ctx),
            relconv::composition(ctx),
            relconv::decomposition(ctx),
            relconv::covariance(ctx),
        ]),
        "weyl" => collect(vec![weyl::gaussian_symbols(ctx), weyl::low_order(ctx)]),
        "coherent" => collect(vec![
            coherent::vacuum(ctx),
            coherent::bargmann_kernel(ctx),
            coherent::bergman(ctx),
            coherent::projector(ctx),
            coherent::wavelet(ctx),
            coherent::gabor(ctx),
        ]),
        "dirac" => dirac::residual_law(ctx),
        "quantize" => collect(vec![quantize::closure(ctx), quantize::realization(ctx)]),
        _ => return None,
    };
    Some(r)
}

/// Runs one suite, turning a computation error into a failing row so the
/// report still names it.
pub fn run_rows(name: &str, cfg: &Config) -> Option<Vec<Check>> {
    run(name, cfg).map(|r| {
        r.unwrap_or_else(|e| {
            eprintln!("{name}: {e}");
            vec![Check::new(&format!("{name}.error"), "computation", f64::NAN, 0.0)]
        })
    })
}

/// All suites on separate threads, returned in `SUITES` order.
pub fn run_all(cfg: &Config) -> Vec<(&'static str, Vec<Check>)> {
    std::thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|&n| (n, s.spawn(move || run_rows(n, cfg).unwrap()))).collect();
        handles.into_iter().map(|(n, h)| (n, h.join().expect("suite thread panicked"))).collect()
    })
}
