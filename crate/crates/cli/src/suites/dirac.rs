use super::Ctx;
use crate::report::Check;
use liecv_core::dirac::{
    clifford_generators, commuting_generators, commuting_mass, gaussian_fhat, residual_sweep, Solution, SweepRow,
};
use liecv_core::Result;

pub fn sample_points(n: usize) -> Vec<Vec<f64>> {
    let base = [0.35, -0.2, 0.4, 0.1, -0.3];
    vec![
        (0..=n).map(|k| base[k]).collect(),
        (0..=n).map(|k| if k == 0 { -0.25 } else { 0.5 * base[(k + 1) % 5] }).collect(),
    ]
}

pub fn sweep(n: usize, commuting: bool, mass: bool, seed: u64) -> Result<Vec<SweepRow>> {
    let rep = if commuting { commuting_generators(n, 3, seed)? } else { clifford_generators(n)? };
    let m = if mass { Some(commuting_mass(&rep, seed.wrapping_add(7))?) } else { None };
    let fhat = gaussian_fhat(n, 24, 7.0, 1.0, &[0.4, -0.3, 0.2][..n])?;
    let sol = Solution::new(&rep, &fhat, m.as_ref())?;
    residual_sweep(&sol, &sample_points(n), 0.1, 3)
}

/// Largest distance of a halving ratio from 4.
pub fn ratio_spread(rows: &[SweepRow]) -> f64 {
    rows.iter().filter_map(|r| r.ratio).map(|q| (q - 4.0).abs()).fold(0.0, f64::max)
}

/// Central-difference residual of the synthesized solution falls by 4 when
/// the step halves.
pub fn residual_law(ctx: Ctx) -> Result<Vec<Check>> {
    let seed = ctx.cfg.seed;
    let cases = [
        ("dirac.clifford_n2", 2, false, false),
        ("dirac.clifford_n3", 3, false, false),
        ("dirac.commuting_n2", 2, true, false),
        ("dirac.commuting_mass_n2", 2, true, true),
    ];
    let mut out = Vec::new();
    for (id, n, commuting, mass) in cases {
        out.push(ctx.check(id, "dirac-equation", ratio_spread(&sweep(n, commuting, mass, seed)?), 0.5));
    }
    let anti = (1..=4).map(|n| clifford_generators(n).map(|r| r.anticommutation_residual())).collect::<Result<Vec<_>>>()?;
    out.push(ctx.check("dirac.anticommutation", "clifford-relations", anti.into_iter().fold(0.0, f64::max), 1e-12));
    Ok(out)
}
