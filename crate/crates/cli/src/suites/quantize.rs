use super::Ctx;
use crate::report::Check;
use liecv_core::linop::{frame_operators, smooth_probes_width};
use liecv_core::quantize::{close_under_bracket, closure_residual, parse_gens, realize, PolyObservable, QuantMode};
use liecv_core::{Axis, Error, Grid, LieAlgebra, Result};
use num_complex::Complex64 as C64;

fn mono(e: [u32; 2]) -> PolyObservable {
    PolyObservable::monomial(1, e.to_vec(), 1.0).expect("two exponents")
}

/// `{q, p}` closes to h1 and `{q^2, p^2, qp}` to the sl2 pattern, both with
/// integer structure constants reproduced exactly.
pub fn closure(ctx: Ctx) -> Result<Vec<Check>> {
    let c = close_under_bracket(&parse_gens("q, p")?, 10)?;
    let h1 = LieAlgebra::heisenberg(1);
    let exact =
        if c.basis.len() == 3 { c.algebra.structure().iter().zip(h1.structure()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) } else { f64::INFINITY };

    let s = close_under_bracket(&parse_gens("q^2, p^2, q*p")?, 10)?;
    let at = |e| s.basis.iter().position(|b| *b == mono(e));
    let sl2 = match (at([2, 0]), at([0, 2]), at([1, 1])) {
        (Some(qq), Some(pp), Some(qp)) if s.basis.len() == 3 => {
            let k = |i, j, l| s.algebra.constant(i, j, l);
            [(k(qq, pp, qp), 4.0), (k(qp, qq, qq), -2.0), (k(qp, pp, pp), 2.0)]
                .iter()
                .map(|(a, b): &(f64, f64)| (a - b).abs())
                .fold(0.0, f64::max)
        }
        _ => f64::INFINITY,
    };
    let residual = closure_residual(&s.algebra, &s.basis).max(closure_residual(&c.algebra, &c.basis));
    let grows = match close_under_bracket(&parse_gens("q^3, p^2")?, 10) {
        Err(Error::Growth { .. }) => 0.0,
        _ => 1.0,
    };
    Ok(vec![
        ctx.check("quantize.heisenberg", "poisson-relations", exact, 0.0),
        ctx.check("quantize.quadratic_brackets", "poisson-closure", sl2, 0.0),
        ctx.check("quantize.closure_residual", "poisson-closure", residual, 1e-10),
        ctx.check("quantize.growth_reported", "poisson-closure", grows, 0.0),
    ])
}

/// `i[X_q, X_p]` against the realized central element in the pdo mode.
pub fn realization(ctx: Ctx) -> Result<Vec<Check>> {
    let h = close_under_bracket(&parse_gens("q, p")?, 10)?.algebra;
    let g = Grid::new(vec![Axis::new(96, -12.0, 12.0)])?;
    let probes = smooth_probes_width(&g, 6, ctx.cfg.seed, 0.12);
    let mut worst = 0.0f64;
    for hbar in [0.5, 1.0, 2.0] {
        let x = frame_operators(&realize(&h, QuantMode::Pdo, hbar)?, &g)?;
        let lhs = x[0].matrix() * &probes;
        let comm = x[1].matrix() * (x[2].matrix() * &probes) - x[2].matrix() * (x[1].matrix() * &probes);
        worst = worst.max((&lhs - comm * C64::new(0.0, 1.0)).norm() / lhs.norm());
    }
    Ok(vec![ctx.check("quantize.pdo_central_element", "quantization-realization", worst, 1e-6)])
}
