use super::Ctx;
use crate::report::Check;
use liecv_core::linop::{frame_operator, probe_relative, smooth_probes_width};
use liecv_core::weyl::{weyl_equals_relconv, weyl_quantize, xi_taper};
use liecv_core::{Axis, FrameSpec, Grid, GridFunction, LinOp, Result};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Weyl quantization against the relative convolution on `(M_y, momentum)`.
pub fn gaussian_symbols(ctx: Ctx) -> Result<Vec<Check>> {
    let ax = Axis::new(64, -10.0, 10.0);
    let g = Grid::new(vec![ax, ax])?;
    let gauss = GridFunction::from_real_fn(g.clone(), |p| (-(p[0] * p[0] + p[1] * p[1]) / 2.0).exp());
    let mixed = GridFunction::from_real_fn(g, |p| p[0] * p[1] * (-(p[0] * p[0] + p[1] * p[1]) / 2.0).exp());
    let r1 = weyl_equals_relconv(&gauss)?;
    let r2 = weyl_equals_relconv(&mixed)?;
    Ok(vec![
        ctx.check("weyl.gaussian", "weyl-equals-relative-convolution", r1.relative, 1e-3),
        ctx.check("weyl.mixed", "weyl-equals-relative-convolution", r2.relative, 1e-3),
        ctx.check("weyl.calibration", "weyl-constant", (r1.calibration * 2.0 * PI - 1.0).abs(), 1e-6),
    ])
}

fn tapered(f: impl Fn(f64, f64) -> f64) -> Result<(Grid, GridFunction)> {
    let x = Axis::new(256, -40.0, 40.0);
    let xi = Axis::new(256, -10.0, 10.0);
    let t = xi_taper(&xi, 0.5);
    let tx = xi_taper(&x, 0.4);
    let g = Grid::with_cap(vec![x, xi], usize::MAX)?;
    let values = (0..g.len())
        .map(|i| {
            let p = g.point(i);
            C64::new(f(p[0], p[1]) * t[i % 256] * tx[i / 256], 0.0)
        })
        .collect();
    Ok((Grid::new(vec![x])?, GridFunction { grid: g, values }))
}

/// `Op(1) = I`, `Op(x) = M_x`, `Op(xi) = (1/i) d/dx` on tapered vectors.
pub fn low_order(ctx: Ctx) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let cases: [(&str, fn(f64, f64) -> f64); 3] = [("one", |_, _| 1.0), ("x", |x, _| x), ("xi", |_, xi| xi)];
    for (name, f) in cases {
        let (space, sym) = tapered(f)?;
        let want = match name {
            "one" => LinOp::identity(space.len()),
            "x" => frame_operator(&FrameSpec::Multiplication { axis: 0, scale: 1.0 }, &space)?,
            _ => frame_operator(&FrameSpec::Momentum { axis: 0, scale: 1.0 }, &space)?,
        };
        let w = weyl_quantize(&sym, &space)?;
        let q = smooth_probes_width(&space, 6, ctx.cfg.seed, 0.03);
        let err = probe_relative(w.op.matrix(), want.matrix(), &q);
        out.push(ctx.check(&format!("weyl.op_{name}"), "weyl-low-order-symbols", err, 1e-6));
    }
    Ok(out)
}
