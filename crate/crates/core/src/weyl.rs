//! Weyl quantization of symbols on a 1-D phase space grid.
//!
//! `[Op a]u(y) = c int int a((x+y)/2, xi) e^{i(y-x)xi} u(x) dx dxi` with
//! `c = 1/(2 pi)`, the value that makes `Op(1)` the identity.

use crate::error::{arg, Result};
use crate::grid::{Axis, Grid, GridFunction};
use crate::linop::{frame_operator, probe_relative, smooth_probes, CMat, FrameSpec, LinOp};
use crate::relconv::{assemble, Quadrature};
use num_complex::Complex64 as C64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

pub const WEYL_CONSTANT: f64 = 1.0 / (2.0 * PI);

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug)]
pub struct WeylOp {
    pub op: LinOp,
    /// Largest symbol magnitude on the xi boundary relative to its peak.
    pub boundary_ratio: f64,
    pub truncated: bool,
}

/// Symbol values at the half-step points `x_lo + s h / 2`, `s = 0..2n-1`,
/// for each `xi` column. Odd `s` come from a spectral half-step shift.
fn half_step_table(a: &GridFunction) -> Vec<Vec<C64>> {
    let ax = a.grid.axes()[0];
    let nx = ax.count;
    let nxi = a.grid.axes()[1].count;
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(nx);
    let inv = planner.plan_fft_inverse(nx);
    let mut table = vec![vec![ZERO; nxi]; 2 * nx - 1];
    let mut buf = vec![ZERO; nx];
    for m in 0..nxi {
        for i in 0..nx {
            buf[i] = a.values[i * nxi + m];
            table[2 * i][m] = buf[i];
        }
        fwd.process(&mut buf);
        for (k, v) in buf.iter_mut().enumerate() {
            let f = if k < nx.div_ceil(2) { k as f64 } else { k as f64 - nx as f64 };
            let f = if nx % 2 == 0 && k == nx / 2 { 0.0 } else { f };
            // value at x + h/2
            *v *= C64::from_polar(1.0 / nx as f64, PI * f / nx as f64);
        }
        inv.process(&mut buf);
        for i in 0..nx - 1 {
            table[2 * i + 1][m] = buf[i];
        }
    }
    table
}

/// Quantizes a symbol sampled on `(x, xi)`; the `x` axis must be the axis of
/// the 1-D operator grid. Midpoint values come from trigonometric
/// interpolation in `x`, so the symbol should decay at both ends of that axis.
pub fn weyl_quantize(a: &GridFunction, grid: &Grid) -> Result<WeylOp> {
    weyl_quantize_with(a, grid, WEYL_CONSTANT)
}

pub fn weyl_quantize_with(a: &GridFunction, grid: &Grid, c: f64) -> Result<WeylOp> {
    if grid.ndim() != 1 || a.grid.ndim() != 2 {
        return arg("Weyl quantization needs a 1-D space grid and an (x, xi) symbol grid");
    }
    let ax = grid.axes()[0];
    if a.grid.axes()[0] != ax {
        return arg("symbol x axis differs from the operator grid");
    }
    let xi = a.grid.axes()[1];
    let nx = ax.count;
    let h = ax.step();
    let wxi = xi.trapezoid();
    let xis = xi.points();
    let table = half_step_table(a);
    let mut m = CMat::zeros(nx, nx);
    for j in 0..nx {
        let y = ax.point(j);
        for l in 0..nx {
            let d = y - ax.point(l);
            let row = &table[j + l];
            let mut acc = ZERO;
            for k in 0..xis.len() {
                if row[k] != ZERO {
                    acc += row[k] * C64::from_polar(wxi[k], d * xis[k]);
                }
            }
            m[(j, l)] = acc * (c * h);
        }
    }
    // boundary of the symbol in xi
    let peak = a.max_abs();
    let nxi = xi.count;
    let mut edge = 0.0f64;
    for i in 0..nx {
        edge = edge.max(a.values[i * nxi].norm()).max(a.values[i * nxi + nxi - 1].norm());
    }
    let ratio = if peak == 0.0 { 0.0 } else { edge / peak };
    Ok(WeylOp { op: LinOp::new(m)?, boundary_ratio: ratio, truncated: ratio > 1e-10 })
}

/// Flat-top taper in `xi`: one on the inner `frac` of the axis, smooth step
/// to zero at the ends.
pub fn xi_taper(xi: &Axis, frac: f64) -> Vec<f64> {
    crate::grid::taper(xi, frac)
}

/// Normalization constant fixed by requiring `Op(1) = I`: quantize a tapered
/// constant with `c = 1` and compare `<Op u, u>` with `<u, u>` for a Gaussian
/// `u` centered on the grid.
pub fn weyl_calibration(grid: &Grid, xi: Axis) -> Result<f64> {
    let ax = grid.axes()[0];
    let sg = Grid::with_cap(vec![ax, xi], usize::MAX)?;
    let t = xi_taper(&xi, 0.5);
    let nxi = xi.count;
    let sym = GridFunction { grid: sg.clone(), values: (0..sg.len()).map(|f| C64::new(t[f % nxi], 0.0)).collect() };
    let raw = weyl_quantize_with(&sym, grid, 1.0)?;
    let mid = 0.5 * (ax.lo + ax.hi);
    let width = 0.08 * (ax.hi - ax.lo);
    let u = GridFunction::from_real_fn(grid.clone(), |x| (-0.5 * ((x[0] - mid) / width).powi(2)).exp());
    let ou = raw.op.apply(&u)?;
    let num: C64 = ou.values.iter().zip(&u.values).map(|(a, b)| a * b.conj()).sum();
    let den: f64 = u.values.iter().map(|v| v.norm_sqr()).sum();
    Ok(den / num.re)
}

#[derive(Clone, Debug)]
pub struct WeylReport {
    pub calibration: f64,
    pub weyl_norm: f64,
    pub relconv_norm: f64,
    /// Relative difference on smooth tapered probe vectors, zero when both
    /// operators vanish there.
    pub relative: f64,
    /// Relative Frobenius difference of the full matrices. Grid-scale vectors
    /// see the periodic shifts of the discrete flows, so this is not small.
    pub frobenius: f64,
}

/// Compares the Weyl quantization of `k` with the relative convolution over
/// the frame `(M_y, (1/i) d/dy)` with the same kernel.
pub fn weyl_equals_relconv(k: &GridFunction) -> Result<WeylReport> {
    if k.grid.ndim() != 2 {
        return arg("symbol must live on an (x, xi) grid");
    }
    let space = Grid::with_cap(vec![k.grid.axes()[0]], usize::MAX)?;
    let w = weyl_quantize(k, &space)?;
    let ops = vec![
        frame_operator(&FrameSpec::Multiplication { axis: 0, scale: 1.0 }, &space)?,
        frame_operator(&FrameSpec::Momentum { axis: 0, scale: 1.0 }, &space)?,
    ];
    let r = assemble(&ops, k, &Quadrature::default())?;
    let wn = w.op.norm_fro();
    let rn = r.op.norm_fro();
    let diff = w.op.sub(&r.op).norm_fro();
    let frobenius = if wn == 0.0 && rn == 0.0 { 0.0 } else { diff / wn.max(rn) };
    let q = smooth_probes(&space, 8, 17);
    let relative = if w.op.probe_norm(&q) == 0.0 && r.op.probe_norm(&q) == 0.0 {
        0.0
    } else {
        probe_relative(w.op.matrix(), r.op.matrix(), &q)
    };
    Ok(WeylReport {
        calibration: weyl_calibration(&space, k.grid.axes()[1])?,
        weyl_norm: wn,
        relconv_norm: rn,
        relative,
        frobenius,
    })
}
