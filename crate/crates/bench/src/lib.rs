//! Inputs shared by the benchmarks.

use liecv_core::linop::frame_operators;
use liecv_core::{Axis, FrameSpec, Grid, GridFunction, LinOp};
use num_complex::Complex64 as C64;

/// Deterministic pseudo-random points in `[-2, 2)^d`.
pub fn points(count: usize, d: usize) -> Vec<Vec<f64>> {
    let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
    (0..count)
        .map(|_| {
            (0..d)
                .map(|_| {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    (s >> 11) as f64 / (1u64 << 53) as f64 * 4.0 - 2.0
                })
                .collect()
        })
        .collect()
}

pub fn gaussian(grid: Grid, width: f64) -> GridFunction {
    GridFunction::from_real_fn(grid, move |x| (-x.iter().map(|v| v * v).sum::<f64>() / (2.0 * width * width)).exp())
}

/// Schrodinger frame of h1 on `count` points over `[-half, half]`.
pub fn schrodinger(count: usize, half: f64) -> (Grid, Vec<LinOp>) {
    let g = Grid::new(vec![Axis::new(count, -half, half)]).expect("valid axis");
    let ops = frame_operators(
        &[
            FrameSpec::Identity { scalar: -1.0 },
            FrameSpec::Multiplication { axis: 0, scale: 1.0 },
            FrameSpec::Momentum { axis: 0, scale: 1.0 },
        ],
        &g,
    )
    .expect("valid frame");
    (g, ops)
}

pub fn h1_kernel(m: usize, a: f64) -> GridFunction {
    let g = Grid::with_cap(vec![Axis::lattice(m, a * a / 2.0), Axis::lattice(m, a), Axis::lattice(m, a)], usize::MAX)
        .expect("valid lattice");
    GridFunction::from_fn(g, |x| C64::new(1.0 + 0.2 * x[1], 0.1 * x[2]) * (-(x[1] * x[1] + x[2] * x[2]) / 2.0 - x[0] * x[0] / 0.245).exp())
}
