use liecv_core::grid::{Axis, Grid, GridFunction};
use liecv_core::linop::smooth_probes;
use liecv_core::weyl::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn phase_grid() -> (Grid, Grid) {
    let ax = Axis::new(64, -10.0, 10.0);
    (Grid::new(vec![ax]).unwrap(), Grid::new(vec![ax, ax]).unwrap())
}

#[test]
fn gaussian_symbol_matches_relative_convolution() {
    let (_, g) = phase_grid();
    let a = GridFunction::from_real_fn(g, |p| (-(p[0] * p[0] + p[1] * p[1]) / 2.0).exp());
    let r = weyl_equals_relconv(&a).unwrap();
    assert!(r.relative <= 1e-3, "{:e}", r.relative);
    assert!((r.calibration * 2.0 * std::f64::consts::PI - 1.0).abs() < 1e-6);
}

#[test]
fn mixed_symbol_matches_relative_convolution() {
    // x xi is where the symmetric ordering matters
    let (_, g) = phase_grid();
    let a = GridFunction::from_real_fn(g, |p| p[0] * p[1] * (-(p[0] * p[0] + p[1] * p[1]) / 2.0).exp());
    let r = weyl_equals_relconv(&a).unwrap();
    assert!(r.relative <= 1e-3, "{:e}", r.relative);
}

#[test]
fn undecayed_symbol_flagged() {
    let (s, g) = phase_grid();
    let a = GridFunction::from_real_fn(g, |p| (-p[0] * p[0] / 2.0).exp());
    assert!(weyl_quantize(&a, &s).unwrap().truncated);
}

#[test]
fn mismatched_axes_rejected() {
    let (_, g) = phase_grid();
    let other = Grid::new(vec![Axis::new(32, -10.0, 10.0)]).unwrap();
    assert!(weyl_quantize(&GridFunction::zeros(g), &other).is_err());
}

fn symbol(g: &Grid, c: [f64; 4]) -> GridFunction {
    GridFunction::from_real_fn(g.clone(), move |p| {
        let (x, xi) = (p[0] - c[0], p[1] - c[1]);
        (1.0 + c[2] * x + c[3] * x * xi) * (-(x * x + 0.8 * xi * xi) / 2.0).exp()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn quantization_is_linear(c1 in prop::array::uniform4(-1.0..1.0f64), c2 in prop::array::uniform4(-1.0..1.0f64), s in -3.0..3.0f64, t in -3.0..3.0f64) {
        let (space, g) = phase_grid();
        let a = symbol(&g, c1);
        let b = symbol(&g, c2);
        let mix = a.scale(C64::new(s, 0.0)).axpy(C64::new(0.0, t), &b).unwrap();
        let lhs = weyl_quantize(&mix, &space).unwrap().op;
        let rhs = weyl_quantize(&a, &space).unwrap().op.scale(C64::new(s, 0.0))
            .add(&weyl_quantize(&b, &space).unwrap().op.scale(C64::new(0.0, t)));
        let err = lhs.sub(&rhs).norm_fro() / rhs.norm_fro();
        prop_assert!(err <= 1e-12, "{}", err);
    }

    #[test]
    fn real_symbols_are_hermitian(c in prop::array::uniform4(-1.0..1.0f64)) {
        let (space, g) = phase_grid();
        let w = weyl_quantize(&symbol(&g, c), &space).unwrap().op;
        let q = smooth_probes(&space, 6, 9);
        let d = (w.matrix() * &q - w.adjoint().matrix() * &q).norm() / (w.matrix() * &q).norm();
        prop_assert!(d <= 1e-8, "{}", d);
    }
}
