use liecv_core::grid::{Axis, Grid};
use liecv_core::linop::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

const I: C64 = C64 { re: 0.0, im: 1.0 };

// [A, B] Q without forming the commutator
fn comm_on(a: &LinOp, b: &LinOp, q: &CMat) -> CMat {
    a.matrix() * (b.matrix() * q) - b.matrix() * (a.matrix() * q)
}

fn heis_grid() -> Grid {
    Grid::new(vec![Axis::new(4, -2.0, 2.0), Axis::new(32, -9.0, 9.0), Axis::new(32, -9.0, 9.0)]).unwrap()
}

fn fields(g: &Grid, right: bool) -> Vec<LinOp> {
    let specs: Vec<FrameSpec> = (0..3)
        .map(|index| {
            if right {
                FrameSpec::HeisenbergRight { index, scale: 1.0 }
            } else {
                FrameSpec::HeisenbergLeft { index, scale: 1.0 }
            }
        })
        .collect();
    frame_operators(&specs, g).unwrap()
}

#[test]
fn left_and_right_fields_satisfy_heisenberg_relation() {
    let g = heis_grid();
    let probes = smooth_probes_width(&g, 6, 21, 0.145);
    for right in [false, true] {
        let x = fields(&g, right);
        for o in &x {
            assert!(o.hermitian_residual() <= 1e-12);
        }
        let lhs = x[0].matrix() * &probes * C64::new(4.0, 0.0);
        let rhs = comm_on(&x[1], &x[2], &probes) * I;
        let err = (&lhs - &rhs).norm() / lhs.norm();
        assert!(err <= 1e-6, "right={right}: {err:e}");
        // the central field commutes exactly
        let c = comm_on(&x[0], &x[1], &probes).norm();
        assert!(c <= 1e-12 * (x[0].matrix() * (x[1].matrix() * &probes)).norm(), "{c:e}");
    }
}

#[test]
fn left_fields_commute_with_right_fields() {
    let g = heis_grid();
    let probes = smooth_probes_width(&g, 6, 22, 0.145);
    let l = fields(&g, false);
    let r = fields(&g, true);
    for a in &l {
        for b in &r {
            let c = comm_on(a, b, &probes).norm();
            let scale = (a.matrix() * (b.matrix() * &probes)).norm();
            assert!(c <= 1e-6 * scale, "{:e}", c / scale);
        }
    }
}

#[test]
fn fock_fields_commute_with_shifts() {
    let g = Grid::new(vec![Axis::new(48, -10.0, 10.0); 2]).unwrap();
    let probes = smooth_probes_width(&g, 6, 23, 0.12);
    let mut f = Vec::new();
    let mut s = Vec::new();
    for primed in [true, false] {
        f.push(frame_operator(&FrameSpec::FockField { index: 0, primed, scale: 1.0 }, &g).unwrap());
        s.push(frame_operator(&FrameSpec::FockShift { index: 0, primed, scale: 1.0 }, &g).unwrap());
    }
    for a in &f {
        for b in &s {
            let scale = (a.matrix() * (b.matrix() * &probes)).norm();
            let r = comm_on(a, b, &probes).norm() / scale;
            assert!(r <= 1e-6, "{r:e}");
        }
    }
    // the fields themselves do not commute
    let c = comm_on(&f[0], &f[1], &probes).norm();
    assert!(c > 1e-2 * (f[0].matrix() * (f[1].matrix() * &probes)).norm());
}

#[test]
fn multiplication_flow_is_diagonal_phase() {
    let g = Grid::new(vec![Axis::new(20, -3.0, 4.0)]).unwrap();
    let m = frame_operator(&FrameSpec::Multiplication { axis: 0, scale: 1.0 }, &g).unwrap();
    let u = flow(&[m], &[0.7]).unwrap();
    for i in 0..20 {
        for j in 0..20 {
            let want = if i == j { C64::from_polar(1.0, 0.7 * g.point(i)[0]) } else { C64::new(0.0, 0.0) };
            assert!((u.matrix()[(i, j)] - want).norm() < 1e-13);
        }
    }
}

fn spec_strategy() -> impl Strategy<Value = FrameSpec> {
    prop_oneof![
        (0usize..3).prop_map(|axis| FrameSpec::Multiplication { axis, scale: 1.0 }),
        (0usize..3, 0.5..2.0f64).prop_map(|(axis, scale)| FrameSpec::Momentum { axis, scale }),
        (0usize..3).prop_map(|index| FrameSpec::HeisenbergLeft { index, scale: 1.0 }),
        (0usize..3).prop_map(|index| FrameSpec::HeisenbergRight { index, scale: 1.0 }),
        (-2.0..2.0f64).prop_map(|scalar| FrameSpec::Identity { scalar }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn flows_are_unitary(specs in prop::collection::vec(spec_strategy(), 1..4), coeffs in prop::collection::vec(-3.0..3.0f64, 4)) {
        let g = Grid::new(vec![Axis::new(5, -2.0, 2.0), Axis::new(6, -3.0, 3.0), Axis::new(6, -3.0, 3.0)]).unwrap();
        let ops = frame_operators(&specs, &g).unwrap();
        for o in &ops {
            prop_assert!(o.hermitian_residual() <= 1e-12);
        }
        let u = flow(&ops, &coeffs[..ops.len()]).unwrap();
        prop_assert!(u.unitarity_residual() <= 1e-10);
    }
}
