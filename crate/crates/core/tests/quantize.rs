use liecv_core::error::Error;
use liecv_core::grid::{Axis, Grid, GridFunction};
use liecv_core::lie::LieAlgebra;
use liecv_core::linop::{frame_operator, frame_operators, smooth_probes_width, CMat, FrameSpec, LinOp};
use liecv_core::quantize::*;
use liecv_core::relconv::{assemble, Quadrature};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn mono(e: &[u32], c: f64) -> PolyObservable {
    PolyObservable::monomial(e.len() / 2, e.to_vec(), c).unwrap()
}

fn comm_on(a: &LinOp, b: &LinOp, q: &CMat) -> CMat {
    a.matrix() * (b.matrix() * q) - b.matrix() * (a.matrix() * q)
}

#[test]
fn canonical_relations_in_two_degrees() {
    let n = 2;
    for i in 0..n {
        for j in 0..n {
            let qp = poisson_bracket(&PolyObservable::q(n, i), &PolyObservable::p(n, j));
            let want = if i == j { PolyObservable::constant(n, 1.0) } else { PolyObservable::zero(n) };
            assert_eq!(qp, want);
            assert!(poisson_bracket(&PolyObservable::q(n, i), &PolyObservable::q(n, j)).is_zero());
            assert!(poisson_bracket(&PolyObservable::p(n, i), &PolyObservable::p(n, j)).is_zero());
        }
    }
}

#[test]
fn position_and_momentum_close_to_heisenberg() {
    let c = close_under_bracket(&parse_gens("q, p").unwrap(), 10).unwrap();
    assert_eq!(c.basis.len(), 3);
    assert_eq!(c.basis[0], PolyObservable::constant(1, 1.0));
    assert_eq!(c.algebra.structure(), LieAlgebra::heisenberg(1).structure());
    assert_eq!(heisenberg_rank(&c.algebra).unwrap(), 1);
    let c2 = close_under_bracket(&parse_gens("q1, q2, p1, p2").unwrap(), 10).unwrap();
    assert_eq!(heisenberg_rank(&c2.algebra).unwrap(), 2);
}

#[test]
fn quadratics_close_to_three_dimensions() {
    let c = close_under_bracket(&parse_gens("q^2, p^2, q*p").unwrap(), 10).unwrap();
    assert_eq!(c.basis.len(), 3);
    let at = |e: [u32; 2]| c.basis.iter().position(|b| *b == mono(&e, 1.0)).unwrap();
    let (qq, pp, qp) = (at([2, 0]), at([0, 2]), at([1, 1]));
    let k = |i: usize, j: usize, l: usize| c.algebra.constant(i, j, l);
    assert_eq!(k(qq, pp, qp), 4.0);
    assert_eq!(k(qp, qq, qq), -2.0);
    assert_eq!(k(qp, pp, pp), 2.0);
    assert_eq!(k(qq, pp, qq) + k(qq, pp, pp), 0.0);
    assert!(closure_residual(&c.algebra, &c.basis) <= 1e-10);
    assert!(c.algebra.jacobi_residual() <= 1e-12);
    assert!(matches!(realize(&c.algebra, QuantMode::Pdo, 1.0), Err(Error::Unsupported(_))));
}

#[test]
fn single_cubic_is_abelian() {
    let c = close_under_bracket(&parse_gens("q^3").unwrap(), 10).unwrap();
    assert_eq!(c.basis.len(), 1);
    assert_eq!(c.algebra.nilpotency_step(), Some(1));
}

#[test]
fn cubic_with_momentum_square_grows() {
    match close_under_bracket(&parse_gens("q^3, p^2").unwrap(), 10) {
        Err(Error::Growth { reached, cap }) => {
            assert_eq!(cap, 10);
            assert_eq!(reached, 11);
        }
        other => panic!("expected growth error, got {other:?}"),
    }
}

#[test]
fn empty_and_vanishing_generators_rejected() {
    assert!(close_under_bracket(&[], 4).is_err());
    assert!(close_under_bracket(&[PolyObservable::zero(1)], 4).is_err());
}

#[test]
fn pdo_realization_carries_planck_constant() {
    let h = close_under_bracket(&parse_gens("q, p").unwrap(), 10).unwrap().algebra;
    let g = Grid::new(vec![Axis::new(96, -12.0, 12.0)]).unwrap();
    let probes = smooth_probes_width(&g, 6, 31, 0.12);
    for hbar in [1.0, 0.5, 2.0] {
        let specs = realize(&h, QuantMode::Pdo, hbar).unwrap();
        assert_eq!(specs.len(), 3);
        let x = frame_operators(&specs, &g).unwrap();
        let lhs = x[0].matrix() * &probes;
        let rhs = comm_on(&x[1], &x[2], &probes) * I;
        let err = (&lhs - &rhs).norm() / lhs.norm();
        assert!(err <= 1e-6, "hbar={hbar}: {err:e}");
    }
    // hbar = 1 is the plain Weyl frame
    let specs = realize(&h, QuantMode::Pdo, 1.0).unwrap();
    assert_eq!(specs[1], FrameSpec::Multiplication { axis: 0, scale: 1.0 });
    assert_eq!(specs[2], FrameSpec::Momentum { axis: 0, scale: 1.0 });
}

#[test]
fn classical_realization_commutes() {
    let h = close_under_bracket(&parse_gens("q, p").unwrap(), 10).unwrap().algebra;
    let specs = realize(&h, QuantMode::Classical, 1.0).unwrap();
    let g = Grid::new(vec![Axis::new(12, -3.0, 3.0), Axis::new(12, -3.0, 3.0)]).unwrap();
    let ops = frame_operators(&specs, &g).unwrap();
    let kg = Grid::new(vec![Axis::lattice(16, 0.5); 3]).unwrap();
    let k1 = GridFunction::from_real_fn(kg.clone(), |y| (-(y[0] * y[0] + y[1] * y[1] + 2.0 * y[2] * y[2])).exp());
    let k2 = GridFunction::from_fn(kg, |y| C64::new(1.0, y[1]) * (-(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]) / 2.0).exp());
    let a = assemble(&ops, &k1, &Quadrature::default()).unwrap().op;
    let b = assemble(&ops, &k2, &Quadrature::default()).unwrap().op;
    let c = (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
    assert!(c <= 1e-10 * (a.matrix() * b.matrix()).norm(), "{c:e}");
}

#[test]
fn group_realization_is_left_fields() {
    let h = close_under_bracket(&parse_gens("q, p").unwrap(), 10).unwrap().algebra;
    let specs = realize(&h, QuantMode::Group, 1.0).unwrap();
    assert_eq!(realization_grid_dim(QuantMode::Group, 1), 3);
    let g = Grid::new(vec![Axis::new(4, -2.0, 2.0), Axis::new(32, -9.0, 9.0), Axis::new(32, -9.0, 9.0)]).unwrap();
    let x = frame_operators(&specs, &g).unwrap();
    for k in 1..3 {
        let left = frame_operator(&FrameSpec::HeisenbergLeft { index: k, scale: 1.0 }, &g).unwrap();
        assert_eq!(x[k].matrix(), left.matrix());
    }
    // i[q, p] equals the realized central element
    let probes = smooth_probes_width(&g, 4, 32, 0.145);
    let lhs = x[0].matrix() * &probes;
    let rhs = comm_on(&x[1], &x[2], &probes) * I;
    assert!((&lhs - &rhs).norm() <= 1e-6 * lhs.norm());
}

fn poly(n: usize) -> impl Strategy<Value = PolyObservable> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 2 * n), -3i32..=3), 1..6).prop_map(move |terms| {
        let mut p = PolyObservable::zero(n);
        for (mut e, c) in terms {
            // keep total degree at most three
            while e.iter().sum::<u32>() > 3 {
                let k = e.iter().position(|v| *v > 0).unwrap();
                e[k] -= 1;
            }
            p = p.add(&PolyObservable::monomial(n, e, c as f64).unwrap());
        }
        p
    })
}

fn quadratic() -> impl Strategy<Value = PolyObservable> {
    prop::collection::vec(-2i32..=2, 6).prop_map(|c| {
        let exps: [[u32; 2]; 6] = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]];
        exps.iter().zip(&c).fold(PolyObservable::zero(1), |acc, (e, c)| acc.add(&mono(e, *c as f64)))
    })
}

proptest! {
    #[test]
    fn bracket_is_a_derivation(a in poly(2), b in poly(2), c in poly(2)) {
        let lhs = poisson_bracket(&a, &b.mul(&c));
        let rhs = poisson_bracket(&a, &b).mul(&c).add(&b.mul(&poisson_bracket(&a, &c)));
        prop_assert!(lhs.sub(&rhs).max_abs() <= 1e-10);
    }

    #[test]
    fn jacobi_holds(a in poly(2), b in poly(2), c in poly(2)) {
        let r = poisson_bracket(&a, &poisson_bracket(&b, &c))
            .add(&poisson_bracket(&b, &poisson_bracket(&c, &a)))
            .add(&poisson_bracket(&c, &poisson_bracket(&a, &b)));
        prop_assert!(r.max_abs() <= 1e-10);
    }

    #[test]
    fn bracket_is_antisymmetric(a in poly(1), b in poly(1)) {
        prop_assert!(poisson_bracket(&a, &b).add(&poisson_bracket(&b, &a)).is_zero());
    }

    // polynomials of degree <= 2 span a finite Lie algebra, so closure always ends
    #[test]
    fn quadratic_closures_are_closed(gens in prop::collection::vec(quadratic(), 1..4)) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let c = close_under_bracket(&gens, 6).unwrap();
        prop_assert!(c.basis.len() <= 6);
        prop_assert!(closure_residual(&c.algebra, &c.basis) <= 1e-10);
        prop_assert!(c.algebra.jacobi_residual() <= 1e-10);
    }
}
