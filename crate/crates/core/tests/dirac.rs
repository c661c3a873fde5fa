use liecv_core::dirac::*;
use liecv_core::linop::CMat;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

// inverse transform of gaussian_fhat with unit width, done by hand:
// int e^{i x.eta} (1 + (0.3 + 0.2i) t.eta) e^{-|eta|^2/2} d eta
fn f_exact(x: &[f64], tilt: &[f64]) -> C64 {
    let n = x.len() as i32;
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let tx: f64 = x.iter().zip(tilt).map(|(a, b)| a * b).sum();
    (2.0 * PI).powf(n as f64 / 2.0) * (-0.5 * r2).exp() * (C64::new(1.0, 0.0) + C64::new(0.3, 0.2) * C64::new(0.0, tx))
}

fn points(n: usize) -> Vec<Vec<f64>> {
    let base = [0.35, -0.2, 0.4, 0.1, -0.3];
    vec![
        (0..=n).map(|k| base[k]).collect(),
        (0..=n).map(|k| if k == 0 { -0.25 } else { 0.5 * base[(k + 1) % 5] }).collect(),
    ]
}

#[test]
fn slice_y0_zero_is_reflected_function() {
    for n in 1..=3 {
        let tilt = [0.5, -0.7, 0.2];
        let rep = clifford_generators(n).unwrap();
        let fhat = gaussian_fhat(n, 28, 8.0, 1.0, &tilt[..n]).unwrap();
        let s = DiracSynth::new(&rep, &fhat).unwrap();
        for y in [[0.0, 0.3, -0.4, 0.6], [0.0, -1.1, 0.2, 0.05]] {
            let v = s.eval(&y[..=n]).unwrap();
            let neg: Vec<f64> = y[1..=n].iter().map(|a| -a).collect();
            let want = f_exact(&neg, &tilt[..n]);
            let d = rep.dim();
            let err = (&v - CMat::identity(d, d) * want).norm() / want.norm();
            assert!(err < 1e-8, "n={n} err={err:e}");
        }
    }
}

#[test]
fn residual_halving_clifford() {
    for n in [2, 3] {
        let rep = clifford_generators(n).unwrap();
        let fhat = gaussian_fhat(n, 24, 7.0, 1.0, &[0.4, -0.3, 0.2][..n]).unwrap();
        let sol = Solution::new(&rep, &fhat, None).unwrap();
        let rows = residual_sweep(&sol, &points(n), 0.1, 3).unwrap();
        for r in &rows[1..] {
            let q = r.ratio.unwrap();
            assert!((3.5..=4.5).contains(&q), "n={n} {rows:?}");
        }
    }
}

#[test]
fn residual_halving_commuting_model() {
    let rep = commuting_generators(2, 3, 11).unwrap();
    let fhat = gaussian_fhat(2, 24, 7.0, 1.0, &[0.4, -0.3]).unwrap();
    let sol = Solution::new(&rep, &fhat, None).unwrap();
    let rows = residual_sweep(&sol, &points(2), 0.1, 3).unwrap();
    for r in &rows[1..] {
        assert!((3.5..=4.5).contains(&r.ratio.unwrap()), "{rows:?}");
    }
}

#[test]
fn mass_variants() {
    let rep = clifford_generators(2).unwrap();
    let fhat = gaussian_fhat(2, 20, 7.0, 1.0, &[0.4, -0.3]).unwrap();
    let y = [0.3, 0.1, -0.2];
    let base = dirac_synthesize(&rep, &fhat, &y).unwrap();
    let zero = CMat::zeros(2, 2);
    let z = dirac_mass_synthesize(&rep, &zero, &fhat, &y).unwrap();
    assert!((&z - &base).norm() < 1e-14);
    let m = 0.7;
    let scalar = CMat::identity(2, 2) * C64::new(m, 0.0);
    let s = dirac_mass_synthesize(&rep, &scalar, &fhat, &y).unwrap();
    assert!((&s - &base * C64::new((y[0] * m).exp(), 0.0)).norm() < 1e-12 * s.norm());

    let sol = Solution::new(&rep, &fhat, Some(&scalar)).unwrap();
    let rows = residual_sweep(&sol, &points(2), 0.1, 3).unwrap();
    for r in &rows[1..] {
        assert!((3.5..=4.5).contains(&r.ratio.unwrap()), "{rows:?}");
    }

    let crep = commuting_generators(2, 3, 4).unwrap();
    let cm = commuting_mass(&crep, 9).unwrap();
    let sol = Solution::new(&crep, &fhat, Some(&cm)).unwrap();
    let rows = residual_sweep(&sol, &points(2), 0.1, 3).unwrap();
    for r in &rows[1..] {
        assert!((3.5..=4.5).contains(&r.ratio.unwrap()), "{rows:?}");
    }
}

#[test]
fn printed_sign_does_not_vanish() {
    // d0 f - sum X_j d_j f stays O(1) as h shrinks
    let rep = clifford_generators(2).unwrap();
    let fhat = gaussian_fhat(2, 20, 7.0, 1.0, &[0.4, -0.3]).unwrap();
    let sol = Solution::new(&rep, &fhat, None).unwrap();
    let y = points(2)[0].clone();
    let h = 1e-3;
    let good = sol.residual_at(&y, h).unwrap().norm();
    let mut flipped = CMat::zeros(2, 2);
    let mut sh = y.clone();
    for k in 0..3 {
        sh[k] = y[k] + h;
        let p = sol.eval(&sh).unwrap();
        sh[k] = y[k] - h;
        let q = sol.eval(&sh).unwrap();
        sh[k] = y[k];
        let d = (p - q) / C64::new(2.0 * h, 0.0);
        if k == 0 {
            flipped += d;
        } else {
            flipped -= &rep.generators[k - 1] * d;
        }
    }
    assert!(good < 1e-4);
    assert!(flipped.norm() > 1e-2);
}

#[test]
fn synthesis_is_linear() {
    let rep = clifford_generators(3).unwrap();
    let a = gaussian_fhat(3, 10, 6.0, 1.0, &[0.4, -0.3, 0.1]).unwrap();
    let b = gaussian_fhat(3, 10, 6.0, 0.8, &[-0.2, 0.5, 0.3]).unwrap();
    let c = a.axpy(C64::new(0.3, -1.2), &b).unwrap();
    let y = [0.2, 0.1, -0.3, 0.4];
    let fa = dirac_synthesize(&rep, &a, &y).unwrap();
    let fb = dirac_synthesize(&rep, &b, &y).unwrap();
    let fc = dirac_synthesize(&rep, &c, &y).unwrap();
    let err = (&fc - (&fa + &fb * C64::new(0.3, -1.2))).norm();
    assert!(err < 1e-12 * fc.norm());
}

#[test]
fn anticommutation_all_models() {
    for n in 1..=4 {
        assert!(clifford_generators(n).unwrap().anticommutation_residual() < 1e-12);
    }
}
