//! Clifford generators and solutions of the Dirac equation synthesized as
//! relative convolutions.
//!
//! With `X0 = I` the synthesized function is
//! `f(y) = int exp(-i sum_j eta_j (y0 X_j - y_j X0)) fhat(-eta) d eta`,
//! evaluated by quadrature on the `eta` grid of `fhat`.

use crate::error::{arg, Error, Result};
use crate::grid::{Axis, Grid, GridFunction};
use crate::linop::CMat;
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    /// Anti-Hermitian generators with `X_i X_j + X_j X_i = -2 delta_ij I`.
    Clifford,
    /// Mutually commuting Hermitian generators.
    Commuting,
}

#[derive(Clone, Debug)]
pub struct CliffordRep {
    pub n: usize,
    pub generators: Vec<CMat>,
    pub kind: RepKind,
}

impl CliffordRep {
    pub fn dim(&self) -> usize {
        self.generators[0].nrows()
    }

    /// Largest entry of `X_i X_j + X_j X_i + 2 delta_ij I` over all pairs.
    pub fn anticommutation_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let a = &self.generators[i];
                let b = &self.generators[j];
                let mut m = a * b + b * a;
                if i == j {
                    m += CMat::identity(d, d) * C64::new(2.0, 0.0);
                }
                worst = worst.max(max_abs(&m));
            }
        }
        worst
    }

    /// Largest entry of `[X_i, X_j]` over all pairs.
    pub fn commutation_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in &self.generators {
            for b in &self.generators {
                worst = worst.max(max_abs(&(a * b - b * a)));
            }
        }
        worst
    }
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn pauli() -> [CMat; 3] {
    [
        CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        CMat::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
    ]
}

/// `i sigma_j` for `n <= 3`; for `n = 4` the quaternion units tensored with
/// `sigma_x` plus `i I (x) sigma_y`.
pub fn clifford_generators(n: usize) -> Result<CliffordRep> {
    if !(1..=4).contains(&n) {
        return arg(format!("Clifford model needs 1 <= n <= 4, got {n}"));
    }
    let s = pauli();
    let generators = if n <= 3 {
        s[..n].iter().map(|m| m * I).collect()
    } else {
        let id = CMat::identity(2, 2);
        let mut g: Vec<CMat> = s.iter().map(|m| (m * I).kronecker(&s[0])).collect();
        g.push((&id * I).kronecker(&s[1]));
        g
    };
    Ok(CliffordRep { n, generators, kind: RepKind::Clifford })
}

/// `n` commuting Hermitian matrices `V diag(d_j) V^*` with a random unitary
/// `V` and random spectra in `[-1, 1]`.
pub fn commuting_generators(n: usize, dim: usize, seed: u64) -> Result<CliffordRep> {
    if n == 0 || dim == 0 {
        return arg("commuting model needs n >= 1 and dim >= 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = CMat::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let v = z.qr().q();
    let generators = (0..n)
        .map(|_| {
            let d: Vec<C64> = (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
            &v * CMat::from_diagonal(&nalgebra::DVector::from_vec(d)) * v.adjoint()
        })
        .collect();
    Ok(CliffordRep { n, generators, kind: RepKind::Commuting })
}

/// Precomputed spectral data of `sum_j eta_j X_j` at every quadrature node.
pub struct DiracSynth {
    rep: CliffordRep,
    nodes: Vec<Node>,
}

struct Node {
    eta: Vec<f64>,
    weight: C64,
    // eigenvalues of sum eta_j X_j (real, or imaginary for the Clifford model)
    mu: Vec<C64>,
    vecs: CMat,
}

impl DiracSynth {
    pub fn new(rep: &CliffordRep, fhat: &GridFunction) -> Result<Self> {
        if fhat.grid.ndim() != rep.n {
            return arg(format!("fhat has {} axes, model has n = {}", fhat.grid.ndim(), rep.n));
        }
        let w = fhat.grid.weights();
        let d = rep.dim();
        let mut nodes = Vec::new();
        for (idx, p) in fhat.grid.points().into_iter().enumerate() {
            // fhat(-eta) at node eta
            let neg: Vec<f64> = p.iter().map(|v| -v).collect();
            let val = fhat.sample(&neg);
            if val == ZERO || w[idx] == 0.0 {
                continue;
            }
            let mut m = CMat::zeros(d, d);
            for (e, x) in p.iter().zip(&rep.generators) {
                m += x * C64::new(*e, 0.0);
            }
            let (mu, vecs) = match rep.kind {
                RepKind::Commuting => {
                    let e = m.symmetric_eigen();
                    (e.eigenvalues.iter().map(|&l| C64::new(l, 0.0)).collect(), e.eigenvectors)
                }
                RepKind::Clifford => {
                    // m = i H with H Hermitian
                    let e = (&m * (-I)).symmetric_eigen();
                    (e.eigenvalues.iter().map(|&l| C64::new(0.0, l)).collect(), e.eigenvectors)
                }
            };
            nodes.push(Node { eta: p, weight: val * w[idx], mu, vecs });
        }
        Ok(DiracSynth { rep: rep.clone(), nodes })
    }

    /// Matrix value at `y = (y0, y1, .., yn)`.
    pub fn eval(&self, y: &[f64]) -> Result<CMat> {
        let n = self.rep.n;
        if y.len() != n + 1 {
            return arg(format!("point needs {} coordinates, got {}", n + 1, y.len()));
        }
        let d = self.rep.dim();
        let mut out = CMat::zeros(d, d);
        let mut scaled = CMat::zeros(d, d);
        for node in &self.nodes {
            let phase: f64 = node.eta.iter().zip(&y[1..]).map(|(e, v)| e * v).sum();
            let s = node.weight * C64::from_polar(1.0, phase);
            // V diag(exp(-i y0 mu)) V^*
            for c in 0..d {
                let f = (-I * y[0] * node.mu[c]).exp() * s;
                for r in 0..d {
                    scaled[(r, c)] = node.vecs[(r, c)] * f;
                }
            }
            out += &scaled * node.vecs.adjoint();
        }
        Ok(out)
    }
}

pub fn dirac_synthesize(rep: &CliffordRep, fhat: &GridFunction, y: &[f64]) -> Result<CMat> {
    DiracSynth::new(rep, fhat)?.eval(y)
}

fn check_mass(rep: &CliffordRep, m: &CMat) -> Result<()> {
    let d = rep.dim();
    if m.nrows() != d || m.ncols() != d {
        return arg(format!("mass matrix must be {d}x{d}"));
    }
    for (j, x) in rep.generators.iter().enumerate() {
        let r = max_abs(&(m * x - x * m));
        if r > 1e-12 {
            return Err(Error::Validation(format!("mass matrix does not commute with X{} (residual {r:e})", j + 1)));
        }
    }
    Ok(())
}

/// `exp(y0 M)` times the massless solution.
pub fn dirac_mass_synthesize(rep: &CliffordRep, m: &CMat, fhat: &GridFunction, y: &[f64]) -> Result<CMat> {
    check_mass(rep, m)?;
    let f = dirac_synthesize(rep, fhat, y)?;
    Ok((m * C64::new(y[0], 0.0)).exp() * f)
}

/// Solution evaluator with an optional mass term, shared by the residual
/// checks.
pub struct Solution<'a> {
    synth: DiracSynth,
    mass: Option<&'a CMat>,
}

impl<'a> Solution<'a> {
    pub fn new(rep: &CliffordRep, fhat: &GridFunction, mass: Option<&'a CMat>) -> Result<Self> {
        if let Some(m) = mass {
            check_mass(rep, m)?;
        }
        Ok(Solution { synth: DiracSynth::new(rep, fhat)?, mass })
    }

    pub fn eval(&self, y: &[f64]) -> Result<CMat> {
        let f = self.synth.eval(y)?;
        Ok(match self.mass {
            Some(m) => (m * C64::new(y[0], 0.0)).exp() * f,
            None => f,
        })
    }

    /// Centered-difference residual of `d0 f + sum_j X_j d_j f - M f` at `y`.
    pub fn residual_at(&self, y: &[f64], h: f64) -> Result<CMat> {
        let n = self.synth.rep.n;
        let mut shifted = y.to_vec();
        let mut diff = |k: usize| -> Result<CMat> {
            shifted[k] = y[k] + h;
            let plus = self.eval(&shifted)?;
            shifted[k] = y[k] - h;
            let minus = self.eval(&shifted)?;
            shifted[k] = y[k];
            Ok((plus - minus) / C64::new(2.0 * h, 0.0))
        };
        let mut r = diff(0)?;
        for j in 1..=n {
            r += &self.synth.rep.generators[j - 1] * diff(j)?;
        }
        if let Some(m) = self.mass {
            r -= m * self.eval(y)?;
        }
        Ok(r)
    }

    /// Largest Frobenius norm of the residual over `points`.
    pub fn residual(&self, points: &[Vec<f64>], h: f64) -> Result<f64> {
        let mut worst = 0.0f64;
        for p in points {
            worst = worst.max(self.residual_at(p, h)?.norm());
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub h: f64,
    pub residual: f64,
    /// Residual at the previous (twice larger) step divided by this one.
    pub ratio: Option<f64>,
}

/// Residuals at `h0, h0/2, ..` with successive ratios.
pub fn residual_sweep(sol: &Solution, points: &[Vec<f64>], h0: f64, levels: usize) -> Result<Vec<SweepRow>> {
    let mut rows: Vec<SweepRow> = Vec::with_capacity(levels);
    let mut h = h0;
    for _ in 0..levels {
        let r = sol.residual(points, h)?;
        let ratio = rows.last().map(|p| p.residual / r);
        rows.push(SweepRow { h, residual: r, ratio });
        h *= 0.5;
    }
    Ok(rows)
}

/// Gaussian `exp(-|eta|^2 / (2 s^2))` times a real polynomial tilt, on a cube
/// grid; the default test input.
pub fn gaussian_fhat(n: usize, count: usize, half: f64, s: f64, tilt: &[f64]) -> Result<GridFunction> {
    let g = Grid::with_cap(vec![Axis::new(count, -half, half); n], usize::MAX)?;
    Ok(GridFunction::from_fn(g, |p| {
        let r2: f64 = p.iter().map(|v| v * v).sum();
        let lin: f64 = p.iter().zip(tilt).map(|(a, b)| a * b).sum();
        C64::new(1.0 + 0.3 * lin, 0.2 * lin) * (-0.5 * r2 / (s * s)).exp()
    }))
}

/// Random matrix in the commutant of a commuting model, `V diag V^*`.
pub fn commuting_mass(rep: &CliffordRep, seed: u64) -> Result<CMat> {
    if rep.kind != RepKind::Commuting {
        return arg("commuting_mass needs a commuting model");
    }
    // a polynomial in the generators commutes with all of them
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = rep.dim();
    let mut m: CMat = DMatrix::identity(d, d) * C64::new(rng.gen_range(-0.5..0.5), 0.0);
    for x in &rep.generators {
        m += x * C64::new(rng.gen_range(-0.5..0.5), 0.0);
        m += x * x * C64::new(rng.gen_range(-0.2..0.2), 0.0);
    }
    Ok(m)
}
