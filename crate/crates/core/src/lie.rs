//! Lie algebras given by structure constants.
//!
//! `c[i][j][k]` stores `[X_i, X_j] = sum_k c[i][j][k] X_k`. Vectors of the
//! algebra are plain coefficient slices of length `dim`.

use crate::error::{arg, Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

const JACOBI_TOL: f64 = 1e-12;
const IDEAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    c: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct BracketJson {
    i: usize,
    j: usize,
    coeffs: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    dim: usize,
    names: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketJson>,
}

impl LieAlgebra {
    /// Builds an algebra from a flat `dim^3` structure tensor, checking
    /// antisymmetry and the Jacobi identity.
    pub fn new(names: Vec<String>, c: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(names, c, JACOBI_TOL)
    }

    pub(crate) fn with_tolerance(names: Vec<String>, c: Vec<f64>, tol: f64) -> Result<Self> {
        let dim = names.len();
        if c.len() != dim * dim * dim {
            return arg(format!(
                "structure tensor has {} entries, expected {}",
                c.len(),
                dim * dim * dim
            ));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("non-finite structure constant".into()));
        }
        let alg = LieAlgebra { dim, names, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let s = alg.constant(i, j, k) + alg.constant(j, i, k);
                    if s.abs() > tol {
                        return Err(Error::Validation(format!(
                            "antisymmetry fails for [{},{}] component {}",
                            alg.names[i], alg.names[j], alg.names[k]
                        )));
                    }
                }
            }
        }
        let r = alg.jacobi_residual();
        if r > tol {
            return Err(Error::Validation(format!("Jacobi residual {r:e}")));
        }
        Ok(alg)
    }

    /// Builds an algebra from a list of nonzero brackets `[X_i, X_j]`.
    pub fn from_brackets(names: Vec<String>, brackets: &[(usize, usize, Vec<f64>)]) -> Result<Self> {
        let n = names.len();
        let mut c = vec![0.0; n * n * n];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || coeffs.len() != n {
                return arg(format!("bracket ({i},{j}) does not fit dimension {n}"));
            }
            for k in 0..n {
                c[(i * n + j) * n + k] = coeffs[k];
                c[(j * n + i) * n + k] = -coeffs[k];
            }
        }
        Self::new(names, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure(&self) -> &[f64] {
        &self.c
    }

    pub fn abelian(n: usize) -> Self {
        let names = (0..n).map(|i| format!("E{}", i + 1)).collect();
        LieAlgebra { dim: n, names, c: vec![0.0; n * n * n] }
    }

    /// h_n with frame (X0, X1..Xn, X(n+1)..X(2n)) and `[X_j, X_{j+n}] = X0`.
    pub fn heisenberg(n: usize) -> Self {
        Self::heisenberg_scaled(n, 1.0)
    }

    /// h_n with `[X_j, X_{j+n}] = s X0`.
    pub fn heisenberg_scaled(n: usize, s: f64) -> Self {
        let d = 2 * n + 1;
        let names = (0..d).map(|i| format!("X{i}")).collect();
        let mut c = vec![0.0; d * d * d];
        for j in 1..=n {
            c[(j * d + j + n) * d] = s;
            c[((j + n) * d + j) * d] = -s;
        }
        LieAlgebra { dim: d, names, c }
    }

    /// The ax+b algebra with frame (Xs, Xd) and `[Xs, Xd] = Xs`.
    pub fn ax_plus_b() -> Self {
        let mut c = vec![0.0; 8];
        c[(0 * 2 + 1) * 2] = 1.0;
        c[(1 * 2) * 2] = -1.0;
        LieAlgebra { dim: 2, names: vec!["Xs".into(), "Xd".into()], c }
    }

    pub fn direct_sum(&self, other: &LieAlgebra) -> Self {
        let d = self.dim + other.dim;
        let mut c = vec![0.0; d * d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    c[(i * d + j) * d + k] = self.constant(i, j, k);
                }
            }
        }
        let o = self.dim;
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    c[((i + o) * d + j + o) * d + k + o] = other.constant(i, j, k);
                }
            }
        }
        let mut names: Vec<String> = self.names.iter().map(|s| format!("{s}'")).collect();
        names.extend(other.names.iter().map(|s| format!("{s}''")));
        LieAlgebra { dim: d, names, c }
    }

    fn check(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return arg(format!(
                "vector of length {} does not belong to an algebra of dimension {}",
                v.len(),
                self.dim
            ));
        }
        Ok(())
    }

    pub fn bracket(&self, a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.bracket_unchecked(a, b))
    }

    // pairs i < j only, so [a, b] = -[b, a] holds bit for bit
    pub(crate) fn bracket_unchecked(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = a[i] * b[j] - a[j] * b[i];
                if w == 0.0 {
                    continue;
                }
                let row = &self.c[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    out[k] += w * row[k];
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.dim];
        v[i] = 1.0;
        v
    }

    /// Max over frame triples of |[[Xi,Xj],Xk] + [[Xj,Xk],Xi] + [[Xk,Xi],Xj]|.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let e: Vec<Vec<f64>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let ij = self.bracket_unchecked(&e[i], &e[j]);
                for k in 0..n {
                    let jk = self.bracket_unchecked(&e[j], &e[k]);
                    let ki = self.bracket_unchecked(&e[k], &e[i]);
                    let a = self.bracket_unchecked(&ij, &e[k]);
                    let b = self.bracket_unchecked(&jk, &e[i]);
                    let c = self.bracket_unchecked(&ki, &e[j]);
                    for m in 0..n {
                        worst = worst.max((a[m] + b[m] + c[m]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Smallest s with the (s+1)-th term of the lower central series zero,
    /// or `None` when the series stabilizes at a nonzero subspace.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let n = self.dim;
        if n == 0 {
            return Some(1);
        }
        let mut current: Vec<Vec<f64>> = (0..n).map(|i| self.basis_vector(i)).collect();
        let mut rank = n;
        let mut step = 0;
        loop {
            let mut gens = Vec::new();
            for i in 0..n {
                let e = self.basis_vector(i);
                for v in &current {
                    gens.push(self.bracket_unchecked(&e, v));
                }
            }
            let next = orthonormal_span(&gens, n, 1e-10);
            step += 1;
            if next.is_empty() {
                return Some(step);
            }
            if next.len() == rank {
                return None;
            }
            rank = next.len();
            current = next;
        }
    }

    /// Residual of `psi([Xi,Xj]) - [psi Xi, psi Xj]` over frame pairs, with the
    /// worst pair reported. `psi` is the matrix acting on coefficient columns.
    pub fn automorphism_residual(&self, psi: &DMatrix<f64>) -> Result<(f64, (usize, usize))> {
        let n = self.dim;
        if psi.nrows() != n || psi.ncols() != n {
            return arg(format!("map is {}x{}, algebra has dimension {n}", psi.nrows(), psi.ncols()));
        }
        let mut worst = (0.0f64, (0, 0));
        for i in 0..n {
            for j in 0..n {
                let lhs = psi * DVector::from_vec(self.bracket_unchecked(&self.basis_vector(i), &self.basis_vector(j)));
                let pi: Vec<f64> = psi.column(i).iter().copied().collect();
                let pj: Vec<f64> = psi.column(j).iter().copied().collect();
                let rhs = self.bracket_unchecked(&pi, &pj);
                let r = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                if r > worst.0 {
                    worst = (r, (i, j));
                }
            }
        }
        Ok(worst)
    }

    pub fn to_json(&self) -> String {
        let n = self.dim;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: Vec<f64> = (0..n).map(|k| self.constant(i, j, k)).collect();
                if coeffs.iter().any(|&v| v != 0.0) {
                    brackets.push(BracketJson { i, j, coeffs });
                }
            }
        }
        serde_json::to_string_pretty(&AlgebraJson { dim: n, names: self.names.clone(), brackets })
            .expect("algebra serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: AlgebraJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        if raw.names.len() != raw.dim {
            return Err(Error::Parse(format!("dim {} but {} names", raw.dim, raw.names.len())));
        }
        let list: Vec<(usize, usize, Vec<f64>)> =
            raw.brackets.into_iter().map(|b| (b.i, b.j, b.coeffs)).collect();
        Self::from_brackets(raw.names, &list)
    }
}

/// Orthonormal basis (Gram-Schmidt with reorthogonalization) of the span of `vs`.
pub(crate) fn orthonormal_span(vs: &[Vec<f64>], n: usize, tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        if let Some(u) = reduce(v, &basis, n, tol) {
            basis.push(u);
        }
        if basis.len() == n {
            break;
        }
    }
    basis
}

fn reduce(v: &[f64], basis: &[Vec<f64>], n: usize, tol: f64) -> Option<Vec<f64>> {
    let scale = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if scale == 0.0 {
        return None;
    }
    let mut u = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let d: f64 = (0..n).map(|k| u[k] * b[k]).sum();
            for k in 0..n {
                u[k] -= d * b[k];
            }
        }
    }
    let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nu <= tol * scale.max(1.0) {
        return None;
    }
    Some(u.into_iter().map(|x| x / nu).collect())
}

/// A subspace closed under brackets with the whole algebra.
#[derive(Clone, Debug)]
pub struct Ideal {
    basis: Vec<Vec<f64>>,
}

impl Ideal {
    pub fn new(alg: &LieAlgebra, basis: Vec<Vec<f64>>) -> Result<Self> {
        for b in &basis {
            alg.check(b)?;
        }
        let ortho = orthonormal_span(&basis, alg.dim, 1e-12);
        for (bi, b) in basis.iter().enumerate() {
            for i in 0..alg.dim {
                let br = alg.bracket_unchecked(b, &alg.basis_vector(i));
                let mut r = br.clone();
                for u in &ortho {
                    let d: f64 = r.iter().zip(u).map(|(a, b)| a * b).sum();
                    for k in 0..alg.dim {
                        r[k] -= d * u[k];
                    }
                }
                let res = r.iter().map(|x| x * x).sum::<f64>().sqrt();
                if res > IDEAL_TOL {
                    return Err(Error::Validation(format!(
                        "[basis vector {bi}, {}] leaves the subspace (residual {res:e})",
                        alg.names[i]
                    )));
                }
            }
        }
        Ok(Ideal { basis })
    }

    pub fn zero() -> Self {
        Ideal { basis: Vec::new() }
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }
}

/// Quotient algebra with its projection and the lifted complement frame.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    /// Orthonormal basis of the ideal, in original coordinates.
    pub ideal_basis: Vec<Vec<f64>>,
    /// Orthonormal complement; element `a` lifts quotient frame vector `a`.
    pub complement: Vec<Vec<f64>>,
}

impl Quotient {
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        self.complement
            .iter()
            .map(|e| e.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Columns: ideal basis first, then the complement. Coordinates in this
    /// frame put the ideal directions in front.
    pub fn adapted_frame(&self) -> Vec<Vec<f64>> {
        self.ideal_basis.iter().chain(self.complement.iter()).cloned().collect()
    }

    /// `alg` rewritten in the adapted frame, with the ideal as its leading
    /// coordinates.
    pub fn adapted(&self, alg: &LieAlgebra) -> Result<(LieAlgebra, Ideal)> {
        let frame = self.adapted_frame();
        let n = frame.len();
        if n != alg.dim {
            return arg("quotient built for an algebra of another dimension");
        }
        let mut c = vec![0.0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = alg.bracket_unchecked(&frame[a], &frame[b]);
                for k in 0..n {
                    c[(a * n + b) * n + k] = br.iter().zip(&frame[k]).map(|(x, y)| x * y).sum();
                }
            }
        }
        let names = (0..n).map(|i| format!("A{i}")).collect();
        let rotated = LieAlgebra::with_tolerance(names, c, IDEAL_TOL)?;
        let m = self.ideal_basis.len();
        let ker = Ideal::new(&rotated, (0..m).map(|i| rotated.basis_vector(i)).collect())?;
        Ok((rotated, ker))
    }
}

pub fn quotient(alg: &LieAlgebra, ker: &Ideal) -> Result<Quotient> {
    // re-verify in case the ideal was built for another algebra
    let ker = Ideal::new(alg, ker.basis.clone())?;
    let n = alg.dim;
    let ideal_basis = orthonormal_span(&ker.basis, n, 1e-12);
    let mut all = ideal_basis.clone();
    let mut complement = Vec::new();
    for i in 0..n {
        if let Some(u) = reduce(&alg.basis_vector(i), &all, n, 1e-10) {
            all.push(u.clone());
            complement.push(u);
        }
    }
    let m = complement.len();
    let mut c = vec![0.0; m * m * m];
    for a in 0..m {
        for b in 0..m {
            let br = alg.bracket_unchecked(&complement[a], &complement[b]);
            for k in 0..m {
                c[(a * m + b) * m + k] = br.iter().zip(&complement[k]).map(|(x, y)| x * y).sum();
            }
        }
    }
    let names = (0..m).map(|i| format!("Q{i}")).collect();
    let algebra = LieAlgebra::with_tolerance(names, c, IDEAL_TOL)?;
    Ok(Quotient { algebra, ideal_basis, complement })
}
