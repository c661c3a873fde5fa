//! Campbell-Hausdorff composition in exponential coordinates.
//!
//! Dynkin form: sum over m and tuples (k_j, l_j) with k_j + l_j >= 1 of
//! (-1)^(m-1)/m * [x^k1 y^l1 ... x^km y^lm] / (k1! l1! ... km! lm!), with the
//! left-normed bracket [z1 z2 ... zn] = (1/n)[...[[z1,z2],z3]...,zn].

use crate::error::{arg, Result};
use crate::lie::LieAlgebra;
use std::collections::BTreeMap;

/// Words in the letters x (false) and y (true) with rational weights, up to a
/// maximal total degree.
#[derive(Clone, Debug)]
pub struct BchSeries {
    order: usize,
    terms: Vec<(Vec<bool>, f64)>,
}

impl BchSeries {
    pub fn new(order: usize) -> Result<Self> {
        if order < 1 {
            return arg("bch order must be >= 1");
        }
        let mut acc: BTreeMap<Vec<bool>, f64> = BTreeMap::new();
        let fact: Vec<f64> = (0..=order)
            .scan(1.0, |f, i| {
                if i > 0 {
                    *f *= i as f64;
                }
                Some(*f)
            })
            .collect();
        // m blocks, each block (k,l) with k+l >= 1
        fn rec(
            m_left: usize,
            budget: usize,
            word: &mut Vec<bool>,
            denom: f64,
            m: usize,
            fact: &[f64],
            acc: &mut BTreeMap<Vec<bool>, f64>,
        ) {
            if m_left == 0 {
                let n = word.len();
                // single letters and left-normed brackets with a repeated
                // leading letter are handled by `eval`; a word whose first two
                // letters agree is zero
                if n >= 2 && word[0] == word[1] {
                    return;
                }
                let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
                let w = sign / (m as f64) / denom / (n as f64);
                *acc.entry(word.clone()).or_insert(0.0) += w;
                return;
            }
            for total in 1..=budget.saturating_sub(m_left - 1) {
                for k in 0..=total {
                    let l = total - k;
                    let start = word.len();
                    word.extend(std::iter::repeat(false).take(k));
                    word.extend(std::iter::repeat(true).take(l));
                    rec(m_left - 1, budget - total, word, denom * fact[k] * fact[l], m, fact, acc);
                    word.truncate(start);
                }
            }
        }
        for m in 1..=order {
            let mut word = Vec::new();
            rec(m, order, &mut word, 1.0, m, &fact, &mut acc);
        }
        let terms = acc.into_iter().filter(|(_, w)| *w != 0.0).collect();
        Ok(BchSeries { order, terms })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[(Vec<bool>, f64)] {
        &self.terms
    }

    pub fn eval(&self, alg: &LieAlgebra, x: &[f64], y: &[f64]) -> Vec<f64> {
        let n = alg.dim();
        let mut out = vec![0.0; n];
        // cache left-normed brackets by prefix
        let mut cache: BTreeMap<&[bool], Vec<f64>> = BTreeMap::new();
        for (word, w) in &self.terms {
            let mut v: Vec<f64> = Vec::new();
            let mut start = 0;
            for len in (1..=word.len()).rev() {
                if let Some(c) = cache.get(&word[..len]) {
                    v = c.clone();
                    start = len;
                    break;
                }
            }
            if start == 0 {
                v = if word[0] { y.to_vec() } else { x.to_vec() };
                start = 1;
            }
            for p in start..word.len() {
                let z = if word[p] { y } else { x };
                v = alg.bracket_unchecked(&v, z);
                cache.insert(&word[..=p], v.clone());
            }
            for k in 0..n {
                out[k] += w * v[k];
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BchResult {
    pub point: Vec<f64>,
    /// Set when the algebra is not nilpotent of step <= order, so the
    /// series was cut off.
    pub truncated: bool,
}

pub fn bch_compose(alg: &LieAlgebra, x: &[f64], y: &[f64], order: usize) -> Result<BchResult> {
    let series = BchSeries::new(order)?;
    bch_with(&series, alg, x, y)
}

pub fn bch_with(series: &BchSeries, alg: &LieAlgebra, x: &[f64], y: &[f64]) -> Result<BchResult> {
    if x.len() != alg.dim() || y.len() != alg.dim() {
        return arg(format!(
            "points of length {} and {} for an algebra of dimension {}",
            x.len(),
            y.len(),
            alg.dim()
        ));
    }
    let truncated = !matches!(alg.nilpotency_step(), Some(s) if s <= series.order());
    Ok(BchResult { point: series.eval(alg, x, y), truncated })
}

pub fn group_inverse(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| -v).collect()
}

/// Step-2 closed form x + y + [x,y]/2.
pub fn bch_step2(alg: &LieAlgebra, x: &[f64], y: &[f64]) -> Vec<f64> {
    let b = alg.bracket_unchecked(x, y);
    (0..alg.dim()).map(|k| x[k] + y[k] + 0.5 * b[k]).collect()
}

/// Scale between the central coordinate `u` of the complex presentation
/// (u, v) of H^n and the exponential coordinate x0 of `heisenberg(n)`:
/// u = HN_CENTRAL_SCALE * x0 and v_k = x_k + i x_{k+n}.
pub const HN_CENTRAL_SCALE: f64 = -1.0;

pub fn hn_from_complex(u: f64, v: &[(f64, f64)]) -> Vec<f64> {
    let n = v.len();
    let mut x = vec![0.0; 2 * n + 1];
    x[0] = u / HN_CENTRAL_SCALE;
    for (k, &(re, im)) in v.iter().enumerate() {
        x[1 + k] = re;
        x[1 + n + k] = im;
    }
    x
}

pub fn hn_to_complex(x: &[f64]) -> (f64, Vec<(f64, f64)>) {
    let n = (x.len() - 1) / 2;
    (HN_CENTRAL_SCALE * x[0], (0..n).map(|k| (x[1 + k], x[1 + n + k])).collect())
}

/// Group law in the complex presentation:
/// (u,v)*(u',v') = (u + u' - Im(sum v'_k conj(v_k))/2, v + v').
pub fn hn_complex_law(a: (f64, &[(f64, f64)]), b: (f64, &[(f64, f64)])) -> (f64, Vec<(f64, f64)>) {
    let mut im = 0.0;
    for (v, w) in a.1.iter().zip(b.1) {
        // Im(w * conj(v))
        im += w.1 * v.0 - w.0 * v.1;
    }
    let v = a.1.iter().zip(b.1).map(|(p, q)| (p.0 + q.0, p.1 + q.1)).collect();
    (a.0 + b.0 - 0.5 * im, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_is_half_bracket() {
        let s = BchSeries::new(2).unwrap();
        let find = |w: &[bool]| s.terms().iter().find(|t| t.0 == w).map(|t| t.1);
        assert_eq!(find(&[false]), Some(1.0));
        assert_eq!(find(&[true]), Some(1.0));
        // [x,y]/4 - [y,x]/4
        assert_eq!(find(&[false, true]), Some(0.25));
        assert_eq!(find(&[true, false]), Some(-0.25));
        let h = LieAlgebra::heisenberg(1);
        let got = s.eval(&h, &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]);
        assert_eq!(got, vec![0.5, 1.0, 1.0]);
    }

    #[test]
    fn order_three_coefficients() {
        // x + y + [x,y]/2 + [x,[x,y]]/12 - [y,[x,y]]/12
        let h = LieAlgebra::heisenberg(1);
        let s = BchSeries::new(3).unwrap();
        // evaluate on a non-nilpotent algebra against the known closed form
        let a = LieAlgebra::ax_plus_b();
        let x = [0.3, -0.2];
        let y = [-0.1, 0.4];
        let got = s.eval(&a, &x, &y);
        let xy = a.bracket(&x, &y).unwrap();
        let xxy = a.bracket(&x, &xy).unwrap();
        let yxy = a.bracket(&y, &xy).unwrap();
        for k in 0..2 {
            let want = x[k] + y[k] + 0.5 * xy[k] + xxy[k] / 12.0 - yxy[k] / 12.0;
            assert!((got[k] - want).abs() < 1e-15, "{k}: {} vs {}", got[k], want);
        }
        assert!(!bch_compose(&h, &[0.; 3], &[0.; 3], 3).unwrap().truncated);
        assert!(bch_compose(&a, &x, &y, 3).unwrap().truncated);
    }

    #[test]
    fn order_zero_rejected() {
        assert!(BchSeries::new(0).is_err());
    }

    #[test]
    fn abelian_sum() {
        let a = LieAlgebra::abelian(3);
        let r = bch_compose(&a, &[1., 2., 3.], &[-0.5, 0.25, 4.], 4).unwrap();
        assert_eq!(r.point, vec![0.5, 2.25, 7.0]);
    }

    #[test]
    fn identity_and_inverse() {
        let h = LieAlgebra::heisenberg(2);
        let x = [0.3, -1.2, 0.7, 2.0, -0.4];
        let z = [0.0; 5];
        assert_eq!(bch_compose(&h, &x, &z, 2).unwrap().point, x.to_vec());
        assert_eq!(bch_compose(&h, &z, &x, 2).unwrap().point, x.to_vec());
        let r = bch_compose(&h, &x, &group_inverse(&x), 2).unwrap().point;
        assert!(r.iter().all(|v| v.abs() <= 1e-15));
        assert_eq!(group_inverse(&z), z.to_vec());
    }

    #[test]
    fn complex_coordinates_round_trip() {
        let x = hn_from_complex(0.7, &[(1.0, -2.0)]);
        let (u, v) = hn_to_complex(&x);
        assert_eq!(u, 0.7);
        assert_eq!(v, vec![(1.0, -2.0)]);
    }
}
