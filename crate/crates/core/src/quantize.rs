//! Polynomial observables, Poisson brackets, closure to a finite-dimensional
//! Lie algebra and its operator realizations.

use crate::error::{arg, Error, Result};
use crate::lie::LieAlgebra;
use crate::linop::FrameSpec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exponents over `(q_1..q_n, p_1..p_n)`.
pub type Monomial = Vec<u32>;

/// Graded order: total degree first, then `q` before `p` (lexicographically
/// larger exponent vectors come first within a degree).
pub fn monomial_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyObservable {
    n: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl PolyObservable {
    pub fn zero(n: usize) -> Self {
        PolyObservable { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, exps: Monomial, coeff: f64) -> Result<Self> {
        if exps.len() != 2 * n {
            return arg(format!("monomial needs {} exponents, got {}", 2 * n, exps.len()));
        }
        let mut p = Self::zero(n);
        if coeff != 0.0 {
            p.terms.insert(exps, coeff);
        }
        Ok(p)
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::monomial(n, vec![0; 2 * n], c).unwrap()
    }

    /// `q_j`, zero-based.
    pub fn q(n: usize, j: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[j] = 1;
        Self::monomial(n, e, 1.0).unwrap()
    }

    /// `p_j`, zero-based.
    pub fn p(n: usize, j: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + j] = 1;
        Self::monomial(n, e, 1.0).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, f64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// Largest monomial in the graded order.
    pub fn leading(&self) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| monomial_cmp(a, b))
    }

    fn add_term(&mut self, m: Monomial, c: f64) {
        let v = self.terms.entry(m.clone()).or_insert(0.0);
        *v += c;
        if *v == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "observables over different phase spaces");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    pub fn scale(&self, a: f64) -> Self {
        Self::zero(self.n).axpy(a, self)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "observables over different phase spaces");
        let mut out = Self::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Partial derivative in coordinate `k` of `(q, p)`.
    pub fn derivative(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            if m[k] > 0 {
                let mut e = m.clone();
                e[k] -= 1;
                out.add_term(e, c * m[k] as f64);
            }
        }
        out
    }

    /// Drops coefficients with magnitude at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.abs() > tol);
    }
}

fn monomial_name(m: &Monomial, n: usize) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let var = if k < n { "q" } else { "p" };
        let idx = if n == 1 { String::new() } else { format!("{}", k % n + 1) };
        parts.push(if e == 1 { format!("{var}{idx}") } else { format!("{var}{idx}^{e}") });
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for PolyObservable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| monomial_cmp(b, a));
        for (i, m) in keys.into_iter().enumerate() {
            let c = self.terms[m];
            let name = monomial_name(m, self.n);
            let sign = if c < 0.0 { "-" } else if i > 0 { "+" } else { "" };
            let a = c.abs();
            if a == 1.0 && name != "1" {
                write!(f, "{sign}{name}")?;
            } else if name == "1" {
                write!(f, "{sign}{a}")?;
            } else {
                write!(f, "{sign}{a}*{name}")?;
            }
        }
        Ok(())
    }
}

/// `sum_j (da/dq_j db/dp_j - da/dp_j db/dq_j)`.
pub fn poisson_bracket(a: &PolyObservable, b: &PolyObservable) -> PolyObservable {
    assert_eq!(a.n, b.n, "observables over different phase spaces");
    let n = a.n;
    let mut out = PolyObservable::zero(n);
    for j in 0..n {
        out = out.add(&a.derivative(j).mul(&b.derivative(n + j)));
        out = out.sub(&a.derivative(n + j).mul(&b.derivative(j)));
    }
    out
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub algebra: LieAlgebra,
    /// Reduced echelon basis, sorted by leading monomial.
    pub basis: Vec<PolyObservable>,
}

const ZERO_TOL: f64 = 1e-12;

struct Echelon {
    rows: Vec<PolyObservable>,
}

impl Echelon {
    fn reduce(&self, v: &PolyObservable) -> PolyObservable {
        let scale = v.max_abs().max(1.0);
        let mut r = v.clone();
        for b in &self.rows {
            let c = r.coeff(b.leading().unwrap());
            if c != 0.0 {
                r = r.axpy(-c, b);
            }
        }
        r.prune(ZERO_TOL * scale);
        r
    }

    fn insert(&mut self, v: PolyObservable) {
        let lead = v.leading().unwrap().clone();
        let v = v.scale(1.0 / v.coeff(&lead));
        for b in self.rows.iter_mut() {
            let c = b.coeff(&lead);
            if c != 0.0 {
                *b = b.axpy(-c, &v);
                b.terms.remove(&lead);
            }
        }
        self.rows.push(v);
    }
}

/// Smallest subspace containing `gens` and closed under the Poisson bracket,
/// together with its structure constants `{b_i, b_j} = sum_k c_ij^k b_k`.
pub fn close_under_bracket(gens: &[PolyObservable], max_dim: usize) -> Result<Closure> {
    let Some(first) = gens.first() else {
        return arg("no generators");
    };
    let n = first.n;
    if gens.iter().any(|g| g.n != n) {
        return arg("generators over different phase spaces");
    }
    let mut ech = Echelon { rows: Vec::new() };
    for g in gens {
        let r = ech.reduce(g);
        if !r.is_zero() {
            ech.insert(r);
            if ech.rows.len() > max_dim {
                return Err(Error::Growth { reached: ech.rows.len(), cap: max_dim });
            }
        }
    }
    if ech.rows.is_empty() {
        return arg("all generators vanish");
    }
    loop {
        let mut added = false;
        let snapshot = ech.rows.clone();
        for i in 0..snapshot.len() {
            for j in i + 1..snapshot.len() {
                let r = ech.reduce(&poisson_bracket(&snapshot[i], &snapshot[j]));
                if !r.is_zero() {
                    ech.insert(r);
                    added = true;
                    if ech.rows.len() > max_dim {
                        return Err(Error::Growth { reached: ech.rows.len(), cap: max_dim });
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut basis = ech.rows;
    basis.sort_by(|a, b| monomial_cmp(a.leading().unwrap(), b.leading().unwrap()));
    let d = basis.len();
    let mut c = vec![0.0; d * d * d];
    for i in 0..d {
        for j in 0..d {
            let br = poisson_bracket(&basis[i], &basis[j]);
            let coords: Vec<f64> = basis.iter().map(|b| br.coeff(b.leading().unwrap())).collect();
            let mut rest = br.clone();
            for (k, b) in basis.iter().enumerate() {
                rest = rest.axpy(-coords[k], b);
            }
            let res = rest.max_abs();
            if res > 1e-10 * br.max_abs().max(1.0) {
                return Err(Error::Validation(format!("closure residual {res:e} for pair ({i}, {j})")));
            }
            for k in 0..d {
                c[(i * d + j) * d + k] = coords[k];
            }
        }
    }
    let names = basis.iter().map(|b| b.to_string()).collect();
    Ok(Closure { algebra: LieAlgebra::new(names, c)?, basis })
}

/// Largest coefficient left over when re-expanding every pairwise bracket
/// of `basis` in `basis` via the structure constants of `alg`.
pub fn closure_residual(alg: &LieAlgebra, basis: &[PolyObservable]) -> f64 {
    let d = basis.len();
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let mut r = poisson_bracket(&basis[i], &basis[j]);
            for (k, b) in basis.iter().enumerate() {
                r = r.axpy(-alg.constant(i, j, k), b);
            }
            worst = worst.max(r.max_abs());
        }
    }
    worst
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantMode {
    Pdo,
    Classical,
    Group,
}

impl FromStr for QuantMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pdo" => Ok(QuantMode::Pdo),
            "classical" => Ok(QuantMode::Classical),
            "group" => Ok(QuantMode::Group),
            _ => Err(Error::Argument(format!("unknown mode '{s}' (pdo, classical, group)"))),
        }
    }
}

/// Checks that `alg` is `h_n` in the frame `(1, q_1..q_n, p_1..p_n)` with
/// `[q_j, p_j] = 1`, returning `n`.
pub fn heisenberg_rank(alg: &LieAlgebra) -> Result<usize> {
    let d = alg.dim();
    if d < 3 || d % 2 == 0 {
        return Err(Error::Unsupported(format!("dimension {d} is not 2n+1 with n >= 1")));
    }
    let n = (d - 1) / 2;
    let names = alg.names();
    let mut bad = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..d {
                let want = if k == 0 && i >= 1 && i <= n && j == i + n { 1.0 } else { 0.0 };
                let got = alg.constant(i, j, k);
                if (got - want).abs() > 1e-12 {
                    bad.push(format!("[{}, {}] has {} component {got}, expected {want}", names[i], names[j], names[k]));
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(n)
    } else {
        Err(Error::Unsupported(format!("not h_{n} in Heisenberg form: {}", bad.join("; "))))
    }
}

/// Frame specifications realizing `alg` (which must be `h_n`). Frames obey
/// `i[X_a, X_b] = sum_k c_ab^k X_k`, so in the pdo mode the central element
/// is `-hbar I`.
///
/// Grid dimensions: pdo `n`, classical `2n` (`q` then `p` axes), group
/// `2n + 1` (axis 0 central).
pub fn realize(alg: &LieAlgebra, mode: QuantMode, hbar: f64) -> Result<Vec<FrameSpec>> {
    let n = heisenberg_rank(alg)?;
    let mut specs = Vec::with_capacity(2 * n + 1);
    match mode {
        QuantMode::Pdo => {
            specs.push(FrameSpec::Identity { scalar: -hbar });
            specs.extend((0..n).map(|j| FrameSpec::Multiplication { axis: j, scale: 1.0 }));
            specs.extend((0..n).map(|j| FrameSpec::Momentum { axis: j, scale: hbar }));
        }
        QuantMode::Classical => {
            specs.push(FrameSpec::Identity { scalar: 0.0 });
            specs.extend((0..2 * n).map(|j| FrameSpec::Multiplication { axis: j, scale: 1.0 }));
        }
        QuantMode::Group => {
            specs.push(FrameSpec::HeisenbergLeft { index: 0, scale: 4.0 });
            specs.extend((1..=2 * n).map(|k| FrameSpec::HeisenbergLeft { index: k, scale: 1.0 }));
        }
    }
    Ok(specs)
}

pub fn realization_grid_dim(mode: QuantMode, n: usize) -> usize {
    match mode {
        QuantMode::Pdo => n,
        QuantMode::Classical => 2 * n,
        QuantMode::Group => 2 * n + 1,
    }
}

/// Parses a comma separated list of polynomials such as
/// `"q^2, p^2, q*p"` or `"q1*p1 - 2*q2^3, p2"`. Unindexed `q`/`p` mean index
/// 1; the number of degrees of freedom is the largest index seen.
pub fn parse_gens(text: &str) -> Result<Vec<PolyObservable>> {
    let mut raw: Vec<Vec<(f64, Vec<(char, usize, u32)>)>> = Vec::new();
    let mut n = 1;
    for item in text.split(',') {
        let item: String = item.chars().filter(|c| !c.is_whitespace()).collect();
        if item.is_empty() {
            return Err(Error::Parse(format!("empty generator in '{text}'")));
        }
        let mut terms = Vec::new();
        for (sign, body) in split_terms(&item)? {
            let mut coeff = sign;
            let mut factors = Vec::new();
            for f in body.split('*') {
                if f.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{item}'")));
                }
                let (base, exp) = match f.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in '{f}'")))?),
                    None => (f, 1),
                };
                let mut chars = base.chars();
                match chars.next() {
                    Some(v @ ('q' | 'p')) => {
                        let rest: String = chars.collect();
                        let idx = if rest.is_empty() {
                            1
                        } else {
                            rest.parse::<usize>().map_err(|_| Error::Parse(format!("bad index in '{base}'")))?
                        };
                        if idx == 0 {
                            return Err(Error::Parse(format!("indices start at 1 in '{base}'")));
                        }
                        n = n.max(idx);
                        factors.push((v, idx, exp));
                    }
                    _ => {
                        let v: f64 = base.parse().map_err(|_| Error::Parse(format!("cannot read '{f}'")))?;
                        coeff *= v.powi(exp as i32);
                    }
                }
            }
            terms.push((coeff, factors));
        }
        raw.push(terms);
    }
    Ok(raw
        .into_iter()
        .map(|terms| {
            let mut p = PolyObservable::zero(n);
            for (c, factors) in terms {
                let mut e = vec![0u32; 2 * n];
                for (v, idx, exp) in factors {
                    let k = if v == 'q' { idx - 1 } else { n + idx - 1 };
                    e[k] += exp;
                }
                p.add_term(e, c);
            }
            p
        })
        .collect())
}

fn split_terms(item: &str) -> Result<Vec<(f64, &str)>> {
    let mut out = Vec::new();
    let bytes = item.as_bytes();
    let mut start = 0;
    let mut sign = 1.0;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        sign = if bytes[0] == b'-' { -1.0 } else { 1.0 };
        start = 1;
    }
    let mut i = start;
    while i <= bytes.len() {
        // a sign not preceded by an exponent marker or 'e' splits terms
        let at_end = i == bytes.len();
        let split = !at_end && (bytes[i] == b'+' || bytes[i] == b'-') && i > start && !matches!(bytes[i - 1], b'^' | b'e' | b'E' | b'*');
        if at_end || split {
            let body = &item[start..i];
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in '{item}'")));
            }
            out.push((sign, body));
            if !at_end {
                sign = if bytes[i] == b'-' { -1.0 } else { 1.0 };
                start = i + 1;
            }
        }
        i += 1;
    }
    Ok(out)
}
