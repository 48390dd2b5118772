//! Graded polynomial ring `F[x_0, ..., x_n]`.
//!
//! Monomial bases of graded pieces (section bases of `O(k)`) and their
//! Serre-dual bases (top cohomology of `O(m)`), matrices of linear forms,
//! the induced scalar matrices on both kinds of bases, and minors.
//!
//! Bases are listed in descending graded reverse lexicographic order. A Serre
//! monomial `x^a` (all `a_i <= -1`) is listed at the position of the section
//! monomial `x^(-a-1)`, which makes the two kinds of matrices exact
//! transposes of each other under the residue pairing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::exactalg::Matrix;
use crate::scalar::Scalar;

/// Exponent vector; entries may be negative for Serre-basis monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn new(exponents: Vec<i32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_section(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn is_serre(&self) -> bool {
        self.0.iter().all(|&e| e <= -1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// The residue-pairing partner `-a - 1` of an exponent vector.
    pub fn serre_partner(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| -e - 1).collect())
    }
}

/// Graded reverse lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflow")
}

/// `dim H^0(P^n, O(k))`.
pub fn graded_dim(n: usize, k: i64) -> usize {
    if k < 0 {
        0
    } else {
        binomial(n as i64 + k, n as i64)
    }
}

/// `dim H^n(P^n, O(m))`.
pub fn serre_dim(n: usize, m: i64) -> usize {
    if m < -(n as i64) {
        binomial(-m - 1, n as i64)
    } else {
        0
    }
}

/// Monomials of degree `d` in `n + 1` variables, descending grevlex.
pub fn graded_basis(n: usize, d: i64) -> Vec<Monomial> {
    if d < 0 {
        return Vec::new();
    }
    let nvars = n + 1;
    let mut out = Vec::with_capacity(graded_dim(n, d));
    let mut cur = vec![0i32; nvars];
    fn rec(i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, d as i32, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Serre-dual monomials spanning `H^n(P^n, O(m))`.
pub fn serre_basis(n: usize, m: i64) -> Vec<Monomial> {
    graded_basis(n, -m - n as i64 - 1).iter().map(Monomial::serre_partner).collect()
}

fn index_of(basis: &[Monomial]) -> HashMap<&Monomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Homogeneous polynomial or general polynomial with terms keyed by
/// monomial. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), F::one())])
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial has wrong variable count");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = existing.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc + t
        })
    }
}

impl<F: Scalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let is_const = m.degree() == 0 && m.is_section();
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if is_const {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `Σ c_i x_i`, coefficient of `x_i` at index `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> LinearForm<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(nvars: usize) -> Self {
        LinearForm { coeffs: vec![F::zero(); nvars] }
    }

    /// `c * x_i`.
    pub fn var(nvars: usize, i: usize, c: F) -> Self {
        let mut f = Self::zero(nvars);
        f.coeffs[i] = c;
        f
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        LinearForm { coeffs: coeffs.iter().map(|&c| F::from_i64(c)).collect() }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    pub fn to_polynomial(&self) -> Polynomial<F> {
        let n = self.nvars();
        Polynomial::from_terms(n, self.coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    /// Sets `x_i = 0` and removes the variable.
    pub fn drop_variable(&self, i: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.remove(i);
        LinearForm { coeffs }
    }

    pub fn neg(&self) -> Self {
        LinearForm { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<F: Scalar> fmt::Display for LinearForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Matrix with linear-form entries over `P^n`, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearFormMatrix<F> {
    n: usize,
    rows: usize,
    cols: usize,
    entries: Vec<LinearForm<F>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("linear form has {got} coefficients, expected {expected}")]
    FormLength { expected: usize, got: usize },
}

impl<F: Scalar> LinearFormMatrix<F> {
    pub fn new(n: usize, rows: usize, cols: usize, entries: Vec<LinearForm<F>>) -> Result<Self, ShapeError> {
        if entries.len() != rows * cols {
            return Err(ShapeError::EntryCount { expected: rows * cols, got: entries.len() });
        }
        if let Some(f) = entries.iter().find(|f| f.nvars() != n + 1) {
            return Err(ShapeError::FormLength { expected: n + 1, got: f.nvars() });
        }
        Ok(LinearFormMatrix { n, rows, cols, entries })
    }

    pub fn zeros(n: usize, rows: usize, cols: usize) -> Self {
        LinearFormMatrix { n, rows, cols, entries: vec![LinearForm::zero(n + 1); rows * cols] }
    }

    pub fn from_fn(n: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LinearForm<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.nvars(), n + 1);
                entries.push(e);
            }
        }
        LinearFormMatrix { n, rows, cols, entries }
    }

    /// Builds from rows of coefficient vectors; panics on inconsistent input.
    pub fn from_i64(n: usize, rows: &[&[&[i64]]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(n, r, c, |i, j| LinearForm::from_i64(rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LinearForm<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: LinearForm<F>) {
        assert_eq!(f.nvars(), self.n + 1);
        self.entries[i * self.cols + j] = f;
    }

    pub fn entries(&self) -> &[LinearForm<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LinearForm::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Substitutes `x_i = 0` everywhere and deletes the variable.
    pub fn drop_variable(&self, i: usize) -> Self {
        assert!(self.n >= 1 && i <= self.n);
        LinearFormMatrix {
            n: self.n - 1,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|f| f.drop_variable(i)).collect(),
        }
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let nv = self.n + 1;
        Self::from_fn(self.n, self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => LinearForm::zero(nv),
            }
        })
    }

    /// Entry-wise quadratic forms of the product `self * rhs`.
    pub fn compose(&self, rhs: &Self) -> Vec<Vec<Polynomial<F>>> {
        assert_eq!(self.cols, rhs.rows);
        let nv = self.n + 1;
        let left: Vec<Polynomial<F>> = self.entries.iter().map(LinearForm::to_polynomial).collect();
        let right: Vec<Polynomial<F>> = rhs.entries.iter().map(LinearForm::to_polynomial).collect();
        (0..self.rows)
            .map(|i| {
                (0..rhs.cols)
                    .map(|j| {
                        (0..self.cols).fold(Polynomial::zero(nv), |acc, k| {
                            acc.add(&left[i * self.cols + k].mul(&right[k * rhs.cols + j]))
                        })
                    })
                    .collect()
            })
            .collect()
    }
}

impl<F: Scalar> fmt::Display for LinearFormMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Scalar matrix of `⊕_cols S_k -> ⊕_rows S_{k+1}` induced by `m`.
///
/// Column `j * dim S_k + s` is source basis monomial `s` in summand `j`;
/// row `i * dim S_{k+1} + t` likewise.
pub fn multiply_matrix<F: Scalar>(m: &LinearFormMatrix<F>, k: i64) -> Matrix<F> {
    let n = m.n();
    let src = graded_basis(n, k);
    let tgt = graded_basis(n, k + 1);
    let idx = index_of(&tgt);
    let (sd, td) = (src.len(), tgt.len());
    let mut out: Matrix<F> = Matrix::zeros(m.rows() * td, m.cols() * sd);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let form = m.get(i, j);
            for (l, c) in form.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (s, mono) in src.iter().enumerate() {
                    let t = idx[&mono.times_var(l)];
                    let cell = &mut out[(i * td + t, j * sd + s)];
                    *cell = cell.clone() + c.clone();
                }
            }
        }
    }
    out
}

/// Scalar matrix of `⊕_cols H^n(O(m)) -> ⊕_rows H^n(O(m+1))` on Serre bases.
///
/// `x_l` sends `x^a` to `x^(a + e_l)`, or to zero when `a_l = -1`.
pub fn serre_multiply_matrix<F: Scalar>(m: &LinearFormMatrix<F>, twist: i64) -> Matrix<F> {
    let n = m.n();
    let src = serre_basis(n, twist);
    let tgt = serre_basis(n, twist + 1);
    let idx = index_of(&tgt);
    let (sd, td) = (src.len(), tgt.len());
    let mut out: Matrix<F> = Matrix::zeros(m.rows() * td, m.cols() * sd);
    if td == 0 || sd == 0 {
        return out;
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let form = m.get(i, j);
            for (l, c) in form.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (s, mono) in src.iter().enumerate() {
                    if mono.exponents()[l] == -1 {
                        continue;
                    }
                    let t = idx[&mono.times_var(l)];
                    let cell = &mut out[(i * td + t, j * sd + s)];
                    *cell = cell.clone() + c.clone();
                }
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `size x size` minors, row subsets outer and column subsets inner,
/// both in lexicographic order. Zero minors are kept.
pub fn minors<F: Scalar>(m: &LinearFormMatrix<F>, size: usize) -> Vec<Polynomial<F>> {
    assert!(size <= m.rows().min(m.cols()), "minor size exceeds matrix");
    assert!(m.cols() <= 64, "too many columns");
    let nv = m.n() + 1;
    let polys: Vec<Polynomial<F>> = m.entries().iter().map(LinearForm::to_polynomial).collect();
    let col_sets = subsets(m.cols(), size);
    let mut out = Vec::new();
    for rows in subsets(m.rows(), size) {
        // Determinants of the leading |C| chosen rows against column set C,
        // expanded along the last of those rows.
        let mut memo: HashMap<u64, Polynomial<F>> = HashMap::new();
        memo.insert(0, Polynomial::constant(nv, F::one()));
        for cols in &col_sets {
            let mask = cols.iter().fold(0u64, |acc, &c| acc | 1 << c);
            out.push(minor_rec(&polys, m.cols(), &rows, mask, &mut memo));
        }
    }
    out
}

fn minor_rec<F: Scalar>(
    polys: &[Polynomial<F>],
    ncols: usize,
    rows: &[usize],
    mask: u64,
    memo: &mut HashMap<u64, Polynomial<F>>,
) -> Polynomial<F> {
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let t = mask.count_ones() as usize;
    let r = rows[t - 1];
    let nv = polys[0].nvars();
    let mut acc = Polynomial::zero(nv);
    let mut pos = 0;
    for c in 0..ncols {
        if mask & (1 << c) == 0 {
            continue;
        }
        let entry = &polys[r * ncols + c];
        if !entry.is_zero() {
            let sub = minor_rec(polys, ncols, rows, mask & !(1 << c), memo);
            if !sub.is_zero() {
                let term = entry.mul(&sub);
                acc = if (t - 1 + pos).is_multiple_of(2) { acc.add(&term) } else { acc.sub(&term) };
            }
        }
        pos += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, F101};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    type Q = Rational;

    #[test]
    fn graded_and_serre_dims() {
        assert_eq!(graded_dim(3, 1), 4);
        assert_eq!(graded_dim(2, 3), 10);
        assert_eq!(graded_dim(3, -1), 0);
        assert_eq!(serre_dim(3, -4), 1);
        assert_eq!(serre_dim(3, -5), 4);
        assert_eq!(serre_dim(3, -3), 0);
        for n in 1..6 {
            for m in -12..4 {
                assert_eq!(serre_dim(n, m), graded_dim(n, -m - n as i64 - 1));
                assert_eq!(serre_basis(n, m).len(), serre_dim(n, m));
                assert!(serre_basis(n, m).iter().all(|a| a.is_serre() && a.degree() == m));
            }
        }
    }

    #[test]
    fn basis_order_is_grevlex_descending() {
        let b = graded_basis(2, 2);
        let shown: Vec<String> = b.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn multiply_single_variable() {
        let m = LinearFormMatrix::<Q>::from_i64(1, &[&[&[1, 0]]]);
        let a = multiply_matrix(&m, 0);
        assert_eq!(a, Matrix::from_i64_rows(&[&[1], &[0]]));
        let m = LinearFormMatrix::<Q>::from_i64(2, &[&[&[1, 0, 0]]]);
        assert_eq!(multiply_matrix(&m, -1).cols(), 0);
    }

    #[test]
    fn serre_shift_rule_on_p1() {
        let m = LinearFormMatrix::<Q>::from_i64(1, &[&[&[1, 0]]]);
        let src = serre_basis(1, -3);
        assert_eq!(src, vec![Monomial::new(vec![-2, -1]), Monomial::new(vec![-1, -2])]);
        let a = serre_multiply_matrix(&m, -3);
        // x^(-2,-1) -> x^(-1,-1), x^(-1,-2) -> 0
        assert_eq!(a, Matrix::from_i64_rows(&[&[1, 0]]));
        assert_eq!(serre_multiply_matrix(&m, -2).rows(), 0);
    }

    #[test]
    fn two_by_two_determinant() {
        let m = LinearFormMatrix::<Q>::from_i64(3, &[&[&[1, 0, 0, 0], &[0, 1, 0, 0]], &[&[0, 0, 1, 0], &[0, 0, 0, 1]]]);
        let ms = minors(&m, 2);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].to_string(), "-x1*x2 + x0*x3");
    }

    #[test]
    fn zero_size_minor_is_one() {
        let m = LinearFormMatrix::<Q>::zeros(2, 3, 0);
        let ms = minors(&m, 0);
        assert_eq!(ms, vec![Polynomial::constant(3, Q::from_i64(1))]);
    }

    fn random_matrix(n: usize, rows: usize, cols: usize, seed: u64) -> LinearFormMatrix<F101> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        LinearFormMatrix::from_fn(n, rows, cols, |_, _| {
            LinearForm::new((0..=n).map(|_| F101::sample(&mut rng)).collect())
        })
    }

    // Leibniz permutation sum as the oracle for the memoized expansion.
    fn leibniz(m: &LinearFormMatrix<F101>, rows: &[usize], cols: &[usize]) -> Polynomial<F101> {
        let k = rows.len();
        let nv = m.n() + 1;
        let mut perm: Vec<usize> = (0..k).collect();
        let mut total = Polynomial::zero(nv);
        loop {
            let inversions = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            let mut t = Polynomial::constant(nv, F101::one());
            for i in 0..k {
                t = t.mul(&m.get(rows[i], cols[perm[i]]).to_polynomial());
            }
            total = if inversions % 2 == 0 { total.add(&t) } else { total.sub(&t) };
            // next permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    proptest! {
        #[test]
        fn minors_match_leibniz(seed in 0u64..500, rows in 1usize..5, cols in 1usize..5) {
            let m = random_matrix(2, rows, cols, seed);
            let size = rows.min(cols);
            let ms = minors(&m, size);
            let mut i = 0;
            for r in subsets(rows, size) {
                for c in subsets(cols, size) {
                    prop_assert_eq!(&ms[i], &leibniz(&m, &r, &c));
                    prop_assert!(ms[i].is_homogeneous());
                    i += 1;
                }
            }
        }

        #[test]
        fn minors_of_transpose_agree(seed in 0u64..500, rows in 1usize..5, cols in 1usize..5) {
            let m = random_matrix(2, rows, cols, seed);
            let size = rows.min(cols).min(2);
            let mut a: Vec<String> = minors(&m, size).iter().map(ToString::to_string).collect();
            let mut b: Vec<String> = minors(&m.transpose(), size).iter().map(ToString::to_string).collect();
            a.sort();
            b.sort();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn complex_condition_kills_composite(seed in 0u64..200, k in -1i64..3) {
            // beta = (x0..x2), alpha = A x with A antisymmetric: beta * alpha = 0.
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut a = vec![vec![F101::zero(); 3]; 3];
            for i in 0..3 { for j in i + 1..3 {
                let x = F101::sample(&mut rng);
                a[i][j] = x; a[j][i] = -x;
            }}
            let alpha = LinearFormMatrix::from_fn(2, 3, 1, |i, _| LinearForm::new(a[i].clone()));
            let beta = LinearFormMatrix::from_fn(2, 1, 3, |_, j| LinearForm::var(3, j, F101::one()));
            let prod = multiply_matrix(&beta, k).mul(&multiply_matrix(&alpha, k - 1));
            prop_assert!(prod.is_zero());
        }

        #[test]
        fn serre_matrix_is_transpose_of_section_matrix(seed in 0u64..200, n in 1usize..4, d in 0i64..3, rows in 1usize..3, cols in 1usize..3) {
            let m = random_matrix(n, rows, cols, seed);
            let twist = -d - n as i64 - 2;
            let serre = serre_multiply_matrix(&m, twist);
            let section = multiply_matrix(&m.transpose(), d);
            prop_assert_eq!(serre, section.transpose());
        }
    }
}
