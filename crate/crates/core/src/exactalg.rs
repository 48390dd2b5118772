//! Dense exact linear algebra: rank, kernels, products.
//!
//! Over Q the echelon form is produced by fraction-free (Bareiss)
//! elimination on an integer copy of the matrix; over F_p by ordinary
//! Gaussian elimination. Both feed the same back-substitution for kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Row echelon form: row `i < pivots.len()` has its first nonzero entry in
/// column `pivots[i]`; rows past the rank are zero.
#[derive(Clone)]
pub struct Echelon<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_i64(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product. Panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn scale_row(&mut self, i: usize, c: &F) {
        for x in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *x = x.clone() * c.clone();
        }
    }

    pub fn echelon(&self) -> Echelon<F> {
        F::echelon(self)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.echelon().pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the right null space, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        if self.cols == 0 {
            return Vec::new();
        }
        if self.rows == 0 {
            return (0..self.cols)
                .map(|j| (0..self.cols).map(|i| if i == j { F::one() } else { F::zero() }).collect())
                .collect();
        }
        let ech = self.echelon();
        kernel_from_echelon(&ech)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> =
                self.data[i * self.cols..(i + 1) * self.cols].iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: fmt::Display> fmt::Debug for Echelon<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Echelon").field("matrix", &self.matrix).field("pivots", &self.pivots).finish()
    }
}

fn kernel_from_echelon<F: Scalar>(ech: &Echelon<F>) -> Vec<Vec<F>> {
    let m = &ech.matrix;
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::with_capacity(cols - ech.pivots.len());
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![F::zero(); cols];
        x[free] = F::one();
        for (i, &pc) in ech.pivots.iter().enumerate().rev() {
            let mut s = F::zero();
            for j in pc + 1..cols {
                if !x[j].is_zero() && !m[(i, j)].is_zero() {
                    s = s + m[(i, j)].clone() * x[j].clone();
                }
            }
            if !s.is_zero() {
                x[pc] = -s / m[(i, pc)].clone();
            }
        }
        basis.push(x);
    }
    basis
}

/// Gaussian elimination over a field, pivots normalized to 1.
pub fn gauss_echelon<F: Scalar>(m: &Matrix<F>) -> Echelon<F> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].inverse();
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in r + 1..rows {
            let f = a[(i, c)].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                let t = a[(r, j)].clone();
                if !t.is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, pivots }
}

/// Fraction-free elimination over Q.
///
/// Each row is first scaled by the lcm of its denominators; the integer
/// matrix is then reduced with Bareiss' exact-division update, so every
/// intermediate entry is a minor of the scaled input.
pub fn bareiss_echelon(m: &Matrix<Rational>) -> Echelon<Rational> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<BigInt> = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        a.extend(row.iter().map(|q| q.numer() * (&lcm / q.denom())));
    }
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + c].clone();
            for j in c + 1..cols {
                let v = &piv * &a[i * cols + j] - &lead * &a[r * cols + j];
                a[i * cols + j] = if prev.is_one() { v } else { v / &prev };
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let data = a.into_iter().map(Rational::from_integer).collect();
    Echelon { matrix: Matrix { rows, cols, data }, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::F101;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn identity_and_zero_rank() {
        assert_eq!(Matrix::<Rational>::identity(3).rank(), 3);
        assert_eq!(Matrix::<Rational>::zeros(1, 4).rank(), 0);
        assert_eq!(Matrix::<F101>::zeros(1, 4).kernel_basis().len(), 4);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(Matrix::<Rational>::identity(2).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = q(&[&[1, 1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn empty_shapes() {
        let m = Matrix::<Rational>::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
        let m = Matrix::<Rational>::zeros(3, 0);
        assert_eq!(m.rank(), 0);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn bareiss_handles_skipped_columns_and_fractions() {
        let mut m = q(&[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4], &[1, 0, 0, 0]]);
        m.scale_row(1, &Rational::new(1.into(), 3.into()));
        let e = bareiss_echelon(&m);
        assert_eq!(e.pivots, vec![0, 1, 3]);
        assert_eq!(m.rank(), 3);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    // Plain Gaussian elimination over Q is the oracle for the fraction-free path.
    fn small_int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_gauss(rows in small_int_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = q(&refs);
            let a = bareiss_echelon(&m);
            let b = gauss_echelon(&m);
            prop_assert_eq!(a.pivots, b.pivots);
        }

        #[test]
        fn rank_nullity_and_exact_kernel(rows in small_int_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = q(&refs);
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
            let kernel = Matrix::from_rows(k.clone());
            if !k.is_empty() {
                prop_assert_eq!(kernel.rank(), k.len());
            }
        }

        #[test]
        fn rank_invariant_under_row_scaling(rows in small_int_matrix(), scales in prop::collection::vec((1i64..7, 1i64..7, any::<bool>()), 6)) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = q(&refs);
            let mut s = m.clone();
            for i in 0..s.rows() {
                let (a, b, neg) = scales[i];
                let c = Rational::new(BigInt::from(if neg { -a } else { a }), BigInt::from(b));
                s.scale_row(i, &c);
            }
            prop_assert_eq!(m.rank(), s.rank());
        }

        #[test]
        fn modular_rank_never_exceeds_rational_rank(rows in small_int_matrix()) {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let over_q = q(&refs);
            let over_p: Matrix<F101> = Matrix::from_i64_rows(&refs);
            prop_assert!(over_p.rank() <= over_q.rank());
            let k = over_p.kernel_basis();
            prop_assert_eq!(over_p.rank() + k.len(), over_p.cols());
            for v in &k {
                prop_assert!(over_p.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }
}
