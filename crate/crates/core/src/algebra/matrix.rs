use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use super::scalar::{q, Scalar};
use crate::error::{Error, Result};

/// Dense rectangular matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Builds a matrix from rows. Panics when the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
            .with_cols(self.cols)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    // `from_rows` on an empty row list loses the column count.
    fn with_cols(mut self, cols: usize) -> Matrix {
        if self.rows == 0 {
            self.cols = cols;
        }
        self
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row-echelon form and rank. Zero rows are kept at the bottom,
    /// so the output has the same shape as the input.
    pub fn reduced_echelon(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    /// Reduced row-echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// The nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space.
    pub fn row_space(&self) -> Matrix {
        let (m, pivots) = self.rref_with_pivots();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        m.select_rows(&keep)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &pivot;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(r.select_cols(&cols))
    }

    /// Solves `self * x = b` when the solution is unique.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() != self.cols || pivots.contains(&self.cols) {
            return None;
        }
        Some((0..self.cols).map(|i| r[(i, self.cols)].clone()).collect())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn echelon_examples() {
        let (r, k) = Matrix::from_i64(&[&[1, 2], &[2, 4]]).reduced_echelon();
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(k, 1);

        let (r, k) = Matrix::identity(3).reduced_echelon();
        assert_eq!(r, Matrix::identity(3));
        assert_eq!(k, 3);

        // swap, then nothing to clear
        let (r, k) = Matrix::from_i64(&[&[0, 1], &[1, 0]]).reduced_echelon();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(k, 2);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.determinant(), q(1));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        let s = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant(), q(0));
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn solve_unique() {
        let m = Matrix::from_i64(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.solve(&[q(3), q(1)]), Some(vec![q(2), q(1)]));
        let s = Matrix::from_i64(&[&[1, 1], &[2, 2]]);
        assert_eq!(s.solve(&[q(1), q(2)]), None);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |v| {
                Matrix::from_rows(v.chunks(c).map(|row| row.iter().map(|&x| q(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn echelon_is_idempotent(m in small_matrix()) {
            let (once, k1) = m.reduced_echelon();
            let (twice, k2) = once.reduced_echelon();
            prop_assert_eq!(&once, &twice);
            prop_assert_eq!(k1, k2);
        }

        #[test]
        fn echelon_preserves_row_span(m in small_matrix()) {
            // stacking the original rows onto the echelon basis adds no rank
            let basis = m.row_space();
            let mut rows = basis.to_rows();
            rows.extend(m.to_rows());
            prop_assert_eq!(Matrix::from_rows(rows).rank(), basis.rows());
            prop_assert_eq!(basis.rows(), m.rank());
        }
    }
}
