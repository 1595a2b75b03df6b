use std::fmt;

use crate::Int;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Int> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds from rows; panics if they are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, c).expect("ragged rows")
    }

    /// Builds from rows with an explicit column count, so that `0 × c` is representable.
    pub fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Option<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != cols) {
            return None;
        }
        Some(Matrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from columns of a common length.
    pub fn from_cols(cols: Vec<Vec<T>>, rows: usize) -> Option<Self> {
        let c = cols.len();
        if cols.iter().any(|col| col.len() != rows) {
            return None;
        }
        let mut m = Self::zeros(rows, c);
        for (j, col) in cols.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Some(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
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

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let p = a.clone() * rhs[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(i, j)].clone() * a[(k, k)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k · row[src]`
    pub(crate) fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)].clone() * k.clone();
            self[(dst, j)] = self[(dst, j)].clone() + v;
        }
    }

    /// `col[dst] += k · col[src]`
    pub(crate) fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)].clone() * k.clone();
            self[(i, dst)] = self[(i, dst)].clone() + v;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)].clone();
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}
