//! Dense immutable matrices over a [`Domain`], block partitioning and
//! classical exact multiplication.

use std::fmt;

use crate::domain::Domain;
use crate::error::{Error, Result};

/// Row-major dense matrix. Operations never mutate; they return new matrices.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<D> {
    rows: usize,
    cols: usize,
    data: Vec<D>,
}

/// The four equal blocks of an even-order matrix:
///
/// ```text
/// ( top_left     top_right    )     ( A  C )
/// ( bottom_left  bottom_right )  =  ( B  D )
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks<D> {
    pub top_left: Matrix<D>,
    pub top_right: Matrix<D>,
    pub bottom_left: Matrix<D>,
    pub bottom_right: Matrix<D>,
}

impl<D: Domain> Matrix<D> {
    pub fn from_rows(rows: Vec<Vec<D>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::Ragged {
                    row: i,
                    expected: n_cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| D::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> D) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| D::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &D::one())
    }

    /// `s * I` of order `n`.
    pub fn scalar(n: usize, s: &D) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { s.clone() } else { D::zero() })
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

    /// Order of a square matrix.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &D {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[D] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<D> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &D> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<D>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Copy of the rectangular window starting at `(r0, c0)`.
    pub fn window(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: D) -> Self {
        let mut data = self.data.clone();
        data[i * self.cols + j] = value;
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copy with column `j` replaced by `column`.
    pub fn with_column(&self, j: usize, column: &[D]) -> Result<Self> {
        if column.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "column of length {} for a matrix with {} rows",
                column.len(),
                self.rows
            )));
        }
        let mut data = self.data.clone();
        for (i, v) in column.iter().enumerate() {
            data[i * self.cols + j] = v.clone();
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn split_blocks(&self) -> Result<Blocks<D>> {
        let order = self.order()?;
        if order % 2 != 0 {
            return Err(Error::OddOrder(order));
        }
        let n = order / 2;
        Ok(Blocks {
            top_left: self.window(0, 0, n, n),
            top_right: self.window(0, n, n, n),
            bottom_left: self.window(n, 0, n, n),
            bottom_right: self.window(n, n, n, n),
        })
    }

    /// Inverse of [`Matrix::split_blocks`]. Arguments are in `A, C, B, D` order.
    pub fn join_blocks(
        top_left: &Self,
        top_right: &Self,
        bottom_left: &Self,
        bottom_right: &Self,
    ) -> Result<Self> {
        let n = top_left.rows;
        for (name, m) in [
            ("top-left", top_left),
            ("top-right", top_right),
            ("bottom-left", bottom_left),
            ("bottom-right", bottom_right),
        ] {
            if m.rows != n || m.cols != n {
                return Err(Error::DimensionMismatch(format!(
                    "{name} block is {}x{}, expected {n}x{n}",
                    m.rows, m.cols
                )));
            }
        }
        Ok(Self::from_fn(2 * n, 2 * n, |i, j| {
            let m = match (i < n, j < n) {
                (true, true) => top_left,
                (true, false) => top_right,
                (false, true) => bottom_left,
                (false, false) => bottom_right,
            };
            m.get(i % n, j % n).clone()
        }))
    }

    /// Embed `self` in the top-left corner of `other` (which must be at least as large).
    pub fn embed_top_left(&self, other: &Self) -> Self {
        Self::from_fn(other.rows, other.cols, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j).clone()
            }
        })
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&D, &D) -> D) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn map(&self, f: impl Fn(&D) -> D) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        Ok(self.zip_with(other, |a, b| a.clone() + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "difference")?;
        Ok(self.zip_with(other, |a, b| a.clone() - b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a.clone())
    }

    pub fn scale(&self, s: &D) -> Self {
        self.map(|a| a.mul_ref(s))
    }

    /// Classical product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Classical.multiply(self, other)
    }

    /// Entrywise exact division by a scalar.
    pub fn exact_div_scalar(&self, s: &D) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if s.is_one() {
            return Ok(self.clone());
        }
        let mut data = Vec::with_capacity(self.data.len());
        for (k, a) in self.data.iter().enumerate() {
            data.push(a.exact_div(s).map_err(|e| match e {
                Error::NotDivisible { dividend, divisor } => Error::EntryNotDivisible {
                    row: k / self.cols,
                    col: k % self.cols,
                    dividend,
                    divisor,
                },
                other => other,
            })?);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Whether `self == s * I`.
    pub fn is_scalar_multiple_of_identity(&self, s: &D) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v == s
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

impl<D: fmt::Debug> fmt::Debug for Matrix<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .map(|v| format!("{v:?}"))
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        f.write_str("]")
    }
}

/// Rows separated by newlines, entries by single spaces.
impl<D: fmt::Display> fmt::Display for Matrix<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            for (j, v) in self.data[i * self.cols..(i + 1) * self.cols]
                .iter()
                .enumerate()
            {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Matrix multiplication strategy.
pub trait MatMul<D: Domain>: Send + Sync {
    fn multiply(&self, x: &Matrix<D>, y: &Matrix<D>) -> Result<Matrix<D>>;
}

/// Schoolbook `O(n^3)` multiplication.
#[derive(Debug, Clone, Copy, Default)]
pub struct Classical;

impl<D: Domain> MatMul<D> for Classical {
    fn multiply(&self, x: &Matrix<D>, y: &Matrix<D>) -> Result<Matrix<D>> {
        if x.cols != y.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                x.rows, x.cols, y.rows, y.cols
            )));
        }
        let mut data = Vec::with_capacity(x.rows * y.cols);
        for i in 0..x.rows {
            let row = x.row(i);
            for j in 0..y.cols {
                let mut acc = D::zero();
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a.mul_ref(y.get(k, j));
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: x.rows,
            cols: y.cols,
            data,
        })
    }
}
