//! Slow, independent reference computations of determinants, minors and
//! adjugates. Nothing here shares code with the recursive algorithm.

use std::collections::HashMap;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest order accepted by [`det_cofactor`].
pub const COFACTOR_DET_LIMIT: usize = 10;
/// Largest order accepted by [`adj_cofactor`].
pub const COFACTOR_ADJ_LIMIT: usize = 8;

/// Row and column index sets selecting a square submatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    /// Indices are 0-based and must be strictly increasing.
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::BadIndices(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        if rows.is_empty() {
            return Err(Error::BadIndices("empty index set".into()));
        }
        for set in [&rows, &cols] {
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::BadIndices(format!(
                    "{set:?} is not strictly increasing"
                )));
            }
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }
}

/// Every strictly increasing `k`-subset of `0..n`, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Determinant by Laplace expansion along the first row.
///
/// Sub-determinants are memoized on the set of remaining columns (the
/// remaining rows are always a suffix), so the cost is `O(2^n n)` rather than
/// `O(n!)`. The expansion itself is the textbook one.
pub fn det_cofactor<D: Domain>(m: &Matrix<D>) -> Result<D> {
    let n = m.order()?;
    if n > COFACTOR_DET_LIMIT {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: COFACTOR_DET_LIMIT,
        });
    }
    let all: u32 = (1u32 << n) - 1;
    let mut memo = HashMap::new();
    Ok(laplace(m, all, &mut memo))
}

fn laplace<D: Domain>(m: &Matrix<D>, cols: u32, memo: &mut HashMap<u32, D>) -> D {
    if cols == 0 {
        return D::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let row = m.rows() - cols.count_ones() as usize;
    let mut acc = D::zero();
    let mut position = 0;
    for j in 0..m.cols() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let a = m.get(row, j);
        if !a.is_zero() {
            let term = a.mul_ref(&laplace(m, cols & !(1 << j), memo));
            acc = if position % 2 == 0 {
                acc + term
            } else {
                acc - term
            };
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Matrix with row `r` and column `c` removed.
pub fn delete_row_col<D: Domain>(m: &Matrix<D>, r: usize, c: usize) -> Matrix<D> {
    let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&j| j != c).collect();
    m.select(&rows, &cols)
}

/// Transposed matrix of cofactors.
pub fn adj_cofactor<D: Domain>(m: &Matrix<D>) -> Result<Matrix<D>> {
    let n = m.order()?;
    if n > COFACTOR_ADJ_LIMIT {
        return Err(Error::OrderTooLarge {
            order: n,
            limit: COFACTOR_ADJ_LIMIT,
        });
    }
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    let mut entries = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let minor = det_cofactor(&delete_row_col(m, j, i))?;
            row.push(if (i + j) % 2 == 0 { minor } else { -minor });
        }
        entries.push(row);
    }
    Matrix::from_rows(entries)
}

/// Fraction-free Gaussian elimination with row swaps on zero pivots.
pub fn det_bareiss<D: Domain>(m: &Matrix<D>) -> Result<D> {
    let n = m.order()?;
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = D::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(D::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul_ref(&a[k][k]) - a[i][k].mul_ref(&a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Determinant of the submatrix picked out by `spec`.
pub fn minor<D: Domain>(m: &Matrix<D>, spec: &MinorSpec) -> Result<D> {
    if spec.rows.iter().any(|&i| i >= m.rows()) || spec.cols.iter().any(|&j| j >= m.cols()) {
        return Err(Error::BadIndices(format!(
            "{spec:?} out of range for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    det_bareiss(&m.select(&spec.rows, &spec.cols))
}
