//! Determinant identities behind the recursion, as executable checkers.
//!
//! Each checker evaluates both sides with the oracle determinants and
//! compares them exactly. [`run_suite`] drives them on seeded random input.

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::oracle::{adj_cofactor, combinations, det_bareiss, det_cofactor, minor, MinorSpec};
use crate::paradj::par_adj;
use crate::precondition::{adj_any, PreconditionOptions};
use crate::random::{random_column, random_matrix, seeded, RandomElement};

/// A base matrix with two distinct fixed column positions (0-based, `i < j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnReplacement<D> {
    base: Matrix<D>,
    i: usize,
    j: usize,
}

impl<D: Domain> ColumnReplacement<D> {
    pub fn new(base: Matrix<D>, i: usize, j: usize) -> Result<Self> {
        let n = base.order()?;
        if !(i < j && j < n) {
            return Err(Error::BadIndices(format!(
                "fixed columns ({i}, {j}) must satisfy i < j < {n}"
            )));
        }
        Ok(ColumnReplacement { base, i, j })
    }

    pub fn base(&self) -> &Matrix<D> {
        &self.base
    }

    /// The base matrix with column `i` set to `x` and column `j` set to `y`.
    pub fn replace_columns(&self, x: &[D], y: &[D]) -> Result<Matrix<D>> {
        self.base.with_column(self.i, x)?.with_column(self.j, y)
    }

    fn det_with(&self, x: &[D], y: &[D]) -> Result<D> {
        det_bareiss(&self.replace_columns(x, y)?)
    }

    /// `det B{ab} det B{cd} == det B{ad} det B{cb} - det B{db} det B{ac}`.
    pub fn check(&self, a: &[D], b: &[D], c: &[D], d: &[D]) -> Result<bool> {
        let lhs = self.det_with(a, b)?.mul_ref(&self.det_with(c, d)?);
        let rhs = self.det_with(a, d)?.mul_ref(&self.det_with(c, b)?)
            - self.det_with(d, b)?.mul_ref(&self.det_with(a, c)?);
        Ok(lhs == rhs)
    }
}

pub fn check_column_replacement<D: Domain>(
    ctx: &ColumnReplacement<D>,
    a: &[D],
    b: &[D],
    c: &[D],
    d: &[D],
) -> Result<bool> {
    ctx.check(a, b, c, d)
}

/// `F = alpha B* D - beta A* C` for the blocks of `full`, with oracle
/// adjugates. Returns `(alpha, beta, F)`.
pub fn f_matrix<D: Domain>(full: &Matrix<D>) -> Result<(D, D, Matrix<D>)> {
    let blocks = full.split_blocks()?;
    let alpha = det_bareiss(&blocks.top_left)?;
    let beta = det_bareiss(&blocks.bottom_left)?;
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::DegenerateMinor {
            level: 0,
            block: if alpha.is_zero() {
                crate::error::Block::TopLeft
            } else {
                crate::error::Block::BottomLeft
            },
        });
    }
    let a_adj = adj_cofactor(&blocks.top_left)?;
    let b_adj = adj_cofactor(&blocks.bottom_left)?;
    let f = b_adj
        .mul(&blocks.bottom_right)?
        .scale(&alpha)
        .sub(&a_adj.mul(&blocks.top_right)?.scale(&beta))?;
    Ok((alpha, beta, f))
}

/// Whether every order-`k` minor of `F` is divisible by `(alpha beta)^(k-1)`.
pub fn check_f_minor_divisibility<D: Domain>(full: &Matrix<D>, k: usize) -> Result<bool> {
    let (alpha, beta, f) = f_matrix(full)?;
    let n = f.rows();
    if k == 0 || k > n {
        return Err(Error::BadIndices(format!(
            "minor order {k} outside 1..={n}"
        )));
    }
    let divisor = alpha.mul_ref(&beta).pow(k as u32 - 1);
    for rows in combinations(n, k) {
        for cols in combinations(n, k) {
            let value = minor(&f, &MinorSpec::new(rows.clone(), cols)?)?;
            match value.exact_div(&divisor) {
                Ok(_) => {}
                Err(Error::NotDivisible { .. }) => return Ok(false),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(true)
}

/// Whether `det F == (alpha beta)^(n-1) det full`.
pub fn check_f_determinant<D: Domain>(full: &Matrix<D>) -> Result<bool> {
    let (alpha, beta, f) = f_matrix(full)?;
    let n = f.rows();
    let lhs = det_bareiss(&f)?;
    let rhs = alpha
        .mul_ref(&beta)
        .pow(n as u32 - 1)
        .mul_ref(&det_bareiss(full)?);
    Ok(lhs == rhs)
}

/// The order-`k-1` matrix of 2x2 minors of `f` that contain the corner entry.
pub fn corner_condensation<D: Domain>(f: &Matrix<D>) -> Result<Matrix<D>> {
    let k = f.order()?;
    let corner = f.get(0, 0);
    Ok(Matrix::from_fn(k - 1, k - 1, |i, j| {
        corner.mul_ref(f.get(i + 1, j + 1)) - f.get(i + 1, 0).mul_ref(f.get(0, j + 1))
    }))
}

/// `det(F') f11^(k-2) == det(G)` with `G` from [`corner_condensation`].
pub fn check_sylvester<D: Domain>(f: &Matrix<D>) -> Result<bool> {
    let k = f.order()?;
    if k < 3 {
        return Err(Error::BadIndices(format!("order {k} < 3")));
    }
    let corner = f.get(0, 0);
    if corner.is_zero() {
        return Err(Error::ZeroCorner);
    }
    let g = corner_condensation(f)?;
    let lhs = det_cofactor(f)?.mul_ref(&corner.pow(k as u32 - 2));
    Ok(lhs == det_cofactor(&g)?)
}

/// Outcome of one property suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Cases skipped because a random draw was degenerate (zero corner, zero minor).
    pub skipped: usize,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl std::fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: {} cases, {} failures, {} skipped",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.cases,
            self.failures,
            self.skipped
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    ColumnReplacement,
    Sylvester,
    MinorDivisibility,
    Algorithm,
}

impl SuiteKind {
    pub const ALL: [SuiteKind; 4] = [
        SuiteKind::ColumnReplacement,
        SuiteKind::Sylvester,
        SuiteKind::MinorDivisibility,
        SuiteKind::Algorithm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteKind::ColumnReplacement => "column-replacement",
            SuiteKind::Sylvester => "sylvester",
            SuiteKind::MinorDivisibility => "f-minor-divisibility",
            SuiteKind::Algorithm => "adjugate-vs-oracle",
        }
    }
}

/// Run one suite over `D` with `cases` random instances.
pub fn run_suite<D: RandomElement>(kind: SuiteKind, cases: usize, seed: u64) -> SuiteReport {
    let mut rng = seeded(seed ^ (kind as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut failures = 0;
    let mut skipped = 0;
    for case in 0..cases {
        let outcome: Result<bool> = match kind {
            SuiteKind::ColumnReplacement => {
                let n = 2 + case % 5;
                let base = random_matrix::<D, _>(&mut rng, n, n, 5);
                let i = rand::Rng::gen_range(&mut rng, 0..n - 1);
                let j = rand::Rng::gen_range(&mut rng, i + 1..n);
                let cols: Vec<Vec<D>> = (0..4).map(|_| random_column(&mut rng, n, 5)).collect();
                ColumnReplacement::new(base, i, j)
                    .and_then(|ctx| ctx.check(&cols[0], &cols[1], &cols[2], &cols[3]))
            }
            SuiteKind::Sylvester => {
                let k = 3 + case % 3;
                let mut f = random_matrix::<D, _>(&mut rng, k, k, 5);
                if f.get(0, 0).is_zero() {
                    f = f.with_entry(0, 0, D::random_nonzero(&mut rng, 5));
                }
                check_sylvester(&f)
            }
            SuiteKind::MinorDivisibility => {
                let order = [4, 6, 8][case % 3];
                let full = random_matrix::<D, _>(&mut rng, order, order, 5);
                (1..=order / 2)
                    .try_fold(
                        true,
                        |ok, k| Ok(ok && check_f_minor_divisibility(&full, k)?),
                    )
                    .and_then(|ok| Ok(ok && check_f_determinant(&full)?))
            }
            SuiteKind::Algorithm => {
                let order = [2, 4, 8][case % 3];
                let a = random_matrix::<D, _>(&mut rng, order, order, 5);
                par_adj(&a, &D::one())
                    .and_then(|r| Ok(r.phi == det_bareiss(&a)? && r.adj == adj_cofactor(&a)?))
            }
        };
        match outcome {
            Ok(true) => {}
            Ok(false) => failures += 1,
            Err(Error::DegenerateMinor { .. }) | Err(Error::ZeroCorner) => skipped += 1,
            Err(_) => failures += 1,
        }
    }
    SuiteReport {
        name: format!("{}[{}]", kind.name(), D::TAG),
        cases,
        failures,
        skipped,
    }
}

/// Check the preconditioned path on random non-power-of-two orders.
pub fn run_precondition_suite<D: RandomElement>(cases: usize, seed: u64) -> SuiteReport {
    let mut rng = seeded(seed ^ 0x5eed);
    let mut failures = 0;
    let mut skipped = 0;
    for case in 0..cases {
        let order = [3, 5, 6, 7][case % 4];
        let a = random_matrix::<D, _>(&mut rng, order, order, 5);
        let ok = det_bareiss(&a).and_then(|det| {
            if det.is_zero() {
                return Ok(None);
            }
            let out = adj_any(
                &a,
                &PreconditionOptions::with_seed(seed.wrapping_add(case as u64)),
            )?;
            Ok(Some(
                out.det == det && a.mul(&out.adj)?.is_scalar_multiple_of_identity(&det),
            ))
        });
        match ok {
            Ok(Some(true)) => {}
            Ok(None) => skipped += 1,
            _ => failures += 1,
        }
    }
    SuiteReport {
        name: format!("preconditioned-adjugate[{}]", D::TAG),
        cases,
        failures,
        skipped,
    }
}
