//! Bringing arbitrary square matrices into a form the recursion accepts.
//!
//! The input is padded to a power-of-two order with an identity block and, if
//! the recursion meets a zero minor, left-multiplied by a random unimodular
//! matrix `U` (`det U = 1`) built from row additions. Since `adj(U P) = adj(P) adj(U)` and
//! `adj(U) = U^-1`, the adjugate of `P` is recovered as `adj(U P) U`.

use num_bigint::BigInt;
use rand::Rng;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::paradj::{AdjResult, Mode, ParAdj};
use crate::random::seeded;

pub const DEFAULT_ENTRY_BOUND: i64 = 2;
pub const DEFAULT_MAX_RETRIES: usize = 8;

/// Shape of the random unimodular transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transform {
    /// `L R` with `L` unit lower and `R` unit upper triangular, off-diagonal
    /// entries in `[-entry_bound, entry_bound]`. Dense, so the identity
    /// columns introduced by padding get mixed into every row.
    #[default]
    Triangular,
    /// `ops_per_order * order` random row additions, see [`random_unimodular_with_ops`].
    Elementary { ops_per_order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionOptions {
    pub seed: u64,
    /// Random transforms tried after the untransformed attempt.
    pub max_retries: usize,
    pub entry_bound: i64,
    pub transform: Transform,
    pub mode: Mode,
    pub trace: bool,
}

impl Default for PreconditionOptions {
    fn default() -> Self {
        PreconditionOptions {
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
            entry_bound: DEFAULT_ENTRY_BOUND,
            transform: Transform::default(),
            mode: Mode::Parallel,
            trace: false,
        }
    }
}

impl PreconditionOptions {
    pub fn with_seed(seed: u64) -> Self {
        PreconditionOptions {
            seed,
            ..Self::default()
        }
    }
}

/// How the accepted attempt was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreconditionRecord<D> {
    pub original_order: usize,
    pub padded_order: usize,
    /// The accepted transform; identity when the input was used as is.
    pub transform: Matrix<D>,
    pub seed: u64,
    /// Attempts made, including the accepted one.
    pub attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preconditioned<D> {
    pub det: D,
    pub adj: Matrix<D>,
    pub record: PreconditionRecord<D>,
    /// Raw output of the accepted run on `U P`.
    pub run: AdjResult<D>,
}

/// Least power of two that is `>= max(n, 2)`.
pub fn padded_order(n: usize) -> usize {
    n.max(2).next_power_of_two()
}

/// `diag(a, I)` of order [`padded_order`].
pub fn pad<D: Domain>(a: &Matrix<D>) -> Result<Matrix<D>> {
    let n = a.order()?;
    let target = padded_order(n);
    if target == n {
        return Ok(a.clone());
    }
    Ok(a.embed_top_left(&Matrix::identity(target)))
}

/// Seed for the transform of a given attempt.
fn attempt_seed(seed: u64, attempt: usize) -> u64 {
    seed ^ (attempt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Product of `ops` random row additions `I + c E_ij` (`i != j`,
/// `1 <= |c| <= entry_bound`).
pub fn random_unimodular_with_ops<D: Domain>(
    order: usize,
    seed: u64,
    entry_bound: i64,
    ops: usize,
) -> Matrix<D> {
    let mut u: Vec<Vec<BigInt>> = (0..order)
        .map(|i| (0..order).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    if order < 2 || entry_bound < 1 {
        return to_domain(&u);
    }
    let mut rng = seeded(seed);
    for _ in 0..ops {
        let i = rng.gen_range(0..order);
        let mut j = rng.gen_range(0..order - 1);
        if j >= i {
            j += 1;
        }
        let mut c = rng.gen_range(1..=entry_bound);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        let (src, c) = (u[j].clone(), BigInt::from(c));
        for (dst, s) in u[i].iter_mut().zip(&src) {
            *dst += &c * s;
        }
    }
    to_domain(&u)
}

fn to_domain<D: Domain>(rows: &[Vec<BigInt>]) -> Matrix<D> {
    Matrix::from_fn(rows.len(), rows.len(), |i, j| {
        D::from_integer(rows[i][j].clone())
    })
}

/// Unit lower times unit upper triangular, both random. `det = 1`.
pub fn random_unimodular_triangular<D: Domain>(
    order: usize,
    seed: u64,
    entry_bound: i64,
) -> Matrix<D> {
    let mut rng = seeded(seed);
    let mut draw = |on: bool| {
        if on && entry_bound > 0 {
            BigInt::from(rng.gen_range(-entry_bound..=entry_bound))
        } else {
            BigInt::from(0)
        }
    };
    let one = BigInt::from(1);
    let lower =
        Matrix::<BigInt>::from_fn(
            order,
            order,
            |i, j| {
                if i == j {
                    one.clone()
                } else {
                    draw(i > j)
                }
            },
        );
    let upper =
        Matrix::<BigInt>::from_fn(
            order,
            order,
            |i, j| {
                if i == j {
                    one.clone()
                } else {
                    draw(i < j)
                }
            },
        );
    let u = lower.mul(&upper).expect("square factors");
    to_domain(&u.to_rows())
}

/// Random unimodular matrix with the default `3 * order` operations.
pub fn random_unimodular<D: Domain>(order: usize, seed: u64, entry_bound: i64) -> Matrix<D> {
    random_unimodular_with_ops(order, seed, entry_bound, 3 * order)
}

/// Determinant and adjugate of any square matrix via the recursive algorithm.
///
/// Tries the padded input as is, then up to `max_retries` random transforms.
/// Only zero-minor failures trigger a retry.
pub fn adj_any<D: Domain>(a: &Matrix<D>, opts: &PreconditionOptions) -> Result<Preconditioned<D>> {
    let original_order = a.order()?;
    let p = pad(a)?;
    let order = p.rows();
    let runner = ParAdj::new().mode(opts.mode).trace(opts.trace);
    for attempt in 0..=opts.max_retries {
        let (u, up) = if attempt == 0 {
            (Matrix::identity(order), p.clone())
        } else {
            let seed = attempt_seed(opts.seed, attempt);
            let u = match opts.transform {
                Transform::Triangular => {
                    random_unimodular_triangular(order, seed, opts.entry_bound)
                }
                Transform::Elementary { ops_per_order } => {
                    random_unimodular_with_ops(order, seed, opts.entry_bound, ops_per_order * order)
                }
            };
            let up = u.mul(&p)?;
            (u, up)
        };
        let run = match runner.run(&up, &D::one()) {
            Ok(run) => run,
            Err(Error::DegenerateMinor { .. }) => continue,
            Err(e) => return Err(e),
        };
        let adj_p = if attempt == 0 {
            run.adj.clone()
        } else {
            run.adj.mul(&u)?
        };
        return Ok(Preconditioned {
            det: run.phi.clone(),
            adj: adj_p.window(0, 0, original_order, original_order),
            record: PreconditionRecord {
                original_order,
                padded_order: order,
                transform: u,
                seed: opts.seed,
                attempts: attempt + 1,
            },
            run,
        });
    }
    Err(Error::RetriesExhausted {
        attempts: opts.max_retries + 1,
    })
}
