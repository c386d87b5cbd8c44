//! Seeded random elements and matrices for tests, self-tests and benchmarks.

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{Domain, Polynomial};
use crate::matrix::Matrix;

/// Deterministic generator used throughout the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Domains that can produce small random elements.
pub trait RandomElement: Domain {
    /// An element whose integer coefficients lie in `[-bound, bound]`.
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self;

    /// A nonzero element with the same coefficient bound.
    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        loop {
            let v = Self::random(rng, bound);
            if !v.is_zero() {
                return v;
            }
        }
    }
}

impl RandomElement for BigInt {
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        BigInt::from(rng.gen_range(-bound..=bound))
    }
}

/// Degree at most one.
impl RandomElement for Polynomial {
    fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Polynomial::from_i64s(&[rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound)])
    }
}

pub fn random_matrix<D: RandomElement, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Matrix<D> {
    Matrix::from_fn(rows, cols, |_, _| D::random(rng, bound))
}

pub fn random_column<D: RandomElement, R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    bound: i64,
) -> Vec<D> {
    (0..len).map(|_| D::random(rng, bound)).collect()
}
