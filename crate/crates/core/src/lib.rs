//! Exact adjugate and determinant computation over commutative domains.
//!
//! The central entry point is [`paradj::par_adj`], a recursive, fraction-free
//! block algorithm that computes `det(A)` and `adj(A)` for matrices of order
//! `2^N` using only exact divisions and three recursive calls per level, two
//! of which run concurrently. [`precondition::adj_any`] extends it to any
//! square matrix. [`oracle`] holds slow reference implementations and
//! [`identities`] executable checks of the determinant identities the
//! recursion relies on.
//!
//! All code is generic over [`Domain`]; [`BigInt`] and [`Polynomial`] are
//! provided.

pub mod domain;
pub mod error;
pub mod format;
pub mod identities;
pub mod matrix;
pub mod oracle;
pub mod paradj;
pub mod precondition;
pub mod random;

pub use num_bigint::BigInt;

pub use domain::{Domain, Polynomial};
pub use error::{Block, Error, Result};
pub use matrix::{Blocks, Classical, MatMul, Matrix};
pub use paradj::{par_adj, par_adj_with_mode, AdjResult, Mode, ParAdj, RunStats, TraceStep};
pub use precondition::{
    adj_any, PreconditionOptions, PreconditionRecord, Preconditioned, Transform,
};

/// Matrices over the integers.
pub type IntMatrix = Matrix<BigInt>;
/// Matrices over `Z[x]`.
pub type PolyMatrix = Matrix<Polynomial>;
pub type IntAdjResult = AdjResult<BigInt>;
pub type PolyAdjResult = AdjResult<Polynomial>;
