// SPDX-License-Identifier: Apache-2.0
//! Exact scalar arithmetic.

mod basis;
mod field;
mod scalar;

pub use basis::{axpy, Basis, SparseVec};
pub use field::FieldScalar;
pub use scalar::Algebraic;

use thiserror::Error;

/// Default modulus: w = e^{i pi / 4}, enough for Clifford+T.
pub const DEFAULT_M: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("vector of dimension {got} does not fit a basis of dimension {expected}")]
    InvalidVector { expected: usize, got: usize },
}
