// SPDX-License-Identifier: Apache-2.0
//! Verification of size-parameterized quantum circuits with synchronized
//! weighted tree automata (SWTAs) and weighted tree transducers (WTTs).
//!
//! Sets of quantum states are SWTAs, circuits are WTTs. Relational
//! verification computes the image of a precondition under the circuit and
//! checks functional inclusion or equivalence against a postcondition.

pub mod algebra;
pub mod bench;
pub mod circuit;
pub mod fixtures;
pub mod forms;
pub mod gates;
pub mod paramgen;
pub mod swta;
pub mod task;
pub mod text;
pub mod trees;
pub mod verify;
pub mod wtt;

pub use algebra::{Algebraic, Basis, FieldScalar};
pub use swta::Swta;
pub use trees::PerfectTree;
pub use wtt::{Side, Wtt};

use thiserror::Error;

/// Structural errors when building or combining automata.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("unknown {0}")]
    Unknown(String),
    #[error("modulus mismatch: expected m={expected}, got m={got}")]
    Modulus { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
}
