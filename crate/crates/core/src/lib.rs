//! Young- and Heinz-type mean inequalities, scalar and operator.
//!
//! The crate is `no_std` (it needs `alloc` for matrix storage). All real
//! powers and logarithms go through [`libm`], so results are the same on
//! every target.
//!
//! * [`scalar`] evaluates every scalar bound family as a [`BoundReport`].
//! * [`matrix`] holds the symmetric / SPD matrix types, a cyclic Jacobi
//!   eigensolver and the operator means.
//! * [`operator`] lifts the reverse bounds to SPD matrices and decides
//!   them in the Loewner order.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod matrix;
pub mod operator;
pub mod scalar;

pub use error::{BoundError, MatrixError};
pub use matrix::{
    arithmetic_mean, eigh, geometric_mean, heinz_mean, loewner_leq, spd_power, EigenDecomp,
    LoewnerVerdict, MeanRegime, SpdMatrix, SymMatrix,
};
pub use operator::{OperatorBoundReport, OperatorFamily};
pub use scalar::{
    BoundReport, Branch, ComparisonReport, Depth, Direction, Family, ReverseForm, ScalarPair,
    Weight,
};
