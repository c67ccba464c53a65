//! Multipliers for operator-valued Bessel sequences and generalized
//! Hilbert-Schmidt / trace classes, modeled on finite-dimensional spaces.
//!
//! Everything here is `no_std` + `alloc`. File formats and the CLI live in the
//! `gmult` crate.
#![no_std]
// `num_traits::Float` is needed without std; when std is anywhere in the
// crate graph float methods resolve inherently and the import goes unused.
#![allow(unused_imports)]

extern crate alloc;

pub mod error;
pub mod gbessel;
pub mod kernel_suites;
pub mod linalg;
pub mod multiplier;
pub mod random;
pub mod report;
pub mod schatten;
pub mod weights;

pub use error::{Error, Result};
pub use gbessel::{OpSequence, SequenceClassification, TailLaw};
pub use linalg::{c64, rank_one, ComplexMatrix, ComplexVector, ConjLinearIsometry, PolarDecomposition, C64};
pub use multiplier::MultiplierSpec;
pub use report::{CheckKind, CheckRecord};
pub use schatten::{GhsContext, MembershipVerdict};
pub use weights::{ClassTag, VectorSeq, WeightSeq};

/// Default relative tolerance used by checks and classifications.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute floor applied to every relative tolerance.
pub const TOL_FLOOR: f64 = 1e-12;
