//! Exact evaluation of entropies, mutual informations, information
//! expressions, common parts, and pmf compositions on finite joint
//! distributions. All quantities are in bits (log base 2).

mod common;
mod compose;
mod expr;
mod pmf;

pub use common::{common_part, CommonPart};
pub use compose::{compose_scenario, Conditional, XMap};
pub use expr::InfoExpression;
pub use pmf::{FiniteVariable, JointPmf};
pub(crate) use pmf::rational_to_f64;

use thiserror::Error;

/// Tolerance for pmf normalization checks.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Hard cap on joint alphabet size of a dense pmf.
pub const MAX_CELLS: usize = 1 << 24;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("pmf has a negative cell: {0}")]
    NegativeMass(f64),
    #[error("pmf cells sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("mass tensor has {got} cells, shape requires {want}")]
    ShapeMismatch { got: usize, want: usize },
    #[error("joint alphabet of {0} cells exceeds the dense-tensor cap of {1}")]
    TooLarge(usize, usize),
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("conditional slice {0} sums to {1}, expected 1")]
    UnnormalizedSlice(usize, f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("source pmf has zero total mass")]
    ZeroMass,
    #[error("expression references variable `{0}` not bound in the pmf")]
    UnboundVariable(String),
}
