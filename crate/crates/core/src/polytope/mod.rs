//! Exact rational linear-inequality systems, Fourier-Motzkin
//! elimination, and LP-based redundancy removal.

mod fm;
mod lin;
mod parse;
mod simplex;

pub use fm::{eliminate_all, fm_eliminate, remove_redundant};
pub use lin::{LinIneq, LinSystem, Relation};
pub use parse::{parse_lin_ineq, parse_lin_system};
pub use simplex::{is_feasible, Feasibility};

pub(crate) use simplex::{solve, Rel, StdLp, StdOutcome};

use thiserror::Error;

pub type Rational = num::BigRational;

#[derive(Debug, Error, PartialEq)]
pub enum PolytopeError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}
