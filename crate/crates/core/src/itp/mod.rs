//! Shannon-cone prover: decides whether a linear information
//! inequality is implied by the elemental Shannon inequalities plus
//! declared constraints, producing an exact rational certificate.

mod parse;
mod prove;
mod vdefs;

pub use parse::{parse_constraint, parse_expression, parse_target};
pub use prove::{elemental_inequalities, prove, verify_certificate, ProofResult};
pub use vdefs::expand_v_definitions;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::measures::InfoExpression;

/// Maximum ground-set size; entropy-space dimension is 2^N - 1.
pub const MAX_GROUND: usize = 10;

#[derive(Debug, Error, PartialEq)]
pub enum ItpError {
    #[error("ground set of {0} variables exceeds the cap of {1}")]
    TooLarge(usize, usize),
    #[error("ground set names must be distinct and nonempty")]
    BadGround,
    #[error("expression references `{0}` outside the ground set")]
    OutsideGround(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// An ordered list of random-variable names spanning the entropy space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new(names: &[&str]) -> Result<Self, ItpError> {
        if names.is_empty() {
            return Err(ItpError::BadGround);
        }
        if names.len() > MAX_GROUND {
            return Err(ItpError::TooLarge(names.len(), MAX_GROUND));
        }
        let set: BTreeSet<&str> = names.iter().copied().collect();
        if set.len() != names.len() {
            return Err(ItpError::BadGround);
        }
        Ok(GroundSet {
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Entropy-space dimension: one coordinate per nonempty subset.
    pub fn dimension(&self) -> usize {
        (1usize << self.names.len()) - 1
    }

    pub fn mask_of(&self, subset: &BTreeSet<String>) -> Result<usize, ItpError> {
        let mut mask = 0usize;
        for name in subset {
            let i = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| ItpError::OutsideGround(name.clone()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Vectorize an InfoExpression over the 2^N - 1 subset coordinates
    /// (subset mask m maps to index m - 1).
    pub fn vectorize(&self, expr: &InfoExpression) -> Result<Vec<crate::polytope::Rational>, ItpError> {
        use num::Zero;
        let mut v = vec![crate::polytope::Rational::zero(); self.dimension()];
        for (subset, coeff) in expr.terms() {
            let mask = self.mask_of(subset)?;
            v[mask - 1] += coeff;
        }
        Ok(v)
    }
}

/// A side condition for the prover, entered as equality rows in both
/// directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofConstraint {
    /// H(A | B) = 0
    FunctionalDependency {
        a: Vec<String>,
        given: Vec<String>,
    },
    /// I(A; B | C) = 0
    Independence {
        a: Vec<String>,
        b: Vec<String>,
        given: Vec<String>,
    },
    /// expr = 0
    LinearEquality(InfoExpression),
}

impl ProofConstraint {
    pub fn expression(&self) -> InfoExpression {
        fn refs(v: &[String]) -> Vec<&str> {
            v.iter().map(|s| s.as_str()).collect()
        }
        match self {
            ProofConstraint::FunctionalDependency { a, given } => {
                InfoExpression::cond_entropy(&refs(a), &refs(given))
            }
            ProofConstraint::Independence { a, b, given } => {
                InfoExpression::mutual(&refs(a), &refs(b), &refs(given))
            }
            ProofConstraint::LinearEquality(e) => e.clone(),
        }
    }
}
