//! Desk-scale Monte Carlo of the random coding scheme: robust
//! typicality, counter-mode seed-keyed codebooks, joint-typicality
//! encoding and decoding, and empirical estimation of the covering
//! failure event and the end-to-end error probability, for both the
//! flat and the layered (superposition) codebook constructions.

mod codebook;
mod experiment;
mod prf;
mod typicality;

pub use codebook::{CodebookEnsemble, Scheme};
pub use experiment::{
    decode1, decode2, encode, run_covering_experiment, run_end_to_end, sample_sources, transmit,
    CoveringStats, DecodeCounts, DecodeResult, EncodeResult, EndToEndStats,
};
pub use typicality::{empirical_pmf, is_typical};

use thiserror::Error;

use crate::measures::MeasureError;
use crate::regions::RegionError;

/// Hard cap on typicality candidate evaluations per trial; encoding
/// and decoding searches abort with `BudgetExceeded` past this point.
pub const TUPLE_CHECK_BUDGET: u64 = 1 << 28;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("symbol {0} outside alphabet of size {1}")]
    AlphabetMismatch(usize, usize),
    #[error("search budget exceeded: needs {needed} candidate checks, cap {cap}")]
    BudgetExceeded { needed: u64, cap: u64 },
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

/// Blocklength and the two typicality slack levels: the encoder uses
/// the tighter eps_prime, the decoders the looser eps.
#[derive(Debug, Clone, Copy)]
pub struct TypicalityParams {
    pub n: usize,
    pub eps: f64,
    pub eps_prime: f64,
}

impl TypicalityParams {
    pub fn new(n: usize, eps: f64, eps_prime: f64) -> Result<Self, SimError> {
        if n == 0 {
            return Err(SimError::BadParams("blocklength must be positive".into()));
        }
        if !(0.0 < eps_prime && eps_prime < eps) {
            return Err(SimError::BadParams(format!(
                "need 0 < eps_prime < eps, got eps_prime = {eps_prime}, eps = {eps}"
            )));
        }
        Ok(TypicalityParams { n, eps, eps_prime })
    }
}

/// Decoder verdict classification for one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeOutcome {
    Correct,
    /// No source sequence admitted a typical tuple.
    NoneTypical,
    /// Two or more source sequences admitted typical tuples.
    Ambiguous,
    /// Exactly one candidate passed, but it was not the true sequence.
    Wrong,
}

/// Per-trial record: covering failure flag plus both decoder verdicts.
#[derive(Debug, Clone, Copy)]
pub struct TrialOutcome {
    pub covering_failed: bool,
    pub decode1: DecodeOutcome,
    pub decode2: DecodeOutcome,
}

impl TrialOutcome {
    /// True when either reconstruction differs from its source.
    pub fn is_error(&self) -> bool {
        self.decode1 != DecodeOutcome::Correct || self.decode2 != DecodeOutcome::Correct
    }
}
