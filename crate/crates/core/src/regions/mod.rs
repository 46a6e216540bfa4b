//! Scenario modeling and numeric evaluation of the achievable-rate
//! inequality families: the two coding theorems, covering and decoding
//! bounds for both codebook constructions, their classical
//! specializations, and the exact feasibility bridge into `polytope`.

mod bounds;
mod search;
mod special;
mod thm;

pub use bounds::{
    eval_covering_rates, eval_decoding_rates, eval_superposition_rates, fm_pipeline,
    rate_region_feasible, symbolic_rate_system, symbolic_side_conditions, FeasibleRates,
    FmPipeline,
};
pub use search::{search_feasible_aux, SearchOutcome};
pub use special::{
    augment_u0_with_common_part, augment_with_w, check_more_capable, compose_degraded,
    gray_wyner_scenario, marton_scenario, specialize_degraded, specialize_gray_wyner,
    specialize_marton, GrayWynerReports, MoreCapableVerdict,
};
pub use thm::{
    compare_thm2_hc, compose_full, eval_theorem1_hc, eval_theorem2, theorem2_rows, RowComparison,
};

use thiserror::Error;

use crate::measures::{Conditional, JointPmf, MeasureError, XMap};

/// Margins within this tolerance of zero count as unsatisfied: the
/// achievability conditions are strict, so boundary points fail.
pub const STRICTNESS_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("invalid rate: {0}")]
    BadRate(String),
}

/// A source pmf over {S1, S2} together with a broadcast channel
/// p(y1, y2 | x).
#[derive(Debug, Clone)]
pub struct ScenarioSpec {
    pub source: JointPmf,
    pub channel: Conditional,
}

/// A choice of auxiliaries: p(u0, u1, u2 | s1, s2) plus the
/// deterministic symbol map x(s1, s2, u0, u1, u2).
#[derive(Debug, Clone)]
pub struct AuxiliarySpec {
    pub aux: Conditional,
    pub x_map: XMap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateTriple {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
}

impl RateTriple {
    pub fn new(r0: f64, r1: f64, r2: f64) -> Result<Self, RegionError> {
        for (name, r) in [("r0", r0), ("r1", r1), ("r2", r2)] {
            if !r.is_finite() || r < 0.0 {
                return Err(RegionError::BadRate(format!("{name} = {r}")));
            }
        }
        Ok(RateTriple { r0, r1, r2 })
    }
}

/// Direction of a reported inequality, relative to its left-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// lhs < rhs (decodability-style upper bound on the lhs).
    Upper,
    /// lhs > rhs (covering-style lower bound on the lhs).
    Lower,
}

/// One evaluated inequality. `margin` is the slack in the satisfied
/// direction (rhs − lhs for Upper rows, lhs − rhs for Lower rows), so
/// `satisfied == (margin > STRICTNESS_TOL)` regardless of sense.
#[derive(Debug, Clone)]
pub struct RegionRow {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub sense: Sense,
    pub margin: f64,
    pub satisfied: bool,
}

impl RegionRow {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, sense: Sense) -> Self {
        let margin = match sense {
            Sense::Upper => rhs - lhs,
            Sense::Lower => lhs - rhs,
        };
        RegionRow {
            name: name.into(),
            lhs,
            rhs,
            sense,
            margin,
            satisfied: margin > STRICTNESS_TOL,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RegionReport {
    pub rows: Vec<RegionRow>,
}

impl RegionReport {
    pub fn all_satisfied(&self) -> bool {
        self.rows.iter().all(|r| r.satisfied)
    }

    pub fn min_margin(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn row(&self, name: &str) -> Option<&RegionRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}
