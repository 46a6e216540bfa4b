use std::collections::BTreeMap;

use num::BigRational;

use crate::itp::{expand_v_definitions, GroundSet};
use crate::measures::rational_to_f64;
use crate::polytope::{
    eliminate_all, is_feasible, parse_lin_ineq, remove_redundant, Feasibility, LinIneq, LinSystem,
    Rational, Relation,
};

use super::{compose_full, AuxiliarySpec, RateTriple, RegionError, ScenarioSpec};

/// The seven covering lower bounds, evaluated with the vanishing slack
/// term set to zero: pairs of (rate-combination name, bound in bits).
/// The bound expressions are exactly the named quantities v1..v7.
pub fn eval_covering_rates(
    scenario: &ScenarioSpec,
    aux: &AuxiliarySpec,
) -> Result<Vec<(String, f64)>, RegionError> {
    let p = compose_full(scenario, aux)?;
    let v = v_values(&p)?;
    Ok(vec![
        ("R0".into(), v[0]),
        ("R1".into(), v[1]),
        ("R2".into(), v[2]),
        ("R0+R1".into(), v[3]),
        ("R0+R2".into(), v[4]),
        ("R1+R2".into(), v[5]),
        ("R0+R1+R2".into(), v[6]),
    ])
}

/// The four decoding upper bounds v8..v11 on H(S1)+R1, H(S1)+R0+R1,
/// H(S2)+R2, H(S2)+R0+R2, with the vanishing slack set to zero.
pub fn eval_decoding_rates(
    scenario: &ScenarioSpec,
    aux: &AuxiliarySpec,
) -> Result<Vec<(String, f64)>, RegionError> {
    let p = compose_full(scenario, aux)?;
    let v = v_values(&p)?;
    Ok(vec![
        ("H(S1)+R1".into(), v[7]),
        ("H(S1)+R0+R1".into(), v[8]),
        ("H(S2)+R2".into(), v[9]),
        ("H(S2)+R0+R2".into(), v[10]),
    ])
}

/// v1..v11 evaluated on the composed pmf, in index order.
pub(super) fn v_values(p: &crate::measures::JointPmf) -> Result<Vec<f64>, RegionError> {
    let ground = GroundSet::new(&["U0", "U1", "U2", "S1", "S2", "Y1", "Y2"])
        .expect("fixed seven-variable ground set");
    let defs = expand_v_definitions(&ground).expect("ground set is complete");
    (1..=11)
        .map(|k| Ok(p.eval_expression(&defs[&format!("v{k}")])?))
        .collect()
}

/// Covering and decoding bounds for the layered (cloud-center)
/// construction: four lower bounds and four upper bounds.
pub fn eval_superposition_rates(
    scenario: &ScenarioSpec,
    aux: &AuxiliarySpec,
) -> Result<(Vec<(String, f64)>, Vec<(String, f64)>), RegionError> {
    let p = compose_full(scenario, aux)?;
    let mi = |a: &[&str], b: &[&str], g: &[&str]| {
        p.mutual_information(a, b, g)
            .expect("composed pmf contains all scheme variables")
    };
    let r0 = mi(&["U0"], &["S1", "S2"], &[]);
    let c1 = mi(&["S2"], &["U1"], &["S1", "U0"]);
    let c2 = mi(&["S1"], &["U2"], &["S2", "U0"]);
    let c12 = mi(&["S1", "U1"], &["U2"], &["S2", "U0"]);
    let covering = vec![
        ("R0".to_string(), r0),
        ("R0+R1".to_string(), r0 + c1),
        ("R0+R2".to_string(), r0 + c2),
        ("R0+R1+R2".to_string(), r0 + c1 + c12),
    ];
    let decoding = vec![
        (
            "H(S1)+R1".to_string(),
            mi(&["U1", "S1"], &["Y1"], &["U0"]) + mi(&["S1"], &["U0"], &[]),
        ),
        (
            "H(S1)+R0+R1".to_string(),
            mi(&["U0", "U1", "S1"], &["Y1"], &[]) + mi(&["U0"], &["S1"], &[]),
        ),
        (
            "H(S2)+R2".to_string(),
            mi(&["U2", "S2"], &["Y2"], &["U0"]) + mi(&["S2"], &["U0"], &[]),
        ),
        (
            "H(S2)+R0+R2".to_string(),
            mi(&["U0", "U2", "S2"], &["Y2"], &[]) + mi(&["U0"], &["S2"], &[]),
        ),
    ];
    Ok((covering, decoding))
}

#[derive(Debug, Clone)]
pub struct FeasibleRates {
    pub feasible: bool,
    pub witness: Option<RateTriple>,
}

/// Exact feasibility of the rate system: is there (R0, R1, R2) meeting
/// all seven covering lower bounds strictly and all four decoding
/// upper bounds strictly? Inputs are converted to rationals exactly
/// (every f64 is a rational), so the verdict has no rounding slack.
pub fn rate_region_feasible(
    covering: &[f64; 7],
    decoding: &[f64; 4],
    h1: f64,
    h2: f64,
) -> FeasibleRates {
    let system = rate_system(covering, decoding, h1, h2);
    match is_feasible(&system) {
        Feasibility::Feasible(point) => {
            let get = |name: &str| rational_to_f64(&point[name]).max(0.0);
            FeasibleRates {
                feasible: true,
                witness: Some(RateTriple {
                    r0: get("R0"),
                    r1: get("R1"),
                    r2: get("R2"),
                }),
            }
        }
        Feasibility::Infeasible(_) => FeasibleRates {
            feasible: false,
            witness: None,
        },
    }
}

fn exact(x: f64) -> Rational {
    BigRational::from_float(x).expect("bound values must be finite")
}

/// The instantiated rate system over {R0, R1, R2}: seven strict lower
/// bounds and four strict upper bounds.
pub(super) fn rate_system(
    covering: &[f64; 7],
    decoding: &[f64; 4],
    h1: f64,
    h2: f64,
) -> LinSystem {
    let vars: Vec<String> = ["R0", "R1", "R2"].iter().map(|s| s.to_string()).collect();
    let mut sys = LinSystem::new(vars);
    let combos: [&[&str]; 7] = [
        &["R0"],
        &["R1"],
        &["R2"],
        &["R0", "R1"],
        &["R0", "R2"],
        &["R1", "R2"],
        &["R0", "R1", "R2"],
    ];
    for (combo, &bound) in combos.iter().zip(covering) {
        // sum(combo) > bound  <=>  -sum(combo) < -bound
        let mut coeffs = BTreeMap::new();
        for v in *combo {
            coeffs.insert(v.to_string(), -Rational::from_integer(1.into()));
        }
        sys.push(LinIneq::new(
            coeffs,
            Relation::Lt,
            -exact(bound),
        ))
        .expect("rate variables registered");
    }
    let upper: [(&[&str], f64); 4] = [
        (&["R1"], decoding[0] - h1),
        (&["R0", "R1"], decoding[1] - h1),
        (&["R2"], decoding[2] - h2),
        (&["R0", "R2"], decoding[3] - h2),
    ];
    for (combo, bound) in upper {
        let mut coeffs = BTreeMap::new();
        for v in combo {
            coeffs.insert(v.to_string(), Rational::from_integer(1.into()));
        }
        sys.push(LinIneq::new(
            coeffs,
            Relation::Lt,
            exact(bound),
        ))
        .expect("rate variables registered");
    }
    sys
}

const RATE_VARS: [&str; 16] = [
    "R0", "R1", "R2", "H1", "H2", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10",
    "v11",
];

/// The symbolic rate system: the seven covering and four decoding rows
/// over (R0, R1, R2, H1, H2, v1..v11), all strict.
pub fn symbolic_rate_system() -> LinSystem {
    let rows = [
        "v1 - R0 < 0",
        "v2 - R1 < 0",
        "v3 - R2 < 0",
        "v4 - R0 - R1 < 0",
        "v5 - R0 - R2 < 0",
        "v6 - R1 - R2 < 0",
        "v7 - R0 - R1 - R2 < 0",
        "H1 + R1 - v8 < 0",
        "H1 + R0 + R1 - v9 < 0",
        "H2 + R2 - v10 < 0",
        "H2 + R0 + R2 - v11 < 0",
    ];
    build_system(&rows)
}

/// The eleven provable ordering relations among v1..v11, as closed
/// side-condition rows.
pub fn symbolic_side_conditions() -> LinSystem {
    let rows = [
        "-v1 <= 0",
        "-v2 <= 0",
        "-v3 <= 0",
        "v1 + v2 - v4 <= 0",
        "v1 + v3 - v5 <= 0",
        "v2 + v3 - v6 <= 0",
        "v4 + v6 - v2 - v7 <= 0",
        "v4 + v5 - v1 - v7 <= 0",
        "v5 + v6 - v3 - v7 <= 0",
        "v8 - v9 <= 0",
        "v10 - v11 <= 0",
    ];
    build_system(&rows)
}

fn build_system(rows: &[&str]) -> LinSystem {
    let vars: Vec<String> = RATE_VARS.iter().map(|s| s.to_string()).collect();
    let mut sys = LinSystem::new(vars.clone());
    for r in rows {
        sys.push(parse_lin_ineq(r).expect("fixed row text parses"))
            .expect("fixed rows use registered variables");
    }
    sys
}

#[derive(Debug, Clone)]
pub struct FmPipeline {
    /// The full eliminated system (side conditions included when used).
    pub eliminated: LinSystem,
    /// Rows mentioning H1 or H2 after redundancy removal (or raw when
    /// side conditions are disabled).
    pub h_rows: Vec<LinIneq>,
    /// Count of H rows straight out of elimination, before any
    /// LP-based pruning.
    pub raw_h_count: usize,
}

/// Eliminate the rate variables from the symbolic system, optionally
/// adding the provable side conditions and pruning implied rows.
pub fn fm_pipeline(order: &[&str], with_side_conditions: bool) -> FmPipeline {
    let mut sys = symbolic_rate_system();
    if with_side_conditions {
        for row in symbolic_side_conditions().rows {
            sys.push(row).expect("shared variable universe");
        }
    }
    let eliminated = eliminate_all(&sys, order).expect("rate variables present");
    let raw_h_count = eliminated.rows.iter().filter(|r| mentions_h(r)).count();
    let pruned = if with_side_conditions {
        remove_redundant(&eliminated)
    } else {
        eliminated.clone()
    };
    let h_rows: Vec<LinIneq> = pruned.rows.iter().filter(|r| mentions_h(r)).cloned().collect();
    FmPipeline {
        eliminated: pruned,
        h_rows,
        raw_h_count,
    }
}

fn mentions_h(row: &LinIneq) -> bool {
    row.coefficients.contains_key("H1") || row.coefficients.contains_key("H2")
}

/// The eight-row projection the pipeline must reproduce.
#[cfg(test)]
pub(super) fn golden_h_rows() -> Vec<LinIneq> {
    [
        "H1 < v9 - v4",
        "H1 < v8 - v2",
        "H2 < v11 - v5",
        "H2 < v10 - v3",
        "H1 + H2 < v9 + v10 - v7",
        "H1 + H2 < v8 + v11 - v7",
        "H1 + H2 < v8 + v10 - v6",
        "H1 + H2 < v9 + v11 - v7 - v1",
    ]
    .iter()
    .map(|r| parse_lin_ineq(r).expect("fixed row text parses"))
    .collect()
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn canonical_set(rows: &[LinIneq]) -> BTreeSet<String> {
        rows.iter().map(|r| format!("{r}")).collect()
    }

    #[test]
    fn elimination_with_side_conditions_reproduces_projection() {
        let got = fm_pipeline(&["R0", "R1", "R2"], true);
        assert_eq!(
            canonical_set(&got.h_rows),
            canonical_set(&golden_h_rows()),
            "pruned H rows differ from the known projection"
        );
    }

    #[test]
    fn elimination_is_order_independent() {
        let a = fm_pipeline(&["R0", "R1", "R2"], true);
        let b = fm_pipeline(&["R2", "R0", "R1"], true);
        assert_eq!(canonical_set(&a.h_rows), canonical_set(&b.h_rows));
    }

    #[test]
    fn raw_elimination_reports_its_row_count() {
        let raw = fm_pipeline(&["R0", "R1", "R2"], false);
        assert!(raw.raw_h_count >= 8, "raw count was {}", raw.raw_h_count);
        // Every golden row must already be implied by the raw system.
        let mut with_golden = raw.eliminated.clone();
        let before = remove_redundant(&with_golden).rows.len();
        for row in golden_h_rows() {
            with_golden.push(row).unwrap();
        }
        with_golden.dedup();
        let after = remove_redundant(&with_golden).rows.len();
        assert!(after <= before + 0, "golden rows added new constraints");
    }

    #[test]
    fn degenerate_bounds_are_infeasible() {
        let verdict = rate_region_feasible(&[0.0; 7], &[0.0; 4], 0.0, 0.0);
        assert!(!verdict.feasible);
    }

    #[test]
    fn slack_bounds_are_feasible_with_witness() {
        let covering = [0.1, 0.1, 0.1, 0.3, 0.3, 0.3, 0.5];
        let decoding = [2.0, 3.0, 2.0, 3.0];
        let verdict = rate_region_feasible(&covering, &decoding, 0.5, 0.5);
        assert!(verdict.feasible);
        let w = verdict.witness.unwrap();
        assert!(w.r0 > 0.1 && w.r1 > 0.1 && w.r2 > 0.1);
        assert!(0.5 + w.r1 < 2.0);
    }
}
