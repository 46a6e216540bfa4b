use num::{One, Signed, Zero};

use crate::measures::InfoExpression;
use crate::polytope::{solve, Rational, Rel, StdLp, StdOutcome};

use super::{GroundSet, ItpError, ProofConstraint};

/// Outcome of a Shannon-provability query.
#[derive(Debug, Clone)]
pub enum ProofResult {
    /// The target is a nonnegative combination of elemental inequalities
    /// plus constraint rows. `elemental_multipliers[i]` weights the i-th
    /// elemental inequality; `constraint_multipliers[j]` weights the
    /// j-th constraint (sign free).
    Proven {
        elemental_multipliers: Vec<Rational>,
        constraint_multipliers: Vec<Rational>,
    },
    /// A point of the Shannon cone (satisfying all constraints) on
    /// which the target is negative. Not necessarily entropic: this
    /// certifies only that the target is not Shannon-provable.
    NotProvable {
        /// Entropy vector indexed like GroundSet::vectorize.
        counterexample: Vec<Rational>,
    },
}

impl ProofResult {
    pub fn is_proven(&self) -> bool {
        matches!(self, ProofResult::Proven { .. })
    }
}

/// The elemental Shannon inequalities over a ground set:
/// H(Xi | rest) >= 0 for every i, and I(Xi; Xj | K) >= 0 for every
/// unordered pair i < j and every K among the remaining variables.
/// Count: N + C(N,2) * 2^(N-2) for N >= 2.
pub fn elemental_inequalities(ground: &GroundSet) -> Vec<InfoExpression> {
    let names: Vec<&str> = ground.names().iter().map(|s| s.as_str()).collect();
    let n = names.len();
    let mut out = Vec::new();
    for i in 0..n {
        let rest: Vec<&str> = (0..n).filter(|&k| k != i).map(|k| names[k]).collect();
        out.push(InfoExpression::cond_entropy(&[names[i]], &rest));
    }
    if n < 2 {
        return out;
    }
    for i in 0..n {
        for j in i + 1..n {
            let others: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
            for submask in 0..(1usize << others.len()) {
                let cond: Vec<&str> = others
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| submask & (1 << b) != 0)
                    .map(|(_, &k)| names[k])
                    .collect();
                out.push(InfoExpression::mutual(&[names[i]], &[names[j]], &cond));
            }
        }
    }
    out
}

/// The ground set actually needed for a query: the input ground
/// restricted (in order) to variables mentioned by the target or a
/// constraint. Provability over the restriction coincides with
/// provability over the full set -- a restricted counterexample
/// extends by making the unmentioned variables constant -- while the
/// LP shrinks exponentially. Certificates returned by [`prove`] index
/// the elemental inequalities of this reduced set.
pub(super) fn reduced_ground(
    target: &InfoExpression,
    constraints: &[ProofConstraint],
    ground: &GroundSet,
) -> Result<GroundSet, ItpError> {
    let mut used = target.support();
    for c in constraints {
        used.extend(c.expression().support());
    }
    for name in &used {
        if !ground.names().contains(name) {
            return Err(ItpError::OutsideGround(name.clone()));
        }
    }
    let kept: Vec<&str> = ground
        .names()
        .iter()
        .filter(|n| used.contains(*n))
        .map(|n| n.as_str())
        .collect();
    if kept.is_empty() {
        // Zero target; keep one variable so the spaces stay nonempty.
        return GroundSet::new(&ground.names()[..1]
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>());
    }
    GroundSet::new(&kept)
}

/// Decide whether `target >= 0` is implied by the Shannon cone plus
/// `constraints`. Exact rational arithmetic throughout; deterministic.
pub fn prove(
    target: &InfoExpression,
    constraints: &[ProofConstraint],
    ground: &GroundSet,
) -> Result<ProofResult, ItpError> {
    let full = ground;
    let ground = &reduced_ground(target, constraints, ground)?;
    let t = ground.vectorize(target)?;
    let elementals = elemental_inequalities(ground);
    let e_vecs: Vec<Vec<Rational>> = elementals
        .iter()
        .map(|e| ground.vectorize(e))
        .collect::<Result<_, _>>()?;
    let c_vecs: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|c| ground.vectorize(&c.expression()))
        .collect::<Result<_, _>>()?;

    // Dual form: find lambda >= 0 and free mu with
    //   E^T lambda + C^T mu = t.
    // Free mu split into mu = mp - mm.
    let dim = ground.dimension();
    let n_lambda = e_vecs.len();
    let ncols = n_lambda + 2 * c_vecs.len();
    let mut rows = Vec::with_capacity(dim);
    for coord in 0..dim {
        let mut coeffs = vec![Rational::zero(); ncols];
        for (i, e) in e_vecs.iter().enumerate() {
            coeffs[i] = e[coord].clone();
        }
        for (j, c) in c_vecs.iter().enumerate() {
            coeffs[n_lambda + 2 * j] = c[coord].clone();
            coeffs[n_lambda + 2 * j + 1] = -c[coord].clone();
        }
        rows.push((coeffs, Rel::Eq, t[coord].clone()));
    }
    let objective = vec![Rational::zero(); ncols];
    match solve(&StdLp { ncols, rows }, &objective) {
        StdOutcome::Optimal { x, .. } => {
            let elemental_multipliers = x[..n_lambda].to_vec();
            let constraint_multipliers: Vec<Rational> = (0..c_vecs.len())
                .map(|j| &x[n_lambda + 2 * j] - &x[n_lambda + 2 * j + 1])
                .collect();
            debug_assert!(certificate_recombines(
                &t,
                &e_vecs,
                &c_vecs,
                &elemental_multipliers,
                &constraint_multipliers
            ));
            Ok(ProofResult::Proven {
                elemental_multipliers,
                constraint_multipliers,
            })
        }
        StdOutcome::Unbounded => unreachable!("feasibility LP has zero objective"),
        StdOutcome::Infeasible { .. } => {
            // Witness: a Shannon-cone point h with C h = 0 and t.h = -1.
            // Maximize -t.h subject to E h >= 0, C h = 0, -t.h <= 1;
            // h free, split.
            let ncols = 2 * dim;
            let mut rows: Vec<(Vec<Rational>, Rel, Rational)> = Vec::new();
            let split = |v: &[Rational]| -> Vec<Rational> {
                let mut out = Vec::with_capacity(2 * dim);
                for c in v {
                    out.push(c.clone());
                    out.push(-c.clone());
                }
                out
            };
            for e in &e_vecs {
                // E h >= 0  <=>  -E h <= 0
                let neg: Vec<Rational> = e.iter().map(|c| -c.clone()).collect();
                rows.push((split(&neg), Rel::Le, Rational::zero()));
            }
            for c in &c_vecs {
                rows.push((split(c), Rel::Eq, Rational::zero()));
            }
            let neg_t: Vec<Rational> = t.iter().map(|c| -c.clone()).collect();
            let obj = split(&neg_t);
            rows.push((obj.clone(), Rel::Le, Rational::one()));
            match solve(&StdLp { ncols, rows }, &obj) {
                StdOutcome::Optimal { x, value, .. } => {
                    assert!(
                        value.is_positive(),
                        "dual infeasibility must yield a violating ray"
                    );
                    let reduced: Vec<Rational> =
                        (0..dim).map(|i| &x[2 * i] - &x[2 * i + 1]).collect();
                    // Report over the caller's ground set: unmentioned
                    // variables behave as constants, so each subset
                    // inherits the entropy of its mentioned part.
                    let kept_mask: Vec<usize> = full
                        .names()
                        .iter()
                        .map(|n| {
                            ground
                                .names()
                                .iter()
                                .position(|k| k == n)
                                .map_or(0, |p| 1usize << p)
                        })
                        .collect();
                    let counterexample: Vec<Rational> = (1..=full.dimension())
                        .map(|mask| {
                            let mut red_mask = 0usize;
                            for (i, bit) in kept_mask.iter().enumerate() {
                                if mask & (1 << i) != 0 {
                                    red_mask |= bit;
                                }
                            }
                            if red_mask == 0 {
                                Rational::zero()
                            } else {
                                reduced[red_mask - 1].clone()
                            }
                        })
                        .collect();
                    Ok(ProofResult::NotProvable { counterexample })
                }
                _ => unreachable!("witness LP is feasible (h = 0) and capped"),
            }
        }
    }
}

fn certificate_recombines(
    t: &[Rational],
    e_vecs: &[Vec<Rational>],
    c_vecs: &[Vec<Rational>],
    lambda: &[Rational],
    mu: &[Rational],
) -> bool {
    let dim = t.len();
    if lambda.iter().any(|l| l.is_negative()) {
        return false;
    }
    for coord in 0..dim {
        let mut acc = Rational::zero();
        for (l, e) in lambda.iter().zip(e_vecs) {
            acc += l * &e[coord];
        }
        for (m, c) in mu.iter().zip(c_vecs) {
            acc += m * &c[coord];
        }
        if acc != t[coord] {
            return false;
        }
    }
    true
}

/// Check a Proven certificate against its target; used by callers that
/// want an end-to-end soundness assertion rather than a debug check.
pub fn verify_certificate(
    target: &InfoExpression,
    constraints: &[ProofConstraint],
    ground: &GroundSet,
    result: &ProofResult,
) -> Result<bool, ItpError> {
    match result {
        ProofResult::Proven {
            elemental_multipliers,
            constraint_multipliers,
        } => {
            let ground = &reduced_ground(target, constraints, ground)?;
            let t = ground.vectorize(target)?;
            let e_vecs: Vec<Vec<Rational>> = elemental_inequalities(ground)
                .iter()
                .map(|e| ground.vectorize(e))
                .collect::<Result<_, _>>()?;
            let c_vecs: Vec<Vec<Rational>> = constraints
                .iter()
                .map(|c| ground.vectorize(&c.expression()))
                .collect::<Result<_, _>>()?;
            Ok(certificate_recombines(
                &t,
                &e_vecs,
                &c_vecs,
                elemental_multipliers,
                constraint_multipliers,
            ))
        }
        ProofResult::NotProvable { .. } => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use num::ToPrimitive;

    use super::*;
    use crate::itp::{expand_v_definitions, parse_target, GroundSet};

    #[test]
    fn elemental_counts_match_enumeration_formula() {
        for (n, expected) in [(1usize, 1usize), (2, 3), (3, 9), (4, 28), (7, 679)] {
            let names: Vec<String> = (0..n).map(|i| format!("X{i}")).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let ground = GroundSet::new(&refs).unwrap();
            assert_eq!(elemental_inequalities(&ground).len(), expected);
        }
    }

    #[test]
    fn single_variable_elemental_is_its_entropy() {
        let ground = GroundSet::new(&["X1"]).unwrap();
        let es = elemental_inequalities(&ground);
        assert_eq!(es, vec![InfoExpression::entropy(&["X1"])]);
    }

    #[test]
    fn mutual_information_nonnegativity_is_elemental() {
        let ground = GroundSet::new(&["A", "B"]).unwrap();
        let target = InfoExpression::mutual(&["A"], &["B"], &[]);
        let result = prove(&target, &[], &ground).unwrap();
        assert!(result.is_proven());
        assert!(verify_certificate(&target, &[], &ground, &result).unwrap());
    }

    #[test]
    fn conditioning_can_increase_mutual_information() {
        // Neither I(A;B) >= I(A;B|C) nor the reverse is Shannon-type.
        let ground = GroundSet::new(&["A", "B", "C"]).unwrap();
        let forward = InfoExpression::mutual(&["A"], &["B"], &[])
            - InfoExpression::mutual(&["A"], &["B"], &["C"]);
        let backward = forward.clone() * num::BigRational::from_integer((-1).into());
        for target in [forward, backward] {
            match prove(&target, &[], &ground).unwrap() {
                ProofResult::NotProvable { counterexample } => {
                    // Witness violates the target strictly.
                    let ground_vec = ground.vectorize(&target).unwrap();
                    let dot: Rational = ground_vec
                        .iter()
                        .zip(&counterexample)
                        .map(|(a, b)| a * b)
                        .sum();
                    assert!(dot.to_f64().unwrap() < 0.0);
                }
                ProofResult::Proven { .. } => panic!("should not be Shannon-provable"),
            }
        }
    }

    #[test]
    fn constraints_unlock_data_processing() {
        // With the Markov chain A - B - C, I(A;C) <= I(A;B).
        let ground = GroundSet::new(&["A", "B", "C"]).unwrap();
        let target = InfoExpression::mutual(&["A"], &["B"], &[])
            - InfoExpression::mutual(&["A"], &["C"], &[]);
        assert!(!prove(&target, &[], &ground).unwrap().is_proven());
        let markov = ProofConstraint::Independence {
            a: vec!["A".into()],
            b: vec!["C".into()],
            given: vec!["B".into()],
        };
        let result = prove(&target, &[markov.clone()], &ground).unwrap();
        assert!(result.is_proven());
        assert!(verify_certificate(&target, &[markov], &ground, &result).unwrap());
    }

    #[test]
    fn auxiliary_rate_relations_are_shannon_provable() {
        // The eleven ordering relations among v1..v11 used to justify
        // the rate-variable elimination, each as "expr >= 0".
        let ground = GroundSet::new(&["U0", "U1", "U2", "S1", "S2", "Y1", "Y2"]).unwrap();
        let v = expand_v_definitions(&ground).unwrap();
        let zero = InfoExpression::zero();
        let targets: Vec<(&str, InfoExpression)> = vec![
            ("v1 >= 0", v["v1"].clone() - zero.clone()),
            ("v2 >= 0", v["v2"].clone()),
            ("v3 >= 0", v["v3"].clone()),
            ("v1+v2 <= v4", v["v4"].clone() - v["v1"].clone() - v["v2"].clone()),
            ("v1+v3 <= v5", v["v5"].clone() - v["v1"].clone() - v["v3"].clone()),
            ("v2+v3 <= v6", v["v6"].clone() - v["v2"].clone() - v["v3"].clone()),
            (
                "v4+v6 <= v2+v7",
                v["v2"].clone() + v["v7"].clone() - v["v4"].clone() - v["v6"].clone(),
            ),
            (
                "v4+v5 <= v1+v7",
                v["v1"].clone() + v["v7"].clone() - v["v4"].clone() - v["v5"].clone(),
            ),
            (
                "v5+v6 <= v3+v7",
                v["v3"].clone() + v["v7"].clone() - v["v5"].clone() - v["v6"].clone(),
            ),
            ("v8 <= v9", v["v9"].clone() - v["v8"].clone()),
            ("v10 <= v11", v["v11"].clone() - v["v10"].clone()),
        ];
        for (label, target) in targets {
            let result = prove(&target, &[], &ground).unwrap();
            assert!(result.is_proven(), "{label} should be Shannon-provable");
            assert!(verify_certificate(&target, &[], &ground, &result).unwrap());
        }
    }

    #[test]
    fn parsed_chain_rule_gap_is_provable() {
        let ground = GroundSet::new(&["U0", "U1", "S1", "S2"]).unwrap();
        let target = parse_target("I(U1;U0,S2|S1) - I(U1;S2|S1) >= 0").unwrap();
        assert!(prove(&target, &[], &ground).unwrap().is_proven());
    }
}
