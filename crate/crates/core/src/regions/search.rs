//! Randomized search for an auxiliary choice maximizing the minimum
//! margin of the five main coding-theorem rows. Random-restart
//! coordinate ascent: per-slice simplex moves on the auxiliary
//! conditional plus exhaustive per-entry moves on the symbol map.
//! Deterministic given the seed; restarts run in parallel with
//! per-restart derived seeds and a lexicographic merge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exec;
use crate::measures::{Conditional, XMap};

use super::{eval_theorem2, AuxiliarySpec, RegionError, RegionReport, ScenarioSpec};

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub aux: AuxiliarySpec,
    pub report: RegionReport,
    /// Objective value: the minimum row margin of `report`.
    pub best_margin: f64,
    /// Total candidate evaluations spent across all restarts.
    pub evaluations: usize,
}

/// Search over p(u0,u1,u2|s1,s2) with the given alphabet sizes and all
/// deterministic symbol maps into the channel input alphabet,
/// maximizing the minimum of the five row margins. `budget` caps the
/// total number of candidate evaluations.
pub fn search_feasible_aux(
    scenario: &ScenarioSpec,
    cards: (usize, usize, usize),
    budget: usize,
    seed: u64,
) -> Result<SearchOutcome, RegionError> {
    let budget = budget.max(1);
    let restarts = (budget / 200).clamp(1, 16);
    let per_restart = budget / restarts;
    let results = exec::map_indexed(restarts, |r| {
        let derived = seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        run_restart(scenario, cards, per_restart, derived)
    });
    let mut best: Option<(f64, usize, Candidate)> = None;
    let mut evaluations = 0;
    for (idx, res) in results.into_iter().enumerate() {
        let (cand, margin, used) = res?;
        evaluations += used;
        let better = match &best {
            None => true,
            Some((m, _, _)) => margin > *m,
        };
        if better {
            best = Some((margin, idx, cand));
        }
    }
    let (best_margin, _, cand) = best.expect("at least one restart");
    let aux = cand.to_spec(scenario, cards)?;
    let report = eval_theorem2(scenario, &aux)?;
    Ok(SearchOutcome {
        aux,
        report,
        best_margin,
        evaluations,
    })
}

/// One search point: a simplex per source pair plus a symbol value per
/// (source pair, auxiliary triple) cell.
#[derive(Debug, Clone)]
struct Candidate {
    slices: Vec<Vec<f64>>,
    x_values: Vec<usize>,
}

impl Candidate {
    fn to_spec(
        &self,
        scenario: &ScenarioSpec,
        cards: (usize, usize, usize),
    ) -> Result<AuxiliarySpec, RegionError> {
        let n1 = scenario.source.variables()[0].alphabet_size;
        let n2 = scenario.source.variables()[1].alphabet_size;
        let (c0, c1, c2) = cards;
        let probs: Vec<f64> = self.slices.iter().flatten().copied().collect();
        let aux = Conditional::new(vec![n1, n2], vec![c0, c1, c2], probs)?;
        let nx = scenario.channel.given_cells();
        let x_map = XMap::new(vec![n1, n2, c0, c1, c2], nx, self.x_values.clone())?;
        Ok(AuxiliarySpec { aux, x_map })
    }
}

fn run_restart(
    scenario: &ScenarioSpec,
    cards: (usize, usize, usize),
    budget: usize,
    seed: u64,
) -> Result<(Candidate, f64, usize), RegionError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n1 = scenario.source.variables()[0].alphabet_size;
    let n2 = scenario.source.variables()[1].alphabet_size;
    let (c0, c1, c2) = cards;
    let cells = c0 * c1 * c2;
    let nx = scenario.channel.given_cells();
    let slices: Vec<Vec<f64>> = (0..n1 * n2)
        .map(|_| random_simplex(&mut rng, cells))
        .collect();
    let x_values: Vec<usize> = (0..n1 * n2 * cells).map(|_| rng.gen_range(0..nx)).collect();
    let mut current = Candidate { slices, x_values };
    let mut used = 0;
    let mut score = {
        used += 1;
        objective(scenario, cards, &current)?
    };
    let alphas = [1.0, 0.5, 0.25, 0.1];
    loop {
        let mut improved = false;
        // Symbol-map pass: try every value for every entry.
        'map: for i in 0..current.x_values.len() {
            let original = current.x_values[i];
            for v in 0..nx {
                if v == original || used >= budget {
                    if used >= budget {
                        break 'map;
                    }
                    continue;
                }
                current.x_values[i] = v;
                used += 1;
                let s = objective(scenario, cards, &current)?;
                if s > score {
                    score = s;
                    improved = true;
                } else {
                    current.x_values[i] = original;
                }
            }
        }
        // Simplex passes: mix each slice toward single corners and
        // two-corner midpoints at a few step sizes.
        'slices: for slice_idx in 0..current.slices.len() {
            for corner in 0..cells {
                for &alpha in &alphas {
                    if used >= budget {
                        break 'slices;
                    }
                    let old = current.slices[slice_idx].clone();
                    for (j, p) in current.slices[slice_idx].iter_mut().enumerate() {
                        let target = if j == corner { 1.0 } else { 0.0 };
                        *p = (1.0 - alpha) * *p + alpha * target;
                    }
                    used += 1;
                    let s = objective(scenario, cards, &current)?;
                    if s > score {
                        score = s;
                        improved = true;
                    } else {
                        current.slices[slice_idx] = old;
                    }
                }
            }
            for a in 0..cells {
                for b in (a + 1)..cells {
                    if used >= budget {
                        break 'slices;
                    }
                    let old = current.slices[slice_idx].clone();
                    for (j, p) in current.slices[slice_idx].iter_mut().enumerate() {
                        *p = if j == a || j == b { 0.5 } else { 0.0 };
                    }
                    used += 1;
                    let s = objective(scenario, cards, &current)?;
                    if s > score {
                        score = s;
                        improved = true;
                    } else {
                        current.slices[slice_idx] = old;
                    }
                }
            }
        }
        if !improved || used >= budget {
            break;
        }
    }
    Ok((current, score, used))
}

fn objective(
    scenario: &ScenarioSpec,
    cards: (usize, usize, usize),
    cand: &Candidate,
) -> Result<f64, RegionError> {
    let spec = cand.to_spec(scenario, cards)?;
    Ok(eval_theorem2(scenario, &spec)?.min_margin())
}

fn random_simplex(rng: &mut ChaCha8Rng, cells: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..cells)
        .map(|_| -(rng.gen_range(1e-12..1.0f64)).ln())
        .collect();
    let total: f64 = v.iter().sum();
    for p in &mut v {
        *p /= total;
    }
    v
}

#[cfg(test)]
mod tests {
    use crate::measures::{FiniteVariable, JointPmf};

    use super::*;

    fn ber02_identity() -> ScenarioSpec {
        let source = JointPmf::new(
            vec![FiniteVariable::new("S1", 2), FiniteVariable::new("S2", 2)],
            vec![0.8, 0.0, 0.0, 0.2],
        )
        .unwrap();
        let channel = Conditional::new(
            vec![2],
            vec![2, 2],
            vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        ScenarioSpec { source, channel }
    }

    #[test]
    fn finds_feasible_point_for_skewed_identity_source() {
        let scenario = ber02_identity();
        let out = search_feasible_aux(&scenario, (2, 2, 1), 6000, 7).unwrap();
        assert!(
            out.best_margin >= 0.27,
            "best margin {} below the hand-built benchmark",
            out.best_margin
        );
        assert!(out.report.all_satisfied());
    }

    #[test]
    fn seed_reproducibility() {
        let scenario = ber02_identity();
        let a = search_feasible_aux(&scenario, (2, 2, 1), 800, 42).unwrap();
        let b = search_feasible_aux(&scenario, (2, 2, 1), 800, 42).unwrap();
        assert_eq!(a.best_margin.to_bits(), b.best_margin.to_bits());
        assert_eq!(a.aux.x_map.values, b.aux.x_map.values);
        assert_eq!(a.aux.aux.probs, b.aux.aux.probs);
    }

    #[test]
    fn singleton_cardinalities_search_symbol_map_only() {
        let scenario = ber02_identity();
        let out = search_feasible_aux(&scenario, (1, 1, 1), 200, 3).unwrap();
        // Constant auxiliaries over a noiseless channel: best maps are
        // injective on the source support; margins remain bounded by
        // the help-free region, just assert determinism of the shape.
        assert_eq!(out.aux.aux.out_shape, vec![1, 1, 1]);
        assert_eq!(out.aux.x_map.values.len(), 4);
    }
}
