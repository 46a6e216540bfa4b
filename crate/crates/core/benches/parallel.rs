//! Compares the rayon-backed work pool against the always-sequential
//! reference on the dominant workload: independent Monte Carlo
//! covering trials (source draw + joint-typicality encoding search).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use corrbc::exec::{map_indexed, map_indexed_seq};
use corrbc::measures::{Conditional, FiniteVariable, JointPmf, XMap};
use corrbc::regions::{AuxiliarySpec, RateTriple, ScenarioSpec};
use corrbc::simcode::{encode, sample_sources, CodebookEnsemble, Scheme, TypicalityParams};

/// Uniform binary doubly-symmetric setup: S1 = S2, U0 = S1,
/// U1 = U2 const, X = U0, noiseless channel.
fn identity_scenario() -> (ScenarioSpec, AuxiliarySpec) {
    let source = JointPmf::new(
        vec![FiniteVariable::new("S1", 2), FiniteVariable::new("S2", 2)],
        vec![0.5, 0.0, 0.0, 0.5],
    )
    .unwrap();
    let channel = Conditional::new(
        vec![2],
        vec![2, 2],
        vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    )
    .unwrap();
    let aux = Conditional::new(
        vec![2, 2],
        vec![2, 1, 1],
        vec![1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 1.0],
    )
    .unwrap();
    let x_map = XMap::new(vec![2, 2, 2, 1, 1], 2, vec![0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
    (
        ScenarioSpec { source, channel },
        AuxiliarySpec { aux, x_map },
    )
}

fn covering_trial(template: &CodebookEnsemble, params: &TypicalityParams, trial: usize) -> bool {
    let seed = 0x5EED ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    let book = template.reseed(seed);
    let (s1, s2) = sample_sources(&book, params, seed);
    !encode(&s1, &s2, &book, params).unwrap().found
}

fn bench_covering(c: &mut Criterion) {
    let (scenario, aux) = identity_scenario();
    let params = TypicalityParams::new(12, 2.0, 1.5).unwrap();
    let rates = RateTriple::new(1.2, 0.0, 0.0).unwrap();
    let template =
        CodebookEnsemble::new(&scenario, &aux, &rates, Scheme::Plain, &params, 1).unwrap();

    let mut group = c.benchmark_group("covering_trials");
    for trials in [16usize, 64] {
        group.bench_with_input(
            BenchmarkId::new("work_pool", trials),
            &trials,
            |b, &trials| {
                b.iter(|| {
                    map_indexed(trials, |t| covering_trial(&template, &params, t))
                        .iter()
                        .filter(|&&f| f)
                        .count()
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", trials),
            &trials,
            |b, &trials| {
                b.iter(|| {
                    map_indexed_seq(trials, |t| covering_trial(&template, &params, t))
                        .iter()
                        .filter(|&&f| f)
                        .count()
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_covering);
criterion_main!(benches);
