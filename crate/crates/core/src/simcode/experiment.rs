//! Joint-typicality encoding/decoding and the Monte Carlo drivers for
//! the covering-failure and end-to-end error experiments. Trials are
//! independent tasks: each derives its own key stream from the master
//! seed, so results are bit-identical regardless of parallelism.

use crate::exec;
use crate::measures::Conditional;
use crate::regions::{AuxiliarySpec, RateTriple, ScenarioSpec};

use super::codebook::{CodebookEnsemble, Scheme};
use super::prf::{cdf_row, chain, sample_cdf, unit, ROLE_BOOK, ROLE_NOISE, ROLE_TRIAL};
use super::typicality::TypeChecker;
use super::{DecodeOutcome, SimError, TrialOutcome, TypicalityParams, TUPLE_CHECK_BUDGET};

/// Counter of candidate typicality evaluations, shared across the
/// encoding and decoding searches of one trial.
pub(crate) struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    pub(crate) fn new(cap: u64) -> Budget {
        Budget { used: 0, cap }
    }

    fn charge(&mut self) -> Result<(), SimError> {
        self.used += 1;
        if self.used > self.cap {
            return Err(SimError::BudgetExceeded {
                needed: self.used,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Encoder verdict: the chosen message triple (1-based) and whether a
/// typical triple was actually found ((1,1,1) is the blind fallback).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeResult {
    pub m0: u64,
    pub m1: u64,
    pub m2: u64,
    pub found: bool,
}

/// Decoder verdict for one received sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeResult {
    /// Exactly one source sequence admitted a typical tuple.
    Seq(Vec<usize>),
    /// No source sequence admitted a typical tuple.
    NoneTypical,
    /// Two or more source sequences admitted typical tuples.
    Ambiguous,
}

fn check_word(name: &str, word: &[usize], n: usize, alphabet: usize) -> Result<(), SimError> {
    if word.len() != n {
        return Err(SimError::LengthMismatch(n, word.len()));
    }
    for &s in word {
        if s >= alphabet {
            return Err(SimError::AlphabetMismatch(s, alphabet));
        }
    }
    let _ = name;
    Ok(())
}

/// One i.i.d. source-pair block keyed by a trial seed.
pub fn sample_sources(
    book: &CodebookEnsemble,
    params: &TypicalityParams,
    trial_seed: u64,
) -> (Vec<usize>, Vec<usize>) {
    let mut s1 = Vec::with_capacity(params.n);
    let mut s2 = Vec::with_capacity(params.n);
    for pos in 0..params.n {
        let (a, b) = book.source_symbol(trial_seed, pos);
        s1.push(a);
        s2.push(b);
    }
    (s1, s2)
}

/// Memoryless channel: (y1_i, y2_i) ~ p(y1, y2 | x_i), deterministic
/// given the noise seed.
pub fn transmit(
    x: &[usize],
    channel: &Conditional,
    noise_seed: u64,
) -> Result<(Vec<usize>, Vec<usize>), SimError> {
    let n_x = channel.given_cells();
    let out = channel.out_cells();
    let rows: Vec<Vec<f64>> = (0..n_x)
        .map(|g| cdf_row(&channel.probs[g * out..(g + 1) * out]))
        .collect();
    let n_y2 = channel.out_shape[1];
    let mut y1 = Vec::with_capacity(x.len());
    let mut y2 = Vec::with_capacity(x.len());
    for (pos, &xi) in x.iter().enumerate() {
        if xi >= n_x {
            return Err(SimError::AlphabetMismatch(xi, n_x));
        }
        let h = chain(chain(noise_seed, ROLE_NOISE), pos as u64);
        let flat = sample_cdf(&rows[xi], unit(h));
        y1.push(flat / n_y2);
        y2.push(flat % n_y2);
    }
    Ok((y1, y2))
}

/// First message triple, in lexicographic (m0, m1, m2) order, whose
/// five-tuple (s1, s2, u0, u1, u2) is ε′-typical; (1,1,1) if none.
pub fn encode(
    s1: &[usize],
    s2: &[usize],
    book: &CodebookEnsemble,
    params: &TypicalityParams,
) -> Result<EncodeResult, SimError> {
    let mut budget = Budget::new(TUPLE_CHECK_BUDGET);
    encode_with(s1, s2, book, params, &mut budget)
}

pub(crate) fn encode_with(
    s1: &[usize],
    s2: &[usize],
    book: &CodebookEnsemble,
    params: &TypicalityParams,
    budget: &mut Budget,
) -> Result<EncodeResult, SimError> {
    let n = params.n;
    check_word("s1", s1, n, book.n_s1)?;
    check_word("s2", s2, n, book.n_s2)?;
    let eps = params.eps_prime;
    let c3 = book.enc3.checker(n, eps);
    let c4 = book.enc4.checker(n, eps);
    let c5 = book.enc5.checker(n, eps);

    let fallback = EncodeResult {
        m0: 1,
        m1: 1,
        m2: 1,
        found: false,
    };
    let mut u0 = vec![0usize; n];
    let mut u1 = vec![0usize; n];
    let mut u2 = vec![0usize; n];
    'm0: for m0 in 1..=book.m0 {
        budget.charge()?;
        // Generate u0^n(m0), giving up at the first position that hits
        // a zero-probability (s1, s2, u0) cell: no completion of such a
        // prefix can be typical at any ε.
        for pos in 0..n {
            let sym = book.u0_symbol(m0, pos);
            if c3.zero_mass(c3.flat_index(&[s1[pos], s2[pos], sym])) {
                continue 'm0;
            }
            u0[pos] = sym;
        }
        if !c3.check(&[s1, s2, &u0]) {
            continue;
        }
        let key1 = book.u1_key(s1, m0);
        'm1: for m1 in 1..=book.m1 {
            budget.charge()?;
            for pos in 0..n {
                let sym = book.u1_symbol(key1, m1, pos, s1[pos], u0[pos]);
                if c4.zero_mass(c4.flat_index(&[s1[pos], s2[pos], u0[pos], sym])) {
                    continue 'm1;
                }
                u1[pos] = sym;
            }
            if !c4.check(&[s1, s2, &u0, &u1]) {
                continue;
            }
            let key2 = book.u2_key(s2, m0);
            'm2: for m2 in 1..=book.m2 {
                budget.charge()?;
                for pos in 0..n {
                    let sym = book.u2_symbol(key2, m2, pos, s2[pos], u0[pos]);
                    if c5.zero_mass(c5.flat_index(&[s1[pos], s2[pos], u0[pos], u1[pos], sym])) {
                        continue 'm2;
                    }
                    u2[pos] = sym;
                }
                if c5.check(&[s1, s2, &u0, &u1, &u2]) {
                    return Ok(EncodeResult {
                        m0,
                        m1,
                        m2,
                        found: true,
                    });
                }
            }
        }
    }
    Ok(fallback)
}

/// Regenerate the codeword triple selected by an encode result.
pub(crate) fn selected_codewords(
    s1: &[usize],
    s2: &[usize],
    enc: &EncodeResult,
    book: &CodebookEnsemble,
    n: usize,
) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let u0: Vec<usize> = (0..n).map(|pos| book.u0_symbol(enc.m0, pos)).collect();
    let key1 = book.u1_key(s1, enc.m0);
    let key2 = book.u2_key(s2, enc.m0);
    let u1: Vec<usize> = (0..n)
        .map(|pos| book.u1_symbol(key1, enc.m1, pos, s1[pos], u0[pos]))
        .collect();
    let u2: Vec<usize> = (0..n)
        .map(|pos| book.u2_symbol(key2, enc.m2, pos, s2[pos], u0[pos]))
        .collect();
    (u0, u1, u2)
}

#[derive(Clone, Copy)]
enum Side {
    One,
    Two,
}

/// Exhaustive unique-decoding search shared by both receivers: over
/// every candidate source sequence and every (m0, m_private), test the
/// four-tuple (ŝ, u0, u_private, y). Each candidate is first screened
/// against the (ŝ, y) pair marginal, a necessary condition for the
/// full tuple to be typical.
fn decode_side(
    y: &[usize],
    book: &CodebookEnsemble,
    params: &TypicalityParams,
    side: Side,
    budget: &mut Budget,
) -> Result<DecodeResult, SimError> {
    let n = params.n;
    let (ns, pair_t, trip_t, full_t, m_private) = match side {
        Side::One => (book.n_s1, &book.pair1, &book.trip1, &book.full1, book.m1),
        Side::Two => (book.n_s2, &book.pair2, &book.trip2, &book.full2, book.m2),
    };
    let n_y = pair_t.shape[1];
    check_word("y", y, n, n_y)?;
    let pair = pair_t.checker(n, params.eps);
    let trip = trip_t.checker(n, params.eps);
    let full = full_t.checker(n, params.eps);

    let mut winner: Option<Vec<usize>> = None;
    let mut cand = vec![0usize; n];
    let mut u0 = vec![0usize; n];
    let mut up = vec![0usize; n];
    loop {
        budget.charge()?;
        if candidate_passes(&cand, y, book, side, m_private, &pair, &trip, &full, &mut u0,
            &mut up, budget)?
        {
            if winner.is_some() {
                return Ok(DecodeResult::Ambiguous);
            }
            winner = Some(cand.clone());
        }
        // Odometer step through all |S|^n candidate sequences.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(match winner {
                    Some(w) => DecodeResult::Seq(w),
                    None => DecodeResult::NoneTypical,
                });
            }
            pos -= 1;
            cand[pos] += 1;
            if cand[pos] < ns {
                break;
            }
            cand[pos] = 0;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn candidate_passes(
    cand: &[usize],
    y: &[usize],
    book: &CodebookEnsemble,
    side: Side,
    m_private: u64,
    pair: &TypeChecker,
    trip: &TypeChecker,
    full: &TypeChecker,
    u0: &mut [usize],
    up: &mut [usize],
    budget: &mut Budget,
) -> Result<bool, SimError> {
    let n = cand.len();
    for pos in 0..n {
        if pair.zero_mass(pair.flat_index(&[cand[pos], y[pos]])) {
            return Ok(false);
        }
    }
    if !pair.check(&[cand, y]) {
        return Ok(false);
    }
    'm0: for m0 in 1..=book.m0 {
        budget.charge()?;
        for pos in 0..n {
            let sym = book.u0_symbol(m0, pos);
            if trip.zero_mass(trip.flat_index(&[cand[pos], sym, y[pos]])) {
                continue 'm0;
            }
            u0[pos] = sym;
        }
        if !trip.check(&[cand, u0, y]) {
            continue;
        }
        let key = match side {
            Side::One => book.u1_key(cand, m0),
            Side::Two => book.u2_key(cand, m0),
        };
        'mp: for mp in 1..=m_private {
            budget.charge()?;
            for pos in 0..n {
                let sym = match side {
                    Side::One => book.u1_symbol(key, mp, pos, cand[pos], u0[pos]),
                    Side::Two => book.u2_symbol(key, mp, pos, cand[pos], u0[pos]),
                };
                if full.zero_mass(full.flat_index(&[cand[pos], u0[pos], sym, y[pos]])) {
                    continue 'mp;
                }
                up[pos] = sym;
            }
            if full.check(&[cand, u0, up, y]) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Receiver 1: unique ŝ1 with (ŝ1, u0(m0), u1(ŝ1,[m0,]m1), y1)
/// jointly ε-typical for some (m0, m1).
pub fn decode1(
    y1: &[usize],
    book: &CodebookEnsemble,
    params: &TypicalityParams,
) -> Result<DecodeResult, SimError> {
    let mut budget = Budget::new(TUPLE_CHECK_BUDGET);
    decode_side(y1, book, params, Side::One, &mut budget)
}

/// Receiver 2, symmetric to [`decode1`].
pub fn decode2(
    y2: &[usize],
    book: &CodebookEnsemble,
    params: &TypicalityParams,
) -> Result<DecodeResult, SimError> {
    let mut budget = Budget::new(TUPLE_CHECK_BUDGET);
    decode_side(y2, book, params, Side::Two, &mut budget)
}

/// Empirical covering-failure probability with a 95% Wilson interval.
#[derive(Debug, Clone, Copy)]
pub struct CoveringStats {
    pub trials: usize,
    pub failures: usize,
    pub p_hat: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
}

fn wilson_interval(failures: usize, trials: usize) -> (f64, f64) {
    let z = 1.96f64;
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

fn trial_seed(master: u64, trial: usize) -> u64 {
    chain(chain(master, ROLE_TRIAL), trial as u64 + 1)
}

/// Estimate the probability that no message triple yields an
/// ε′-typical five-tuple (the covering-failure event). Each trial
/// draws a fresh source block and a fresh seed-derived codebook.
pub fn run_covering_experiment(
    scenario: &ScenarioSpec,
    aux: &AuxiliarySpec,
    rates: &RateTriple,
    params: &TypicalityParams,
    trials: usize,
    seed: u64,
    scheme: Scheme,
) -> Result<CoveringStats, SimError> {
    if trials == 0 {
        return Err(SimError::BadParams("need at least one trial".into()));
    }
    let template = CodebookEnsemble::new(scenario, aux, rates, scheme, params, seed)?;
    let outcomes = exec::map_indexed(trials, |t| -> Result<bool, SimError> {
        let ts = trial_seed(seed, t);
        let book = template.reseed(chain(ts, ROLE_BOOK));
        let (s1, s2) = sample_sources(&book, params, ts);
        let enc = encode(&s1, &s2, &book, params)?;
        Ok(!enc.found)
    });
    let mut failures = 0;
    for o in outcomes {
        if o? {
            failures += 1;
        }
    }
    let p_hat = failures as f64 / trials as f64;
    let (ci_lower, ci_upper) = wilson_interval(failures, trials);
    Ok(CoveringStats {
        trials,
        failures,
        p_hat,
        ci_lower,
        ci_upper,
    })
}

/// Per-receiver decoding verdict counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeCounts {
    pub correct: usize,
    pub none_typical: usize,
    pub ambiguous: usize,
    pub wrong: usize,
}

impl DecodeCounts {
    fn tally(&mut self, outcome: DecodeOutcome) {
        match outcome {
            DecodeOutcome::Correct => self.correct += 1,
            DecodeOutcome::NoneTypical => self.none_typical += 1,
            DecodeOutcome::Ambiguous => self.ambiguous += 1,
            DecodeOutcome::Wrong => self.wrong += 1,
        }
    }
}

/// Full-chain error statistics: covering failures, per-receiver
/// verdict counts, and the overall block error fraction
/// P{(Ŝ1, Ŝ2) ≠ (S1, S2)}.
#[derive(Debug, Clone)]
pub struct EndToEndStats {
    pub trials: usize,
    pub covering_failures: usize,
    pub decoder1: DecodeCounts,
    pub decoder2: DecodeCounts,
    pub errors: usize,
    pub error_rate: f64,
    pub outcomes: Vec<TrialOutcome>,
}

fn classify(result: &DecodeResult, truth: &[usize]) -> DecodeOutcome {
    match result {
        DecodeResult::Seq(s) if s == truth => DecodeOutcome::Correct,
        DecodeResult::Seq(_) => DecodeOutcome::Wrong,
        DecodeResult::NoneTypical => DecodeOutcome::NoneTypical,
        DecodeResult::Ambiguous => DecodeOutcome::Ambiguous,
    }
}

/// Simulate the complete chain — source draw, joint-typicality
/// encoding, channel, both decoders — over independent trials.
pub fn run_end_to_end(
    scenario: &ScenarioSpec,
    aux: &AuxiliarySpec,
    rates: &RateTriple,
    params: &TypicalityParams,
    trials: usize,
    seed: u64,
    scheme: Scheme,
) -> Result<EndToEndStats, SimError> {
    if trials == 0 {
        return Err(SimError::BadParams("need at least one trial".into()));
    }
    let template = CodebookEnsemble::new(scenario, aux, rates, scheme, params, seed)?;
    let n = params.n;
    let results = exec::map_indexed(trials, |t| -> Result<TrialOutcome, SimError> {
        let ts = trial_seed(seed, t);
        let book = template.reseed(chain(ts, ROLE_BOOK));
        let (s1, s2) = sample_sources(&book, params, ts);
        let mut budget = Budget::new(TUPLE_CHECK_BUDGET);
        let enc = encode_with(&s1, &s2, &book, params, &mut budget)?;
        let (u0, u1, u2) = selected_codewords(&s1, &s2, &enc, &book, n);
        let x: Vec<usize> = (0..n)
            .map(|i| book.x_symbol(s1[i], s2[i], u0[i], u1[i], u2[i]))
            .collect();
        let (y1, y2) = transmit(&x, &scenario.channel, ts)?;
        let d1 = decode_side(&y1, &book, params, Side::One, &mut budget)?;
        let d2 = decode_side(&y2, &book, params, Side::Two, &mut budget)?;
        Ok(TrialOutcome {
            covering_failed: !enc.found,
            decode1: classify(&d1, &s1),
            decode2: classify(&d2, &s2),
        })
    });
    let mut outcomes = Vec::with_capacity(trials);
    for r in results {
        outcomes.push(r?);
    }
    let mut decoder1 = DecodeCounts::default();
    let mut decoder2 = DecodeCounts::default();
    let mut covering_failures = 0;
    let mut errors = 0;
    for o in &outcomes {
        decoder1.tally(o.decode1);
        decoder2.tally(o.decode2);
        if o.covering_failed {
            covering_failures += 1;
        }
        if o.is_error() {
            errors += 1;
        }
    }
    Ok(EndToEndStats {
        trials,
        covering_failures,
        decoder1,
        decoder2,
        errors,
        error_rate: errors as f64 / trials as f64,
        outcomes,
    })
}
