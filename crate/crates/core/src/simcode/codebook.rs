//! Seed-keyed random codebooks. Every codeword symbol is a pure
//! function of (seed, role, conditioning words, message index,
//! position), so the exponential per-source-sequence codebooks are
//! never materialized: they are re-derived symbol by symbol on demand.

use crate::measures::{JointPmf, XMap};
use crate::regions::{compose_full, AuxiliarySpec, RateTriple, ScenarioSpec};

use super::prf::{cdf_row, chain, hash_seq, sample_cdf, unit};
use super::typicality::TypeChecker;
use super::{SimError, TypicalityParams};

/// Codebook construction variant: flat generation of the private
/// codewords from p(u1|s1) / p(u2|s2), or layered generation from
/// p(u1|u0,s1) / p(u2|u0,s2) on top of the common codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Plain,
    Superposition,
}

use super::prf::{ROLE_SOURCE, ROLE_U0, ROLE_U1, ROLE_U2};

/// Largest supported message-count exponent. Counts past this dwarf
/// the per-trial check budget anyway.
const MAX_RATE_BITS: f64 = 48.0;

/// A dense marginal pmf table kept for typicality checks.
#[derive(Debug, Clone)]
pub(crate) struct MarginalTable {
    pub(crate) probs: Vec<f64>,
    pub(crate) shape: Vec<usize>,
}

impl MarginalTable {
    fn from_pmf(joint: &JointPmf, keep: &[&str]) -> Result<MarginalTable, SimError> {
        let m = joint.marginalize(keep)?;
        let shape = m.variables().iter().map(|v| v.alphabet_size).collect();
        Ok(MarginalTable {
            probs: m.mass().to_vec(),
            shape,
        })
    }

    pub(crate) fn checker(&self, n: usize, eps: f64) -> TypeChecker {
        TypeChecker::new(&self.probs, self.shape.clone(), n, eps)
    }
}

/// Deterministic codebook ensemble for one scenario, auxiliary choice,
/// rate triple, and scheme. Holds the generator distributions (as cdf
/// rows) and the marginal tables the encoder and decoders test
/// typicality against.
#[derive(Debug, Clone)]
pub struct CodebookEnsemble {
    pub scheme: Scheme,
    pub rates: RateTriple,
    pub seed: u64,
    /// Message counts floor(2^{nR}); indices are 1-based.
    pub m0: u64,
    pub m1: u64,
    pub m2: u64,
    pub(crate) n_s1: usize,
    pub(crate) n_s2: usize,
    pub(crate) n_u0: usize,
    cdf_source: Vec<f64>,
    cdf_u0: Vec<f64>,
    cdf_u1: Vec<Vec<f64>>,
    cdf_u2: Vec<Vec<f64>>,
    x_map: XMap,
    // Typicality references, in the composed variable order
    // S1, S2, U0, U1, U2, X, Y1, Y2.
    pub(crate) enc3: MarginalTable,  // (S1, S2, U0)
    pub(crate) enc4: MarginalTable,  // (S1, S2, U0, U1)
    pub(crate) enc5: MarginalTable,  // (S1, S2, U0, U1, U2)
    pub(crate) pair1: MarginalTable, // (S1, Y1)
    pub(crate) pair2: MarginalTable, // (S2, Y2)
    pub(crate) trip1: MarginalTable, // (S1, U0, Y1)
    pub(crate) trip2: MarginalTable, // (S2, U0, Y2)
    pub(crate) full1: MarginalTable, // (S1, U0, U1, Y1)
    pub(crate) full2: MarginalTable, // (S2, U0, U2, Y2)
}

fn message_count(n: usize, rate: f64) -> Result<u64, SimError> {
    let bits = n as f64 * rate;
    if bits > MAX_RATE_BITS {
        return Err(SimError::BadParams(format!(
            "message count 2^{bits:.1} is unmanageable"
        )));
    }
    Ok((bits.exp2().floor() as u64).max(1))
}

/// Conditional cdf rows p(out | given) from a joint table laid out
/// given-major: probs[given * n_out + out].
fn conditional_rows(probs: &[f64], n_given: usize, n_out: usize) -> Vec<Vec<f64>> {
    (0..n_given)
        .map(|g| cdf_row(&probs[g * n_out..(g + 1) * n_out]))
        .collect()
}

impl CodebookEnsemble {
    pub fn new(
        scenario: &ScenarioSpec,
        aux: &AuxiliarySpec,
        rates: &RateTriple,
        scheme: Scheme,
        params: &TypicalityParams,
        seed: u64,
    ) -> Result<CodebookEnsemble, SimError> {
        let joint = compose_full(scenario, aux)?;
        let shape = |name: &str| joint.alphabet_size(name);
        let n_s1 = shape("S1")?;
        let n_s2 = shape("S2")?;
        let n_u0 = shape("U0")?;
        let n_u1 = shape("U1")?;
        let n_u2 = shape("U2")?;

        let source = joint.marginalize(&["S1", "S2"])?;
        let cdf_source = cdf_row(source.mass());

        let cdf_u0 = cdf_row(joint.marginalize(&["U0"])?.mass());
        let (cdf_u1, cdf_u2) = match scheme {
            Scheme::Plain => {
                let m1 = joint.marginalize(&["S1", "U1"])?;
                let m2 = joint.marginalize(&["S2", "U2"])?;
                (
                    conditional_rows(m1.mass(), n_s1, n_u1),
                    conditional_rows(m2.mass(), n_s2, n_u2),
                )
            }
            Scheme::Superposition => {
                let m1 = joint.marginalize(&["S1", "U0", "U1"])?;
                let m2 = joint.marginalize(&["S2", "U0", "U2"])?;
                (
                    conditional_rows(m1.mass(), n_s1 * n_u0, n_u1),
                    conditional_rows(m2.mass(), n_s2 * n_u0, n_u2),
                )
            }
        };

        Ok(CodebookEnsemble {
            scheme,
            rates: *rates,
            seed,
            m0: message_count(params.n, rates.r0)?,
            m1: message_count(params.n, rates.r1)?,
            m2: message_count(params.n, rates.r2)?,
            n_s1,
            n_s2,
            n_u0,
            cdf_source,
            cdf_u0,
            cdf_u1,
            cdf_u2,
            x_map: aux.x_map.clone(),
            enc3: MarginalTable::from_pmf(&joint, &["S1", "S2", "U0"])?,
            enc4: MarginalTable::from_pmf(&joint, &["S1", "S2", "U0", "U1"])?,
            enc5: MarginalTable::from_pmf(&joint, &["S1", "S2", "U0", "U1", "U2"])?,
            pair1: MarginalTable::from_pmf(&joint, &["S1", "Y1"])?,
            pair2: MarginalTable::from_pmf(&joint, &["S2", "Y2"])?,
            trip1: MarginalTable::from_pmf(&joint, &["S1", "U0", "Y1"])?,
            trip2: MarginalTable::from_pmf(&joint, &["S2", "U0", "Y2"])?,
            full1: MarginalTable::from_pmf(&joint, &["S1", "U0", "U1", "Y1"])?,
            full2: MarginalTable::from_pmf(&joint, &["S2", "U0", "U2", "Y2"])?,
        })
    }

    /// Same ensemble family under a different seed (fresh codebooks,
    /// identical generator distributions).
    pub fn reseed(&self, seed: u64) -> CodebookEnsemble {
        let mut out = self.clone();
        out.seed = seed;
        out
    }

    /// Symbol i of the common codeword u0^n(m0).
    pub fn u0_symbol(&self, m0: u64, pos: usize) -> usize {
        let h = chain(chain(self.seed, ROLE_U0), m0);
        sample_cdf(&self.cdf_u0, unit(chain(h, pos as u64)))
    }

    /// Conditioning key for the decoder-1 private codebook: depends on
    /// the source sequence, and on m0 under superposition.
    pub(crate) fn u1_key(&self, s1: &[usize], m0: u64) -> u64 {
        let h = hash_seq(chain(self.seed, ROLE_U1), s1);
        match self.scheme {
            Scheme::Plain => h,
            Scheme::Superposition => chain(h, m0),
        }
    }

    pub(crate) fn u2_key(&self, s2: &[usize], m0: u64) -> u64 {
        let h = hash_seq(chain(self.seed, ROLE_U2), s2);
        match self.scheme {
            Scheme::Plain => h,
            Scheme::Superposition => chain(h, m0),
        }
    }

    /// Symbol i of u1^n(s1^n, [m0,] m1), via the key from `u1_key`.
    pub(crate) fn u1_symbol(&self, key: u64, m1: u64, pos: usize, s1: usize, u0: usize) -> usize {
        let row = match self.scheme {
            Scheme::Plain => s1,
            Scheme::Superposition => s1 * self.n_u0 + u0,
        };
        let h = chain(chain(key, m1), pos as u64);
        sample_cdf(&self.cdf_u1[row], unit(h))
    }

    pub(crate) fn u2_symbol(&self, key: u64, m2: u64, pos: usize, s2: usize, u0: usize) -> usize {
        let row = match self.scheme {
            Scheme::Plain => s2,
            Scheme::Superposition => s2 * self.n_u0 + u0,
        };
        let h = chain(chain(key, m2), pos as u64);
        sample_cdf(&self.cdf_u2[row], unit(h))
    }

    /// One i.i.d. source pair draw, keyed by a per-trial seed.
    pub(crate) fn source_symbol(&self, trial_seed: u64, pos: usize) -> (usize, usize) {
        let h = chain(chain(trial_seed, ROLE_SOURCE), pos as u64);
        let flat = sample_cdf(&self.cdf_source, unit(h));
        (flat / self.n_s2, flat % self.n_s2)
    }

    /// Deterministic channel input symbol x(s1, s2, u0, u1, u2).
    pub(crate) fn x_symbol(&self, s1: usize, s2: usize, u0: usize, u1: usize, u2: usize) -> usize {
        let d = &self.x_map.domain_shape;
        let flat = (((s1 * d[1] + s2) * d[2] + u0) * d[3] + u1) * d[4] + u2;
        self.x_map.values[flat]
    }
}
