//! Robust typicality: a tuple of sequences is ε-typical for a joint
//! pmf p when every cell's empirical frequency π satisfies
//! |π - p| <= ε·p. Cells with p = 0 therefore force π = 0.

use crate::measures::JointPmf;

use super::SimError;

/// Joint type of a tuple of equal-length sequences, as a flat
//  row-major table over `shape`.
pub fn empirical_pmf(seqs: &[&[usize]], shape: &[usize]) -> Result<Vec<f64>, SimError> {
    if seqs.len() != shape.len() {
        return Err(SimError::BadParams(format!(
            "{} sequences for {} variables",
            seqs.len(),
            shape.len()
        )));
    }
    let n = seqs.first().map(|s| s.len()).unwrap_or(0);
    if n == 0 {
        return Err(SimError::BadParams("empty sequences".into()));
    }
    for s in seqs {
        if s.len() != n {
            return Err(SimError::LengthMismatch(n, s.len()));
        }
    }
    let cells: usize = shape.iter().product();
    let mut counts = vec![0.0f64; cells];
    for i in 0..n {
        let mut flat = 0;
        for (seq, &size) in seqs.iter().zip(shape) {
            let sym = seq[i];
            if sym >= size {
                return Err(SimError::AlphabetMismatch(sym, size));
            }
            flat = flat * size + sym;
        }
        counts[flat] += 1.0;
    }
    let inv = 1.0 / n as f64;
    for c in &mut counts {
        *c *= inv;
    }
    Ok(counts)
}

/// Is the tuple ε-typical for the pmf? Sequences are matched to the
/// pmf's variables positionally.
pub fn is_typical(seqs: &[&[usize]], pmf: &JointPmf, eps: f64) -> Result<bool, SimError> {
    let shape: Vec<usize> = pmf.variables().iter().map(|v| v.alphabet_size).collect();
    let pi = empirical_pmf(seqs, &shape)?;
    Ok(pi
        .iter()
        .zip(pmf.mass())
        .all(|(&f, &p)| (f - p).abs() <= eps * p))
}

/// Precomputed count bounds for one pmf table at a fixed blocklength:
/// cell counts must lie in [n·p·(1-ε), n·p·(1+ε)].
#[derive(Debug, Clone)]
pub(crate) struct TypeChecker {
    shape: Vec<usize>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    n: usize,
}

impl TypeChecker {
    pub(crate) fn new(probs: &[f64], shape: Vec<usize>, n: usize, eps: f64) -> TypeChecker {
        debug_assert_eq!(probs.len(), shape.iter().product::<usize>());
        let nf = n as f64;
        let lo = probs.iter().map(|p| nf * p * (1.0 - eps)).collect();
        let hi = probs.iter().map(|p| nf * p * (1.0 + eps)).collect();
        TypeChecker { shape, lo, hi, n }
    }

    /// True when the pmf gives the cell zero mass (any occurrence of
    /// the cell makes a tuple atypical at every ε).
    pub(crate) fn zero_mass(&self, flat: usize) -> bool {
        self.hi[flat] == 0.0
    }

    pub(crate) fn flat_index(&self, symbols: &[usize]) -> usize {
        let mut flat = 0;
        for (&s, &size) in symbols.iter().zip(&self.shape) {
            flat = flat * size + s;
        }
        flat
    }

    /// Full count check over a tuple of sequences.
    pub(crate) fn check(&self, seqs: &[&[usize]]) -> bool {
        let mut counts = vec![0.0f64; self.lo.len()];
        let mut scratch = vec![0usize; seqs.len()];
        for i in 0..self.n {
            for (j, seq) in seqs.iter().enumerate() {
                scratch[j] = seq[i];
            }
            counts[self.flat_index(&scratch)] += 1.0;
        }
        counts
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&c, (&lo, &hi))| c >= lo && c <= hi)
    }
}
