//! Keyed counter-mode pseudorandomness: every random symbol in the
//! simulator is a pure function of (master seed, role, conditioning
//! words, position), so codebooks never need to be materialized and
//! reruns are bit-identical regardless of parallelism.

/// Domain-separation words mixed into every key so that distinct
/// random streams (codebooks, source draws, channel noise, trials)
/// never collide even under equal seeds.
pub(crate) const ROLE_U0: u64 = 0x11;
pub(crate) const ROLE_U1: u64 = 0x22;
pub(crate) const ROLE_U2: u64 = 0x33;
pub(crate) const ROLE_SOURCE: u64 = 0x44;
pub(crate) const ROLE_NOISE: u64 = 0x55;
pub(crate) const ROLE_TRIAL: u64 = 0x66;
pub(crate) const ROLE_BOOK: u64 = 0x77;

/// 64-bit finalizer with full avalanche (splitmix64's mixing function).
fn fin(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fold one word into a running key. Non-commutative so that argument
/// order matters (chain(a, b) != chain(b, a)).
pub(crate) fn chain(h: u64, w: u64) -> u64 {
    fin(h
        .rotate_left(29)
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        ^ w.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Hash a symbol sequence into a conditioning key.
pub(crate) fn hash_seq(init: u64, seq: &[usize]) -> u64 {
    seq.iter().fold(init, |h, &s| chain(h, s as u64 + 1))
}

/// Uniform double in [0, 1) from the top 53 bits.
pub(crate) fn unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Sample an index from a cumulative distribution (last entry 1.0).
pub(crate) fn sample_cdf(cdf: &[f64], u: f64) -> usize {
    for (i, &c) in cdf.iter().enumerate() {
        if u < c {
            return i;
        }
    }
    cdf.len() - 1
}

/// Turn a pmf row into a cdf; all-zero rows become uniform so that
/// never-reached conditioning cells still sample validly.
pub(crate) fn cdf_row(probs: &[f64]) -> Vec<f64> {
    let total: f64 = probs.iter().sum();
    let mut acc = 0.0;
    if total <= 0.0 {
        let step = 1.0 / probs.len() as f64;
        return (1..=probs.len()).map(|i| i as f64 * step).collect();
    }
    probs
        .iter()
        .map(|p| {
            acc += p / total;
            acc
        })
        .collect()
}
