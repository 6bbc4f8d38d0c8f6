//! Greedy Gilbert–Varshamov codes and the entropy estimate behind them.

use serde::Serialize;

use crate::error::{Error, Result};

/// Longest codeword length handled by the greedy scan.
pub const MAX_CODE_LENGTH: usize = 24;

/// `H(p) = −p·log₂p − (1−p)·log₂(1−p)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("H(p) needs p in [0, 1], got {p}")));
    }
    let term = |q: f64| if q == 0.0 { 0.0 } else { -q * q.log2() };
    Ok(term(p) + term(1.0 - p))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Number of strings within Hamming distance `radius` of a fixed one.
pub fn ball_volume(d: usize, radius: usize) -> f64 {
    (0..=radius.min(d)).map(|i| binomial(d, i)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Codebook {
    pub d: usize,
    pub min_distance: usize,
    /// Codewords as `d`-bit integers, the first character being the high bit.
    pub codewords: Vec<u32>,
}

impl Codebook {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Smallest pairwise Hamming distance, `None` for fewer than two codewords.
    pub fn pairwise_min_distance(&self) -> Option<usize> {
        let words = &self.codewords;
        (0..words.len())
            .flat_map(|i| (i + 1..words.len()).map(move |j| (words[i] ^ words[j]).count_ones()))
            .min()
            .map(|v| v as usize)
    }

    pub fn word(&self, i: usize) -> String {
        crate::concept::format_point(self.d, self.codewords[i] as usize)
    }
}

/// Scans all `d`-bit strings in lexicographic order and keeps each one at
/// distance at least `ceil(d/4)` from every string kept so far.
pub fn gv_codebook(d: usize) -> Result<Codebook> {
    if d == 0 || d > MAX_CODE_LENGTH {
        return Err(Error::CapExceeded {
            what: "codeword length",
            limit: MAX_CODE_LENGTH,
            got: d,
        });
    }
    let r = d.div_ceil(4);
    let total = 1usize << d;
    // XOR masks of weight below r: a new codeword rules out exactly its
    // translates by these.
    let ball: Vec<u32> = (0..total as u32).filter(|w| (w.count_ones() as usize) < r).collect();
    let mut covered = vec![0u64; total.div_ceil(64)];
    let mut codewords = Vec::new();
    for s in 0..total {
        if covered[s / 64] >> (s % 64) & 1 == 1 {
            continue;
        }
        codewords.push(s as u32);
        for &w in &ball {
            let t = s ^ w as usize;
            covered[t / 64] |= 1 << (t % 64);
        }
    }
    Ok(Codebook {
        d,
        min_distance: r,
        codewords,
    })
}

/// The numeric chain behind the codebook size guarantee:
/// `2^d / V(ceil(d/4) − 1) ≥ 2^d / V(floor(d/4)) ≥ 2^{d(1 − H(1/4))} > 2^{d/6}`,
/// where `V(ρ)` is the volume of a Hamming ball of radius `ρ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GvChain {
    pub d: usize,
    pub covering_bound: f64,
    pub floor_bound: f64,
    pub entropy_bound: f64,
    pub target: f64,
}

impl GvChain {
    pub fn new(d: usize) -> Result<Self> {
        let h = binary_entropy(0.25)?;
        let space = 2f64.powi(d as i32);
        Ok(Self {
            d,
            covering_bound: space / ball_volume(d, d.div_ceil(4) - 1),
            floor_bound: space / ball_volume(d, d / 4),
            entropy_bound: 2f64.powf(d as f64 * (1.0 - h)),
            target: 2f64.powf(d as f64 / 6.0),
        })
    }

    pub fn holds(&self) -> bool {
        let slack = 1e-9 * self.covering_bound;
        self.covering_bound + slack >= self.floor_bound
            && self.floor_bound + slack >= self.entropy_bound
            && self.entropy_bound > self.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.25).unwrap() - 0.811278).abs() < 5e-7);
        assert!(binary_entropy(1.5).is_err());
    }

    #[test]
    fn small_codebooks() {
        let one = gv_codebook(1).unwrap();
        assert_eq!(one.codewords, vec![0, 1]);
        let six = gv_codebook(6).unwrap();
        assert!(six.len() >= 2 && six.pairwise_min_distance().unwrap() >= 2);
        let twelve = gv_codebook(12).unwrap();
        assert!(twelve.len() >= 4 && twelve.pairwise_min_distance().unwrap() >= 3);
        assert_eq!(twelve.word(0), "000000000000");
        assert!(gv_codebook(25).unwrap_err().is_cap());
    }

    #[test]
    fn chain_holds_for_small_d() {
        for d in 1..=24 {
            assert!(GvChain::new(d).unwrap().holds(), "d = {d}");
        }
    }
}
