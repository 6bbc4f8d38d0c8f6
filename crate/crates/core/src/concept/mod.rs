//! Truth-table concepts, concept classes and distributions over `{0,1}^n`.
//!
//! A point `x ∈ {0,1}^n` is addressed by its index `i`, where the n-bit
//! string of `x` is the big-endian binary representation of `i`
//! (`"01"` is index 1, `"10"` is index 2). The same convention fixes the
//! query-register layout in the simulator.

mod builders;
mod gamma;
mod spec;
mod vc;

pub use builders::{builtin_classes, MAX_CLASSICAL_N, MAX_QUANTUM_N};
pub use gamma::{
    difference_matrix, gamma_fraction, gamma_fraction_at, gamma_hat, gamma_of_subset,
    typical_concept, DifferenceMatrix, GammaStats, Rational, GAMMA_HAT_CAP,
};
pub(crate) use gamma::serialize_ratio;
pub use spec::{ClassKind, ClassSpec};
pub use vc::{dichotomy_count, is_shattered, vc_dimension, VcWitness, VC_DOMAIN_CAP};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Parses an n-bit string into its point index.
pub fn parse_point(n: usize, s: &str) -> Result<usize> {
    if s.len() != n {
        return Err(Error::invalid(format!(
            "query string {s:?} has length {} but n = {n}",
            s.len()
        )));
    }
    s.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::invalid(format!("{s:?} is not a bit string"))),
    })
}

/// Formats a point index as its n-bit big-endian string.
pub fn format_point(n: usize, x: usize) -> String {
    (0..n)
        .map(|k| if (x >> (n - 1 - k)) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A Boolean function on `{0,1}^n`, stored as its length-`2^n` truth table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    n: usize,
    table: Vec<bool>,
}

impl Concept {
    pub fn new(n: usize, table: Vec<bool>) -> Result<Self> {
        if n == 0 || n > MAX_CLASSICAL_N {
            return Err(Error::invalid(format!("n = {n} outside 1..={MAX_CLASSICAL_N}")));
        }
        if table.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: table.len(),
            });
        }
        Ok(Self { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        Self::new(n, (0..1usize << n).map(f).collect())
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| false)
    }

    /// The point function `e_x`, equal to 1 exactly at `x`.
    pub fn point(n: usize, x: usize) -> Result<Self> {
        Self::from_fn(n, |y| y == x)
    }

    /// The parity `c_a(x) = a·x mod 2`.
    pub fn parity(n: usize, a: usize) -> Result<Self> {
        Self::from_fn(n, |x| (a & x).count_ones() % 2 == 1)
    }

    /// Builds the concept whose table entry `i` is bit `i` of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::CapExceeded {
                what: "n for a u64 truth-table mask",
                limit: 6,
                got: n,
            });
        }
        Self::from_fn(n, |i| (mask >> i) & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Domain size `N = 2^n`.
    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.table[x]
    }

    /// Evaluates at an n-bit string.
    pub fn eval_str(&self, s: &str) -> Result<bool> {
        Ok(self.table[parse_point(self.n, s)?])
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            table: self.table.iter().map(|b| !b).collect(),
        }
    }

    /// Number of points where the two concepts disagree.
    pub fn hamming(&self, other: &Concept) -> Result<usize> {
        self.check_same_n(other)?;
        Ok(self
            .table
            .iter()
            .zip(&other.table)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub(crate) fn check_same_n(&self, other: &Concept) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    /// Hex encoding with the most significant bit holding index 0,
    /// padded with zero bits to a whole number of nibbles.
    pub fn to_hex(&self) -> String {
        self.table
            .chunks(4)
            .map(|chunk| {
                let nibble = chunk
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (k, &b)| acc | ((b as u32) << (3 - k)));
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        if n == 0 || n > MAX_CLASSICAL_N {
            return Err(Error::invalid(format!("n = {n} outside 1..={MAX_CLASSICAL_N}")));
        }
        let big_n = 1usize << n;
        let digits = big_n.div_ceil(4);
        let hex = hex.trim_start_matches("0x");
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "table {hex:?} has {} hex digits, expected {digits} for n = {n}",
                hex.len()
            )));
        }
        let mut table = Vec::with_capacity(digits * 4);
        for ch in hex.chars() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {ch:?} in {hex:?}")))?;
            table.extend((0..4).map(|k| (nibble >> (3 - k)) & 1 == 1));
        }
        if table[big_n..].iter().any(|&b| b) {
            return Err(Error::Parse(format!("padding bits of {hex:?} must be zero")));
        }
        table.truncate(big_n);
        Self::new(n, table)
    }
}

impl fmt::Debug for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Concept(n={}, ", self.n)?;
        for &b in &self.table {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.table {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Concept {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// A non-empty, duplicate-free, ordered set of concepts over the same `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptClass {
    n: usize,
    concepts: Vec<Concept>,
}

impl ConceptClass {
    pub fn new(concepts: Vec<Concept>) -> Result<Self> {
        let first = concepts
            .first()
            .ok_or_else(|| Error::invalid("a concept class must be non-empty"))?;
        let n = first.n;
        if let Some(c) = concepts.iter().find(|c| c.n != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.n,
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(concepts.len());
        for (i, c) in concepts.iter().enumerate() {
            if !seen.insert(&c.table) {
                return Err(Error::invalid(format!(
                    "duplicate concept at position {i}: {c}"
                )));
            }
        }
        Ok(Self { n, concepts })
    }

    pub fn from_tables(n: usize, tables: Vec<Vec<bool>>) -> Result<Self> {
        Self::new(
            tables
                .into_iter()
                .map(|t| Concept::new(n, t))
                .collect::<Result<_>>()?,
        )
    }

    /// Selects the concepts at `indices` (kept in the given order).
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let concepts = indices
            .iter()
            .map(|&i| {
                self.concepts.get(i).cloned().ok_or_else(|| {
                    Error::invalid(format!("concept index {i} out of range {}", self.len()))
                })
            })
            .collect::<Result<_>>()?;
        Self::new(concepts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain_size(&self) -> usize {
        1 << self.n
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn get(&self, i: usize) -> Option<&Concept> {
        self.concepts.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Concept> {
        self.concepts.iter()
    }

    pub fn position(&self, c: &Concept) -> Option<usize> {
        self.concepts.iter().position(|d| d == c)
    }

    pub fn contains(&self, c: &Concept) -> bool {
        self.position(c).is_some()
    }

    /// Applies the same permutation of the domain to every concept:
    /// the new table at `perm[x]` is the old table at `x`.
    pub fn permute_domain(&self, perm: &[usize]) -> Result<Self> {
        let big_n = self.domain_size();
        let mut check = vec![false; big_n];
        if perm.len() != big_n || perm.iter().any(|&p| p >= big_n || std::mem::replace(&mut check[p], true)) {
            return Err(Error::invalid("not a permutation of the domain"));
        }
        let concepts = self
            .concepts
            .iter()
            .map(|c| {
                let mut table = vec![false; big_n];
                for (x, &p) in perm.iter().enumerate() {
                    table[p] = c.table[x];
                }
                Concept::new(self.n, table)
            })
            .collect::<Result<_>>()?;
        Self::new(concepts)
    }

    pub fn parity_class(n: usize) -> Result<Self> {
        builders::parity_class(n)
    }

    pub fn points_plus_zero(n: usize) -> Result<Self> {
        builders::points_plus_zero(n)
    }

    pub fn all_functions(n: usize) -> Result<Self> {
        builders::all_functions(n)
    }

    pub fn conjunctions(n: usize) -> Result<Self> {
        builders::conjunctions(n)
    }
}

impl<'a> IntoIterator for &'a ConceptClass {
    type Item = &'a Concept;
    type IntoIter = std::slice::Iter<'a, Concept>;

    fn into_iter(self) -> Self::IntoIter {
        self.concepts.iter()
    }
}

/// Probability weights over `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution {
    n: usize,
    weights: Vec<f64>,
}

impl Distribution {
    pub const SUM_TOLERANCE: f64 = 1e-12;

    pub fn new(n: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: weights.len(),
            });
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid("weights must be finite and non-negative"));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::invalid(format!("weights sum to {sum}, not 1")));
        }
        Ok(Self { n, weights })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let big_n = 1usize << n;
        Self::new(n, vec![1.0 / big_n as f64; big_n])
    }

    pub fn point_mass(n: usize, x: usize) -> Result<Self> {
        let mut weights = vec![0.0; 1 << n];
        *weights
            .get_mut(x)
            .ok_or_else(|| Error::invalid(format!("point {x} outside domain")))? = 1.0;
        Self::new(n, weights)
    }

    /// Uniform over `support`; errors on an empty or out-of-range support.
    pub fn uniform_on(n: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::invalid("uniform distribution over an empty set"));
        }
        let mut weights = vec![0.0; 1 << n];
        let w = 1.0 / support.len() as f64;
        for &x in support {
            *weights
                .get_mut(x)
                .ok_or_else(|| Error::invalid(format!("point {x} outside domain")))? = w;
        }
        Self::new(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> f64 {
        self.weights[x]
    }
}
