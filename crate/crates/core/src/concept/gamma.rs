//! Elimination fractions and the similarity parameter `γ̂`.
//!
//! For a subset `C'` and a query `a`, `γ_{a,b}` is the fraction of `C'`
//! labelling `a` with `b`; `γ_a = min_b γ_{a,b}` is what the worst-case
//! answer is guaranteed to eliminate; `γ^{C'} = max_a γ_a`; and `γ̂` is the
//! minimum of `γ^{C'}` over all subsets with at least two members. All of
//! these are kept as exact rationals.

use num_rational::Ratio;
use serde::Serialize;

use super::{parse_point, Concept, ConceptClass};
use crate::error::{Error, Result};

pub type Rational = Ratio<u64>;

/// Largest class for which `γ̂` is computed by subset enumeration.
pub const GAMMA_HAT_CAP: usize = 20;

/// `|C'_{a,b}| / |C'|` for an n-bit query string `a`.
pub fn gamma_fraction(subset: &ConceptClass, a: &str, b: bool) -> Result<Rational> {
    let x = parse_point(subset.n(), a)?;
    Ok(gamma_fraction_at(subset, x, b))
}

pub fn gamma_fraction_at(subset: &ConceptClass, x: usize, b: bool) -> Rational {
    let hits = subset.iter().filter(|c| c.eval(x) == b).count();
    Rational::new(hits as u64, subset.len() as u64)
}

/// `γ^{C'}` together with the smallest query index attaining it.
pub fn gamma_of_subset(subset: &ConceptClass) -> (Rational, usize) {
    let k = subset.len();
    let mut best = (0usize, 0usize);
    for x in 0..subset.domain_size() {
        let ones = subset.iter().filter(|c| c.eval(x)).count();
        let minority = ones.min(k - ones);
        if minority > best.0 {
            best = (minority, x);
        }
    }
    (Rational::new(best.0 as u64, k as u64), best.1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaStats {
    #[serde(serialize_with = "serialize_ratio")]
    pub gamma_hat: Rational,
    /// Indices (into the class) of a subset attaining the outer minimum.
    pub witness_subset: Vec<usize>,
    /// Point index of the best query for the witness subset.
    pub witness_query: usize,
}

pub(crate) fn serialize_ratio<S: serde::Serializer>(
    r: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

/// True when the sorted index list of `a` precedes that of `b` lexicographically.
fn lex_less(mut a: u32, mut b: u32) -> bool {
    loop {
        if a == b {
            return false;
        }
        if a == 0 {
            return true;
        }
        if b == 0 {
            return false;
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la < lb;
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Exact `γ̂` by enumerating every subset of size at least two.
///
/// Ties go to the lexicographically first subset (as a sorted index list),
/// then to the smallest query index.
pub fn gamma_hat(class: &ConceptClass) -> Result<GammaStats> {
    let size = class.len();
    if size < 2 {
        return Err(Error::invalid(format!(
            "γ̂ needs at least two concepts, class has {size}"
        )));
    }
    if size > GAMMA_HAT_CAP {
        return Err(Error::CapExceeded {
            what: "|C| for exact γ̂",
            limit: GAMMA_HAT_CAP,
            got: size,
        });
    }

    // One bitmask per point, bit i set iff concept i labels the point 1.
    let mut columns: Vec<u32> = (0..class.domain_size())
        .map(|x| {
            class
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, c)| acc | ((c.eval(x) as u32) << i))
        })
        .collect();
    columns.sort_unstable();
    columns.dedup();

    // (minority count, subset size, subset mask)
    let mut best: Option<(u64, u64, u32)> = None;
    for mask in 1u32..(1u32 << size) {
        let k = mask.count_ones();
        if k < 2 {
            continue;
        }
        let mut top = 0u32;
        for &col in &columns {
            let ones = (mask & col).count_ones();
            top = top.max(ones.min(k - ones));
            if top == k / 2 {
                break;
            }
        }
        let (num, den) = (top as u64, k as u64);
        let better = match best {
            None => true,
            Some((bn, bd, bm)) => {
                let (lhs, rhs) = (num * bd, bn * den);
                lhs < rhs || (lhs == rhs && lex_less(mask, bm))
            }
        };
        if better {
            best = Some((num, den, mask));
        }
    }

    let (num, den, mask) = best.expect("size >= 2 guarantees a subset");
    let witness_subset: Vec<usize> = (0..size).filter(|i| (mask >> i) & 1 == 1).collect();
    let (_, witness_query) = gamma_of_subset(&class.subset(&witness_subset)?);
    Ok(GammaStats {
        gamma_hat: Rational::new(num, den),
        witness_subset,
        witness_query,
    })
}

/// Pointwise majority of `subset`; an exact tie yields 0.
pub fn typical_concept(subset: &ConceptClass) -> Concept {
    let k = subset.len();
    Concept::from_fn(subset.n(), |x| {
        let ones = subset.iter().filter(|c| c.eval(x)).count();
        2 * ones > k
    })
    .expect("n already validated by the class")
}

#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceMatrix {
    /// `rows[i][x]` is true iff concept `i` disagrees with the typical concept at `x`.
    pub rows: Vec<Vec<bool>>,
    pub typical: Concept,
}

impl DifferenceMatrix {
    pub fn column_sums(&self) -> Vec<usize> {
        let width = self.typical.domain_size();
        (0..width)
            .map(|x| self.rows.iter().filter(|r| r[x]).count())
            .collect()
    }

    /// Induced L1 norm: the largest column sum.
    pub fn l1_norm(&self) -> usize {
        self.column_sums().into_iter().max().unwrap_or(0)
    }

    /// `D · q` for a weight vector over points.
    pub fn apply(&self, weights: &[f64]) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(weights)
                    .filter(|(d, _)| **d)
                    .map(|(_, w)| w)
                    .sum()
            })
            .collect()
    }
}

pub fn difference_matrix(subset: &ConceptClass) -> DifferenceMatrix {
    let typical = typical_concept(subset);
    let rows = subset
        .iter()
        .map(|c| {
            c.table()
                .iter()
                .zip(typical.table())
                .map(|(a, b)| a != b)
                .collect()
        })
        .collect();
    DifferenceMatrix { rows, typical }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ppz2() -> ConceptClass {
        ConceptClass::points_plus_zero(2).unwrap()
    }

    #[test]
    fn fractions() {
        let all = ConceptClass::all_functions(2).unwrap();
        for a in ["00", "01", "10", "11"] {
            assert_eq!(gamma_fraction(&all, a, true).unwrap(), Rational::new(1, 2));
        }
        let zero = ConceptClass::new(vec![Concept::zero(2).unwrap()]).unwrap();
        assert_eq!(gamma_fraction(&zero, "10", false).unwrap(), Rational::from(1));
        assert_eq!(gamma_fraction(&ppz2(), "00", true).unwrap(), Rational::new(1, 5));
        assert!(gamma_fraction(&ppz2(), "0", true).is_err());
    }

    #[test]
    fn gamma_hat_examples() {
        let stats = gamma_hat(&ppz2()).unwrap();
        assert_eq!(stats.gamma_hat, Rational::new(1, 5));
        assert_eq!(stats.witness_subset, vec![0, 1, 2, 3, 4]);
        assert_eq!(stats.witness_query, 0);

        let all = gamma_hat(&ConceptClass::all_functions(2).unwrap()).unwrap();
        assert_eq!(all.gamma_hat, Rational::new(1, 5));

        let pair = ConceptClass::new(vec![
            Concept::point(2, 1).unwrap(),
            Concept::point(2, 3).unwrap(),
        ])
        .unwrap();
        assert_eq!(gamma_hat(&pair).unwrap().gamma_hat, Rational::new(1, 2));
    }

    #[test]
    fn gamma_hat_refuses_small_and_large() {
        let one = ConceptClass::new(vec![Concept::zero(2).unwrap()]).unwrap();
        assert!(matches!(gamma_hat(&one), Err(Error::InvalidInput(_))));
        let big = ConceptClass::parity_class(5).unwrap();
        assert!(gamma_hat(&big).unwrap_err().is_cap());
    }

    #[test]
    fn lex_order_on_masks() {
        // {0,1} < {0,1,2} < {0,2} < {1}
        assert!(lex_less(0b011, 0b111));
        assert!(lex_less(0b111, 0b101));
        assert!(lex_less(0b101, 0b010));
        assert!(!lex_less(0b010, 0b010));
    }

    #[test]
    fn typical_examples() {
        assert_eq!(typical_concept(&ppz2()), Concept::zero(2).unwrap());
        let c = Concept::parity(2, 3).unwrap();
        let single = ConceptClass::new(vec![c.clone()]).unwrap();
        assert_eq!(typical_concept(&single), c);
        let pair = ConceptClass::new(vec![c.clone(), c.complement()]).unwrap();
        assert_eq!(typical_concept(&pair), Concept::zero(2).unwrap());
    }

    #[test]
    fn difference_matrix_examples() {
        let d = difference_matrix(&ppz2());
        assert_eq!(d.column_sums(), vec![1, 1, 1, 1]);
        assert_eq!(d.l1_norm(), 1);

        let c = Concept::parity(2, 1).unwrap();
        let single = ConceptClass::new(vec![c.clone()]).unwrap();
        assert_eq!(difference_matrix(&single).l1_norm(), 0);

        let pair = ConceptClass::new(vec![c.clone(), c.complement()]).unwrap();
        assert_eq!(difference_matrix(&pair).column_sums(), vec![1, 1, 1, 1]);
    }
}
