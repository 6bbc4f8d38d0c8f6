use std::collections::HashSet;

use serde::Serialize;

use super::ConceptClass;
use crate::error::{Error, Result};

/// Largest domain `N = 2^n` searched for shattered sets.
pub const VC_DOMAIN_CAP: usize = 256;

/// `|Π_C(S)|`: the number of distinct restrictions of the class to `S`.
pub fn dichotomy_count(class: &ConceptClass, points: &[usize]) -> usize {
    class
        .iter()
        .map(|c| points.iter().map(|&x| c.eval(x)).collect::<Vec<bool>>())
        .collect::<HashSet<_>>()
        .len()
}

pub fn is_shattered(class: &ConceptClass, points: &[usize]) -> bool {
    let k = points.len();
    if k >= usize::BITS as usize - 1 || class.len() < 1usize << k {
        return false;
    }
    let patterns: HashSet<u64> = class
        .iter()
        .map(|c| {
            points
                .iter()
                .fold(0u64, |acc, &x| (acc << 1) | c.eval(x) as u64)
        })
        .collect();
    patterns.len() == 1 << k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VcWitness {
    pub d: usize,
    /// A maximum shattered set, as sorted point indices.
    pub set: Vec<usize>,
}

/// Exact VC dimension with the lexicographically first maximum shattered set.
///
/// Grows shattered sets one point at a time. Every subset of a shattered set
/// is shattered, so each shattered set of size `k+1` extends its own sorted
/// `k`-prefix; the number of shattered sets never exceeds `|C|`.
pub fn vc_dimension(class: &ConceptClass) -> Result<VcWitness> {
    let big_n = class.domain_size();
    if big_n > VC_DOMAIN_CAP {
        return Err(Error::CapExceeded {
            what: "domain size for VC search",
            limit: VC_DOMAIN_CAP,
            got: big_n,
        });
    }
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    let mut best = Vec::new();
    while !level.is_empty() {
        best = level[0].clone();
        let mut next = Vec::new();
        for set in &level {
            let start = set.last().map_or(0, |&x| x + 1);
            for x in start..big_n {
                let mut candidate = set.clone();
                candidate.push(x);
                if is_shattered(class, &candidate) {
                    next.push(candidate);
                }
            }
        }
        level = next;
    }
    Ok(VcWitness {
        d: best.len(),
        set: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::Concept;

    #[test]
    fn parity_three_has_dimension_three() {
        let w = vc_dimension(&ConceptClass::parity_class(3).unwrap()).unwrap();
        assert_eq!(w.d, 3);
        assert!(is_shattered(&ConceptClass::parity_class(3).unwrap(), &w.set));
    }

    #[test]
    fn full_and_single() {
        let all = ConceptClass::all_functions(2).unwrap();
        assert_eq!(vc_dimension(&all).unwrap(), VcWitness { d: 4, set: vec![0, 1, 2, 3] });
        let single = ConceptClass::new(vec![Concept::zero(3).unwrap()]).unwrap();
        assert_eq!(vc_dimension(&single).unwrap().d, 0);
    }

    #[test]
    fn dichotomies() {
        let parity = ConceptClass::parity_class(2).unwrap();
        assert_eq!(dichotomy_count(&parity, &[]), 1);
        assert_eq!(dichotomy_count(&parity, &[0b01, 0b10]), 4);
        let pair = ConceptClass::new(vec![Concept::zero(2).unwrap(), Concept::point(2, 0).unwrap()])
            .unwrap();
        assert_eq!(dichotomy_count(&pair, &[0]), 2);
    }

    #[test]
    fn points_plus_zero_dimension_one() {
        let w = vc_dimension(&ConceptClass::points_plus_zero(2).unwrap()).unwrap();
        assert_eq!(w, VcWitness { d: 1, set: vec![0] });
    }

    #[test]
    fn domain_cap() {
        let class = ConceptClass::new(vec![Concept::zero(9).unwrap()]).unwrap();
        assert!(vc_dimension(&class).unwrap_err().is_cap());
    }
}
