//! Exact learning from membership queries over an explicit version space.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::MembershipOracle;
use crate::concept::{Concept, ConceptClass};
use crate::error::{Error, Result};

/// Chooses the next membership query given the current version space
/// (indices into the class, always at least two).
pub trait QueryStrategy {
    fn next_query(&mut self, class: &ConceptClass, version_space: &[usize]) -> usize;
}

impl<F: FnMut(&ConceptClass, &[usize]) -> usize> QueryStrategy for F {
    fn next_query(&mut self, class: &ConceptClass, version_space: &[usize]) -> usize {
        self(class, version_space)
    }
}

/// Queries the point maximising `γ^{V}_a`, the smallest index on ties.
#[derive(Clone, Copy, Debug, Default)]
pub struct Greedy;

impl QueryStrategy for Greedy {
    fn next_query(&mut self, class: &ConceptClass, version_space: &[usize]) -> usize {
        let k = version_space.len();
        let mut best = (0usize, 0usize);
        for x in 0..class.domain_size() {
            let ones = version_space
                .iter()
                .filter(|&&i| class.concepts()[i].eval(x))
                .count();
            let minority = ones.min(k - ones);
            if minority > best.0 {
                best = (minority, x);
                if minority == k / 2 {
                    break;
                }
            }
        }
        best.1
    }
}

/// Queries a uniformly random point on which the version space disagrees.
#[derive(Clone, Debug)]
pub struct RandomSplitting {
    rng: ChaCha8Rng,
}

impl RandomSplitting {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl QueryStrategy for RandomSplitting {
    fn next_query(&mut self, class: &ConceptClass, version_space: &[usize]) -> usize {
        let first = &class.concepts()[version_space[0]];
        let splitting: Vec<usize> = (0..class.domain_size())
            .filter(|&x| {
                version_space
                    .iter()
                    .any(|&i| class.concepts()[i].eval(x) != first.eval(x))
            })
            .collect();
        *splitting
            .choose(&mut self.rng)
            .expect("distinct concepts disagree somewhere")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactRun {
    pub hypothesis: Concept,
    pub queries: usize,
    /// `(point, answer)` in query order.
    pub transcript: Vec<(usize, bool)>,
}

/// Runs `strategy` against `oracle` until a single concept survives.
///
/// Errors with [`Error::Conceded`] if an adversary gives up first and
/// [`Error::ProtocolViolation`] if the answers rule out every concept.
pub fn run_exact<S: QueryStrategy + ?Sized>(
    class: &ConceptClass,
    oracle: &mut MembershipOracle,
    strategy: &mut S,
) -> Result<ExactRun> {
    if oracle.n() != class.n() {
        return Err(Error::DimensionMismatch {
            expected: class.n(),
            got: oracle.n(),
        });
    }
    let mut version_space: Vec<usize> = (0..class.len()).collect();
    let mut transcript = Vec::new();
    while version_space.len() > 1 {
        let x = strategy.next_query(class, &version_space);
        let b = oracle.query(x)?;
        transcript.push((x, b));
        version_space.retain(|&i| class.concepts()[i].eval(x) == b);
        if version_space.is_empty() {
            return Err(Error::ProtocolViolation(format!(
                "no concept in the class is consistent with {} answers",
                transcript.len()
            )));
        }
    }
    Ok(ExactRun {
        hypothesis: class.concepts()[version_space[0]].clone(),
        queries: transcript.len(),
        transcript,
    })
}

pub fn greedy_exact_learner(class: &ConceptClass, oracle: &mut MembershipOracle) -> Result<ExactRun> {
    run_exact(class, oracle, &mut Greedy)
}

/// Number of queries an adversary answers before its live set drops
/// below two, with `strategy` choosing the queries.
pub fn queries_forced<S: QueryStrategy + ?Sized>(
    class: &ConceptClass,
    oracle: &mut MembershipOracle,
    strategy: &mut S,
) -> Result<usize> {
    if oracle.rule().is_none() {
        return Err(Error::invalid("queries_forced needs an adversary oracle"));
    }
    match run_exact(class, oracle, strategy) {
        Ok(_) | Err(Error::Conceded { .. }) => Ok(oracle.query_count()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::AdversaryRule;

    #[test]
    fn two_concepts_take_one_query() {
        let class = ConceptClass::new(vec![Concept::zero(2).unwrap(), Concept::point(2, 2).unwrap()])
            .unwrap();
        for target in class.iter() {
            let run = greedy_exact_learner(&class, &mut MembershipOracle::honest(target.clone()))
                .unwrap();
            assert_eq!(run.queries, 1);
            assert_eq!(&run.hypothesis, target);
        }
    }

    #[test]
    fn points_plus_zero_against_adversary() {
        let class = ConceptClass::points_plus_zero(2).unwrap();
        let mut oracle = MembershipOracle::majority_adversary(&class).unwrap();
        let run = greedy_exact_learner(&class, &mut oracle).unwrap();
        assert_eq!(run.queries, 4);
        assert_eq!(run.hypothesis, Concept::zero(2).unwrap());
        assert_eq!(
            run.transcript,
            vec![(0, false), (1, false), (2, false), (3, false)]
        );
    }

    #[test]
    fn parity_three_is_learned_in_three() {
        let class = ConceptClass::parity_class(3).unwrap();
        for target in class.iter() {
            let run = greedy_exact_learner(&class, &mut MembershipOracle::honest(target.clone()))
                .unwrap();
            assert!(run.queries <= 3);
            assert_eq!(&run.hypothesis, target);
        }
    }

    #[test]
    fn target_outside_class_is_a_protocol_violation() {
        let class = ConceptClass::parity_class(2).unwrap();
        let outsider = Concept::point(2, 0).unwrap();
        // every parity vanishes at 00, so asking there exposes the outsider
        let mut ask_origin = |_: &ConceptClass, _: &[usize]| 0usize;
        let err = run_exact(&class, &mut MembershipOracle::honest(outsider), &mut ask_origin)
            .unwrap_err();
        assert!(matches!(err, Error::ProtocolViolation(_)));
    }

    #[test]
    fn random_strategy_still_exact() {
        let class = ConceptClass::conjunctions(2).unwrap();
        for (seed, target) in class.iter().enumerate() {
            let mut strategy = RandomSplitting::new(seed as u64);
            let run = run_exact(&class, &mut MembershipOracle::honest(target.clone()), &mut strategy)
                .unwrap();
            assert_eq!(&run.hypothesis, target);
        }
    }

    #[test]
    fn forced_queries_counts_until_concession() {
        let class = ConceptClass::points_plus_zero(2).unwrap();
        let mut oracle = MembershipOracle::adversary(AdversaryRule::Similarity, &class).unwrap();
        assert_eq!(queries_forced(&class, &mut oracle, &mut Greedy).unwrap(), 4);
        let mut honest = MembershipOracle::honest(Concept::zero(2).unwrap());
        assert!(queries_forced(&class, &mut honest, &mut Greedy).is_err());
    }
}
