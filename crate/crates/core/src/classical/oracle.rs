use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::concept::{gamma_hat, parse_point, Concept, ConceptClass, Distribution};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryRule {
    /// Seeded with a `γ̂` witness subset; answers the bit held by the larger
    /// share of the surviving witnesses.
    Similarity,
    /// Seeded with the whole class; answers a bit held by at least half of
    /// the surviving concepts.
    Majority,
}

#[derive(Clone, Debug)]
enum Mode {
    Honest(Concept),
    Adversary {
        rule: AdversaryRule,
        live: Vec<Concept>,
    },
}

/// A classical membership oracle, either truthful or an adaptive adversary.
///
/// Adversaries keep a live set of concepts consistent with every answer so
/// far. Each answer is the bit held by at least half of the live set
/// (ties answer 0), so the live set never empties. Once fewer than two
/// concepts remain the adversary concedes and refuses further queries.
#[derive(Clone, Debug)]
pub struct MembershipOracle {
    n: usize,
    mode: Mode,
    query_count: usize,
}

impl MembershipOracle {
    pub fn honest(target: Concept) -> Self {
        Self {
            n: target.n(),
            mode: Mode::Honest(target),
            query_count: 0,
        }
    }

    /// Similarity adversary seeded with the `γ̂` witness of `class`.
    pub fn similarity_adversary(class: &ConceptClass) -> Result<Self> {
        let stats = gamma_hat(class)?;
        Self::adversary(AdversaryRule::Similarity, &class.subset(&stats.witness_subset)?)
    }

    pub fn majority_adversary(class: &ConceptClass) -> Result<Self> {
        Self::adversary(AdversaryRule::Majority, class)
    }

    /// An adversary of the given rule over an explicit live set.
    pub fn adversary(rule: AdversaryRule, live: &ConceptClass) -> Result<Self> {
        if live.len() < 2 {
            return Err(Error::invalid("an adversary needs at least two live concepts"));
        }
        Ok(Self {
            n: live.n(),
            mode: Mode::Adversary {
                rule,
                live: live.concepts().to_vec(),
            },
            query_count: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn query_count(&self) -> usize {
        self.query_count
    }

    pub fn rule(&self) -> Option<AdversaryRule> {
        match &self.mode {
            Mode::Honest(_) => None,
            Mode::Adversary { rule, .. } => Some(*rule),
        }
    }

    pub fn live_set(&self) -> Option<&[Concept]> {
        match &self.mode {
            Mode::Honest(_) => None,
            Mode::Adversary { live, .. } => Some(live),
        }
    }

    pub fn target(&self) -> Option<&Concept> {
        match &self.mode {
            Mode::Honest(c) => Some(c),
            Mode::Adversary { .. } => None,
        }
    }

    pub fn has_conceded(&self) -> bool {
        matches!(&self.mode, Mode::Adversary { live, .. } if live.len() < 2)
    }

    /// Answers a membership query at point index `x`.
    pub fn query(&mut self, x: usize) -> Result<bool> {
        if x >= 1 << self.n {
            return Err(Error::invalid(format!("point {x} outside the domain")));
        }
        let answer = match &mut self.mode {
            Mode::Honest(target) => target.eval(x),
            Mode::Adversary { live, .. } => {
                if live.len() < 2 {
                    return Err(Error::Conceded {
                        queries: self.query_count,
                    });
                }
                let ones = live.iter().filter(|c| c.eval(x)).count();
                let b = 2 * ones > live.len();
                live.retain(|c| c.eval(x) == b);
                b
            }
        };
        self.query_count += 1;
        Ok(answer)
    }

    pub fn query_str(&mut self, a: &str) -> Result<bool> {
        let x = parse_point(self.n, a)?;
        self.query(x)
    }

    fn answer_as(&mut self, expected: AdversaryRule, a: &str) -> Result<bool> {
        match self.rule() {
            Some(rule) if rule == expected => self.query_str(a),
            _ => Err(Error::invalid(format!(
                "oracle is not a {expected:?} adversary"
            ))),
        }
    }
}

/// One answer from the similarity adversary; errors in any other mode.
pub fn answer_similarity_adversary(oracle: &mut MembershipOracle, a: &str) -> Result<bool> {
    oracle.answer_as(AdversaryRule::Similarity, a)
}

/// One answer from the majority adversary; errors in any other mode.
pub fn answer_majority_adversary(oracle: &mut MembershipOracle, a: &str) -> Result<bool> {
    oracle.answer_as(AdversaryRule::Majority, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledExample {
    pub x: usize,
    pub label: bool,
}

/// `EX(c, D)`: seeded i.i.d. labelled examples.
#[derive(Clone, Debug)]
pub struct ExampleOracle {
    target: Concept,
    dist: Distribution,
    sampler: WeightedIndex<f64>,
    rng: ChaCha8Rng,
    seed: u64,
    draw_count: usize,
}

impl ExampleOracle {
    pub fn new(target: Concept, dist: Distribution, seed: u64) -> Result<Self> {
        Self::with_rng(target, dist, seed, ChaCha8Rng::seed_from_u64(seed))
    }

    /// Seeds from `(seed, stream)`, giving independent trials under one seed.
    pub fn with_stream(target: Concept, dist: Distribution, seed: u64, stream: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self::with_rng(target, dist, seed, rng)
    }

    fn with_rng(target: Concept, dist: Distribution, seed: u64, rng: ChaCha8Rng) -> Result<Self> {
        if dist.n() != target.n() {
            return Err(Error::DimensionMismatch {
                expected: target.n(),
                got: dist.n(),
            });
        }
        let sampler = WeightedIndex::new(dist.weights())
            .map_err(|e| Error::invalid(format!("unusable distribution: {e}")))?;
        Ok(Self {
            target,
            dist,
            sampler,
            rng,
            seed,
            draw_count: 0,
        })
    }

    pub fn draw(&mut self) -> LabeledExample {
        let x = self.sampler.sample(&mut self.rng);
        self.draw_count += 1;
        LabeledExample {
            x,
            label: self.target.eval(x),
        }
    }

    pub fn draw_many(&mut self, count: usize) -> Vec<LabeledExample> {
        (0..count).map(|_| self.draw()).collect()
    }

    pub fn target(&self) -> &Concept {
        &self.target
    }

    pub fn distribution(&self) -> &Distribution {
        &self.dist
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn draw_count(&self) -> usize {
        self.draw_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ppz2() -> ConceptClass {
        ConceptClass::points_plus_zero(2).unwrap()
    }

    #[test]
    fn honest_answers_target() {
        let c = Concept::parity(2, 3).unwrap();
        let mut o = MembershipOracle::honest(c.clone());
        for x in 0..4 {
            assert_eq!(o.query(x).unwrap(), c.eval(x));
        }
        assert_eq!(o.query_count(), 4);
        assert!(o.query(4).is_err());
    }

    #[test]
    fn similarity_eliminates_one_point_function() {
        let mut o = MembershipOracle::similarity_adversary(&ppz2()).unwrap();
        assert!(!answer_similarity_adversary(&mut o, "00").unwrap());
        assert_eq!(o.live_set().unwrap().len(), 4);
        // repeated query: same answer, nothing eliminated
        assert!(!answer_similarity_adversary(&mut o, "00").unwrap());
        assert_eq!(o.live_set().unwrap().len(), 4);
        assert!(answer_majority_adversary(&mut o, "00").is_err());
    }

    #[test]
    fn majority_halves_full_class() {
        let all = ConceptClass::all_functions(2).unwrap();
        let mut o = MembershipOracle::majority_adversary(&all).unwrap();
        answer_majority_adversary(&mut o, "10").unwrap();
        assert_eq!(o.live_set().unwrap().len(), 8);

        let mut o = MembershipOracle::majority_adversary(&ppz2()).unwrap();
        assert!(!answer_majority_adversary(&mut o, "00").unwrap());
        assert_eq!(o.live_set().unwrap().len(), 4);
    }

    #[test]
    fn pair_concedes_after_split() {
        let pair = ConceptClass::new(vec![Concept::zero(2).unwrap(), Concept::point(2, 3).unwrap()])
            .unwrap();
        let mut o = MembershipOracle::majority_adversary(&pair).unwrap();
        o.query_str("11").unwrap();
        assert_eq!(o.live_set().unwrap().len(), 1);
        assert!(o.has_conceded());
        assert_eq!(o.query_str("11"), Err(Error::Conceded { queries: 1 }));
    }

    #[test]
    fn example_oracle_is_reproducible() {
        let c = Concept::point(2, 1).unwrap();
        let d = Distribution::uniform(2).unwrap();
        let a = ExampleOracle::new(c.clone(), d.clone(), 7).unwrap().draw_many(50);
        let b = ExampleOracle::new(c.clone(), d.clone(), 7).unwrap().draw_many(50);
        assert_eq!(a, b);
        let s = ExampleOracle::with_stream(c, d, 7, 1).unwrap().draw_many(50);
        assert_ne!(a, s);
        assert!(a.iter().all(|e| e.label == (e.x == 1)));
    }
}
