use rand::Rng;

use crate::classical::{consistent_hypothesis, pac_sample_size, LabeledExample, PacParams, PacRun};
use crate::concept::{vc_dimension, Concept, ConceptClass, Distribution};
use crate::error::Result;
use crate::quantum::{
    measure_distribution, run_network, Decode, OracleInstance, QueryNetwork, Stage,
};

/// Prepares the example state of `target` under `dist` and measures it
/// fully `count` times. The prepared state is identical every time, so its
/// exact outcome distribution is computed once and sampled `count` times.
pub fn qex_sample(
    target: &Concept,
    dist: &Distribution,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<LabeledExample>> {
    let n = target.n();
    let net = QueryNetwork::new(n + 1, n, vec![Stage::Qex], Decode::parity(n))?;
    let state = run_network(&net, OracleInstance::Qex(target, dist))?.final_state;
    let all: Vec<usize> = (0..=n).collect();
    let marginal = measure_distribution(&state, &all)?;
    Ok(marginal
        .sample_with(rng, count)
        .into_iter()
        .map(|v| LabeledExample {
            x: v >> 1,
            label: v & 1 == 1,
        })
        .collect())
}

/// PAC learning from quantum examples: measure `pac_sample_size(params, d)`
/// example states and return the first consistent concept.
pub fn qex_sampling_learner(
    class: &ConceptClass,
    target: &Concept,
    dist: &Distribution,
    params: PacParams,
    rng: &mut impl Rng,
) -> Result<PacRun> {
    let m = pac_sample_size(params, vc_dimension(class)?.d);
    let sample = qex_sample(target, dist, m, rng)?;
    Ok(PacRun {
        hypothesis: consistent_hypothesis(class, &sample)?,
        samples: m,
    })
}
