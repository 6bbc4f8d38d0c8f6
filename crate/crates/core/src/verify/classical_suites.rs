use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Check, VerifyOptions};
use crate::bounds::{binary_entropy, bound_report, gv_codebook, GvChain, MAX_CODE_LENGTH};
use crate::classical::{
    empirical_error, greedy_exact_learner, hard_pac_distribution, pac_consistent_learner,
    queries_forced, ExampleOracle, Greedy, MembershipOracle, PacParams, RandomSplitting,
};
use crate::concept::{builtin_classes, gamma_hat, Concept, ConceptClass, Distribution, Rational};
use crate::error::Result;
use crate::learners::{build_parity_learner, certify_learner, qex_sampling_learner, DEFAULT_THRESHOLD};

fn ratio_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Queries forced by each adversary against greedy and 100 random learners.
#[derive(Clone, Debug, PartialEq)]
pub struct ForcedQueries {
    pub majority_min: usize,
    pub similarity_min: usize,
}

pub fn forced_queries(class: &ConceptClass, seed: u64) -> Result<ForcedQueries> {
    let mut majority_min = usize::MAX;
    let mut similarity_min = usize::MAX;
    for k in 0..=100u64 {
        let run = |mut oracle: MembershipOracle| -> Result<usize> {
            if k == 0 {
                queries_forced(class, &mut oracle, &mut Greedy)
            } else {
                let mut strategy = RandomSplitting::new(seed.wrapping_mul(1_000_003).wrapping_add(k));
                queries_forced(class, &mut oracle, &mut strategy)
            }
        };
        majority_min = majority_min.min(run(MembershipOracle::majority_adversary(class)?)?);
        similarity_min = similarity_min.min(run(MembershipOracle::similarity_adversary(class)?)?);
    }
    Ok(ForcedQueries {
        majority_min,
        similarity_min,
    })
}

pub(super) fn adversary(opts: &VerifyOptions) -> Result<Vec<Check>> {
    builtin_classes()
        .into_iter()
        .map(|(label, class)| {
            let forced = forced_queries(&class, opts.seed)?;
            let size_bound = (class.len() as f64).log2().ceil() - 1.0;
            let sim_bound = 1.0 / (2.0 * ratio_f64(gamma_hat(&class)?.gamma_hat)) - 1.0;
            Ok(Check::new(
                label,
                forced.majority_min as f64 >= size_bound && forced.similarity_min as f64 >= sim_bound,
                format!(
                    "majority forces {} >= {size_bound}, similarity forces {} >= {sim_bound}",
                    forced.majority_min, forced.similarity_min
                ),
            ))
        })
        .collect()
}

/// Worst-case greedy query count over all targets, with exactness.
pub fn greedy_worst_case(class: &ConceptClass) -> Result<(usize, bool)> {
    let mut worst = 0;
    let mut exact = true;
    for target in class.iter() {
        let run = greedy_exact_learner(class, &mut MembershipOracle::honest(target.clone()))?;
        worst = worst.max(run.queries);
        exact &= &run.hypothesis == target;
    }
    Ok((worst, exact))
}

pub(super) fn upper() -> Result<Vec<Check>> {
    builtin_classes()
        .into_iter()
        .map(|(label, class)| {
            let report = bound_report(&label, &class, None)?;
            let (worst, exact) = greedy_worst_case(&class)?;
            Ok(Check::new(
                label,
                exact && worst <= report.classical.upper,
                format!("worst {worst} <= upper {}, exact: {exact}", report.classical.upper),
            ))
        })
        .collect()
}

pub(super) fn gamma() -> Result<Vec<Check>> {
    let ppz = gamma_hat(&ConceptClass::points_plus_zero(2)?)?.gamma_hat;
    let all2 = ConceptClass::all_functions(2)?;
    let mut pairs_ok = true;
    for i in 0..all2.len() {
        for j in i + 1..all2.len() {
            pairs_ok &= gamma_hat(&all2.subset(&[i, j])?)?.gamma_hat == Rational::new(1, 2);
        }
    }
    let mut perm_ok = true;
    for (_, class) in builtin_classes() {
        let size = class.domain_size();
        let reversed: Vec<usize> = (0..size).rev().collect();
        let rotated: Vec<usize> = (0..size).map(|x| (x + 1) % size).collect();
        let base = gamma_hat(&class)?.gamma_hat;
        for perm in [reversed, rotated] {
            perm_ok &= gamma_hat(&class.permute_domain(&perm)?)?.gamma_hat == base;
        }
    }
    Ok(vec![
        Check::new("points_plus_zero n=2", ppz == Rational::new(1, 5), format!("{ppz}")),
        Check::new("every 2-concept class", pairs_ok, "all 120 pairs of functions on 2 bits"),
        Check::new("invariant under domain permutation", perm_ok, "built-in classes"),
    ])
}

/// One seeded PAC trial: the target is `class[trial % |C|]` and every
/// random draw comes from stream `trial` of `seed`.
#[derive(Clone, Debug, PartialEq)]
pub struct PacTrial {
    pub target: Concept,
    pub hypothesis: Concept,
    pub samples: usize,
    pub error: f64,
}

pub fn pac_trial(
    class: &ConceptClass,
    dist: &Distribution,
    params: PacParams,
    seed: u64,
    trial: u64,
    quantum: bool,
) -> Result<PacTrial> {
    let target = class.concepts()[(trial % class.len() as u64) as usize].clone();
    let run = if quantum {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5145_5800);
        rng.set_stream(trial);
        qex_sampling_learner(class, &target, dist, params, &mut rng)?
    } else {
        let mut oracle = ExampleOracle::with_stream(target.clone(), dist.clone(), seed, trial)?;
        pac_consistent_learner(class, &mut oracle, params)?
    };
    let error = empirical_error(&run.hypothesis, &target, dist)?;
    Ok(PacTrial {
        target,
        hypothesis: run.hypothesis,
        samples: run.samples,
        error,
    })
}

/// Success rates of both PAC learners on one class and distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct PacRates {
    pub classical: f64,
    pub quantum: f64,
    pub samples: usize,
}

pub fn pac_rates(
    class: &ConceptClass,
    dist: &Distribution,
    params: PacParams,
    trials: u64,
    seed: u64,
) -> Result<PacRates> {
    let mut classical_ok = 0;
    let mut quantum_ok = 0;
    let mut samples = 0;
    for trial in 0..trials {
        let run = pac_trial(class, dist, params, seed, trial, false)?;
        samples = run.samples;
        if run.error <= params.epsilon() {
            classical_ok += 1;
        }
        if pac_trial(class, dist, params, seed, trial, true)?.error <= params.epsilon() {
            quantum_ok += 1;
        }
    }
    Ok(PacRates {
        classical: classical_ok as f64 / trials as f64,
        quantum: quantum_ok as f64 / trials as f64,
        samples,
    })
}

pub(super) fn pac(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let params = PacParams::new(0.1, 0.1)?;
    let mut checks = Vec::new();
    for (label, class) in [
        ("points_plus_zero n=2", ConceptClass::points_plus_zero(2)?),
        ("parity n=3", ConceptClass::parity_class(3)?),
    ] {
        for (dist_label, dist) in [
            ("uniform", Distribution::uniform(class.n())?),
            ("shattered", hard_pac_distribution(&class)?),
        ] {
            let rates = pac_rates(&class, &dist, params, 200, opts.seed)?;
            let need = 1.0 - params.delta();
            checks.push(Check::new(
                format!("{label} {dist_label}"),
                rates.classical >= need && rates.quantum >= need,
                format!(
                    "classical {:.3}, quantum {:.3}, need {need}, m = {}",
                    rates.classical, rates.quantum, rates.samples
                ),
            ));
        }
    }
    Ok(checks)
}

pub(super) fn gv() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut all_ok = true;
    let mut sizes = Vec::new();
    for d in 1..=MAX_CODE_LENGTH {
        let code = gv_codebook(d)?;
        let distance_ok = code
            .pairwise_min_distance()
            .is_none_or(|dist| dist >= code.min_distance);
        let size_ok = code.len() >= 1 << (d / 6);
        all_ok &= distance_ok && size_ok && GvChain::new(d)?.holds();
        sizes.push(code.len().to_string());
    }
    checks.push(Check::new(
        "greedy codebooks for d <= 24",
        all_ok,
        format!("sizes {}", sizes.join(",")),
    ));
    let h = binary_entropy(0.25)?;
    checks.push(Check::new(
        "1 - H(1/4) > 1/6",
        (h - 0.811278).abs() < 5e-7 && 1.0 - h > 1.0 / 6.0,
        format!("H(1/4) = {h:.6}"),
    ));
    Ok(checks)
}

/// Measured complexity of every shipped learner against the lower bounds
/// that apply to it.
pub(super) fn consistency(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let params = PacParams::new(0.1, 0.1)?;
    let mut checks = Vec::new();
    for (label, class) in builtin_classes() {
        let report = bound_report(&label, &class, Some(params))?;
        let mut notes = Vec::new();
        let mut ok = true;

        let (worst, _) = greedy_worst_case(&class)?;
        ok &= worst as f64 >= report.classical.exact_lower && worst <= report.classical.upper;
        notes.push(format!("greedy {worst} in [{:.3}, {}]", report.classical.exact_lower, report.classical.upper));

        let forced = forced_queries(&class, opts.seed)?;
        let forced_min = forced.majority_min.max(forced.similarity_min);
        ok &= forced_min as f64 >= report.classical.exact_lower;

        let d = report.classical.vc as f64;
        let m = report.classical.pac_upper.unwrap_or(0) as f64;
        ok &= m > d / 2.0 && m >= report.quantum.vc;
        notes.push(format!("pac m {m} > d/2 = {}", d / 2.0));

        if class.n() <= crate::concept::MAX_QUANTUM_N {
            let cert = certify_learner(&build_parity_learner(class.n())?, &class, DEFAULT_THRESHOLD)?;
            if cert.passed {
                ok &= cert.queries as f64 >= report.quantum.exact_lower;
                notes.push(format!(
                    "parity learner T {} >= {:.4}",
                    cert.queries, report.quantum.exact_lower
                ));
            }
        }
        checks.push(Check::new(label, ok, notes.join("; ")));
    }
    Ok(checks)
}
