use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, VerifyOptions};
use crate::bounds::{
    acceptance_polynomial, acceptance_values, diagonal_dominance_full_rank, success_matrix,
    MultilinearPolynomial, OutcomeSet,
};
use crate::concept::{Concept, ConceptClass};
use crate::error::Result;
use crate::learners::{build_parity_learner, certify_learner, DEFAULT_THRESHOLD};
use crate::quantum::random::{random_network, random_state, UnitaryKind};
use crate::quantum::{
    euclidean_distance, final_state, measure_distribution, query_magnitudes, run_with_overrides,
    saturating_overrides, total_variation, Decode, Gate, OracleInstance, OverrideTable,
    QuantumState, QueryNetwork, Stage,
};

/// Accuracy of the hybrid-argument trials.
pub const HYBRID_EPSILON: f64 = 0.1;

fn rng_for(opts: &VerifyOptions, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(stream);
    rng
}

/// Exact success of the parity learner on every parity target for n ≤ 6.
/// With a fault injected, the oracle's answer on the all-ones string is
/// flipped at the single query.
pub(super) fn parity(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 1..=6 {
        let net = build_parity_learner(n)?;
        let class = ConceptClass::parity_class(n)?;
        let mut worst: f64 = 1.0;
        for (a, c) in class.iter().enumerate() {
            let state = if opts.inject_fault {
                let mut table = OverrideTable::new(1);
                let x = c.domain_size() - 1;
                table.insert(0, x, !c.eval(x))?;
                run_with_overrides(&net, c, &table)?
            } else {
                final_state(&net, OracleInstance::Qmq(c))?
            };
            let marginal = measure_distribution(&state, &net.decode().qubits)?;
            let decoded = net.decode_outcome(a).map(|h| h == c).unwrap_or(false);
            worst = worst.min(if decoded { marginal.prob(a) } else { 0.0 });
        }
        let t = net.query_count();
        let size_bound = (class.len() as f64).log2() / (2.0 * n as f64);
        checks.push(Check::new(
            format!("parity n={n}"),
            (worst - 1.0).abs() <= 1e-9 && t == 1 && t as f64 >= size_bound,
            format!("min success {worst:.12}, T = {t}, log2|C|/(2n) = {size_bound}"),
        ));
    }
    let cert = certify_learner(&build_parity_learner(3)?, &ConceptClass::parity_class(3)?, DEFAULT_THRESHOLD)?;
    checks.push(Check::new(
        "certify parity n=3",
        cert.passed,
        format!("min success {:.12}", cert.min_success),
    ));
    Ok(checks)
}

/// Every acceptance polynomial of a random `T`-query network has degree at
/// most `2T` and interpolates the simulated probabilities exactly.
pub(super) fn degree(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 2);
    let mut worst_coef: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    let trials = 200;
    for i in 0..trials {
        let n = 1 + i % 2;
        let t = (i / 2) % 3;
        let m = n + 1 + (i / 6) % 2;
        let net = random_network(m, n, t, UnitaryKind::Haar, &mut rng)?;
        let mut qubits: Vec<usize> = (0..m).filter(|_| rng.gen()).collect();
        if qubits.is_empty() {
            qubits.push(rng.gen_range(0..m));
        }
        let values: Vec<usize> = (0..1usize << qubits.len()).filter(|_| rng.gen()).collect();
        let outcomes = OutcomeSet::new(qubits, values);
        let probs = acceptance_values(&net, &outcomes)?;
        let poly = MultilinearPolynomial::interpolate(1 << n, &probs)?;
        worst_coef = worst_coef.max(poly.max_coefficient_above(2 * t));
        worst_residual = worst_residual.max(poly.residual(&probs));
    }
    let deutsch = QueryNetwork::new(
        2,
        1,
        vec![
            Stage::Gates(vec![Gate::X(1), Gate::H(0), Gate::H(1)]),
            Stage::Oracle,
            Stage::Gates(vec![Gate::H(0)]),
        ],
        Decode::parity(1),
    )?;
    let p = acceptance_polynomial(&deutsch, &OutcomeSet::new(vec![0], vec![1]))?;
    let expected = [0.0, 1.0, 1.0, -2.0];
    let deutsch_err = p
        .coefficients()
        .iter()
        .zip(expected)
        .map(|(c, e)| (c - e).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        Check::new(
            "coefficients above degree 2T",
            worst_coef < 1e-7,
            format!("{trials} networks, largest {worst_coef:.3e}"),
        ),
        Check::new(
            "interpolation residual",
            worst_residual < 1e-9,
            format!("largest {worst_residual:.3e}"),
        ),
        Check::new(
            "deutsch polynomial X0 + X1 - 2 X0 X1",
            deutsch_err < 1e-12,
            format!("max coefficient error {deutsch_err:.3e}"),
        ),
    ])
}

/// Outcome of one hybrid-argument trial.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridTrial {
    pub t: usize,
    pub overridden: usize,
    pub mass: f64,
    pub budget: f64,
    pub distance: f64,
}

/// Trial `index` of the hybrid-argument experiment: a network on 3 qubits
/// (n = 2) whose unitaries are near-permutations, `T = 1 + index % 3`, a
/// random concept, and the override set filled with the smallest query
/// magnitudes up to `ε²/T` with random answer bits.
pub fn hybrid_trial(seed: u64, index: u64, epsilon: f64) -> Result<HybridTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1000 + index);
    let n = 2;
    let t = 1 + (index % 3) as usize;
    let net = random_network(3, n, t, UnitaryKind::NearPermutation { spread: 0.02 }, &mut rng)?;
    let c = Concept::new(n, (0..1usize << n).map(|_| rng.gen()).collect())?;
    let q = query_magnitudes(&net, &c)?;
    let budget = epsilon * epsilon / t as f64;
    let table = saturating_overrides(&q, budget, &mut rng);
    let plain = final_state(&net, OracleInstance::Qmq(&c))?;
    let modified = run_with_overrides(&net, &c, &table)?;
    Ok(HybridTrial {
        t,
        overridden: table.len(),
        mass: q.mass_of(&table),
        budget,
        distance: euclidean_distance(&plain, &modified)?,
    })
}

pub(super) fn hybrid(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let eps = HYBRID_EPSILON;
    let mut rng = rng_for(opts, 3);
    // zero-distance cases on random networks
    let mut exact_ok = true;
    let mut total_err: f64 = 0.0;
    for _ in 0..20 {
        let t = rng.gen_range(1..=3);
        let net = random_network(3, 2, t, UnitaryKind::Haar, &mut rng)?;
        let c = Concept::new(2, (0..4).map(|_| rng.gen()).collect())?;
        let plain = final_state(&net, OracleInstance::Qmq(&c))?;
        exact_ok &= run_with_overrides(&net, &c, &OverrideTable::new(t))? == plain;
        let mut agreeing = OverrideTable::new(t);
        for step in 0..t {
            let x = rng.gen_range(0..4);
            agreeing.insert(step, x, c.eval(x))?;
        }
        exact_ok &= run_with_overrides(&net, &c, &agreeing)? == plain;
        total_err = total_err.max((query_magnitudes(&net, &c)?.total() - t as f64).abs());
    }

    let trials: Vec<HybridTrial> = (0..100)
        .map(|i| hybrid_trial(opts.seed, i, eps))
        .collect::<Result<_>>()?;
    let worst = trials.iter().map(|r| r.distance).fold(0.0, f64::max);
    let within_budget = trials.iter().all(|r| r.mass <= r.budget + 1e-15);
    let violations = trials.iter().filter(|r| r.distance > eps).count();
    let nonempty = trials.iter().filter(|r| r.overridden > 0).count();
    Ok(vec![
        Check::new(
            "empty and agreeing overrides leave the state unchanged",
            exact_ok,
            "20 random networks",
        ),
        Check::new(
            "query magnitudes sum to T",
            total_err < 1e-9,
            format!("largest deviation {total_err:.3e}"),
        ),
        Check::new(
            "override sets respect the budget",
            within_budget && nonempty > 0,
            format!("{nonempty} of {} override sets non-empty", trials.len()),
        ),
        Check::new(
            "distance within epsilon",
            violations == 0,
            format!(
                "{violations} of {} trials exceed {eps}, largest {worst:.6}",
                trials.len()
            ),
        ),
        Check::new(
            "distance within 2 epsilon",
            worst <= 2.0 * eps,
            format!("largest {worst:.6}"),
        ),
    ])
}

/// Total variation of every marginal against Euclidean distance, for
/// random pairs on 4 qubits. Half of the pairs are close perturbations.
pub(super) fn distinguish(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 4);
    let m = 4;
    let subsets: Vec<Vec<usize>> = (1u32..1 << m)
        .map(|mask| (0..m).filter(|q| mask >> q & 1 == 1).collect())
        .collect();
    let mut worst_ratio: f64 = 0.0;
    let mut failures = 0;
    let pairs = 1000;
    for i in 0..pairs {
        let phi = random_state(m, &mut rng)?;
        let psi = if i % 2 == 0 {
            random_state(m, &mut rng)?
        } else {
            let eta = 10f64.powi(-(1 + i / 2 % 4));
            let noise = random_state(m, &mut rng)?;
            let mut amps: Vec<_> = phi
                .amplitudes()
                .iter()
                .zip(noise.amplitudes())
                .map(|(a, b)| a + b * eta)
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            amps.iter_mut().for_each(|a| *a /= norm);
            QuantumState::from_amplitudes(amps)?
        };
        let dist = euclidean_distance(&phi, &psi)?;
        for qubits in &subsets {
            let tv = total_variation(
                &measure_distribution(&phi, qubits)?.probs,
                &measure_distribution(&psi, qubits)?.probs,
            )?;
            if tv > 4.0 * dist + 1e-12 {
                failures += 1;
            }
            if dist > 0.0 {
                worst_ratio = worst_ratio.max(tv / dist);
            }
        }
    }
    Ok(vec![Check::new(
        "total variation within 4x Euclidean distance",
        failures == 0,
        format!(
            "{pairs} pairs x {} subsets, {failures} exceptions, largest TV/distance {worst_ratio:.4}",
            subsets.len()
        ),
    )])
}

/// Random diagonally dominant matrices are full rank with eigenvalues in
/// their Gershgorin disks; the parity learner's success matrix has a
/// dominant transpose.
pub(super) fn gershgorin(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut rng = rng_for(opts, 9);
    let mut rank_ok = true;
    let mut worst_excess: f64 = 0.0;
    for _ in 0..500 {
        let size = rng.gen_range(2..=16);
        let mut a: Vec<Vec<f64>> = (0..size)
            .map(|_| (0..size).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        for (i, row) in a.iter_mut().enumerate() {
            let radius: f64 = row
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.abs())
                .sum();
            let sign = if rng.gen() { 1.0 } else { -1.0 };
            row[i] = sign * (radius + rng.gen_range(0.01..1.0));
        }
        let report = diagonal_dominance_full_rank(&a)?;
        rank_ok &= report.dominant && report.full_rank;
        worst_excess = worst_excess.max(report.disk_excess);
    }
    let mut learner_ok = true;
    for n in 1..=3 {
        let l = success_matrix(&build_parity_learner(n)?, &ConceptClass::parity_class(n)?)?;
        let report = diagonal_dominance_full_rank(&l.transpose())?;
        learner_ok &= l.transpose_dominant() && report.dominant && report.full_rank;
    }
    Ok(vec![
        Check::new("dominant matrices have full rank", rank_ok, "500 matrices, sizes 2 to 16"),
        Check::new(
            "eigenvalues inside the disk union",
            worst_excess <= 1e-6,
            format!("largest excess {worst_excess:.3e}"),
        ),
        Check::new(
            "parity learner success matrix",
            learner_ok,
            "transpose dominant for n = 1, 2, 3",
        ),
    ])
}
