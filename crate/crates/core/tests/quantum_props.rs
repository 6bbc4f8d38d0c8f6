use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlearn::bounds::{acceptance_polynomial, MultilinearPolynomial, OutcomeSet};
use qlearn::quantum::random::{random_network, random_state, UnitaryKind};
use qlearn::quantum::{
    apply_qmq, distinguished_count, euclidean_distance, final_state, measure_distribution,
    prepare_qex, query_magnitudes, run_with_overrides, total_variation, Decode, DenseUnitary, Gate,
    OracleInstance, OverrideTable, QuantumState, QueryNetwork, Stage,
};
use qlearn::{Concept, ConceptClass, Distribution};

fn random_concept(n: usize, rng: &mut impl Rng) -> Concept {
    Concept::new(n, (0..1 << n).map(|_| rng.gen()).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn qmq_is_an_involution(seed in any::<u64>(), m in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..m);
        let c = random_concept(n, &mut rng);
        let original = random_state(m, &mut rng).unwrap();
        let mut state = original.clone();
        apply_qmq(&mut state, &c).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-12);
        apply_qmq(&mut state, &c).unwrap();
        prop_assert!(euclidean_distance(&state, &original).unwrap() < 1e-12);
    }

    #[test]
    fn networks_preserve_norm(seed in any::<u64>(), t in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(3, 2, t, UnitaryKind::Haar, &mut rng).unwrap();
        let c = random_concept(2, &mut rng);
        let state = final_state(&net, OracleInstance::Qmq(&c)).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn total_variation_at_most_four_euclidean(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_state(4, &mut rng).unwrap();
        let psi = random_state(4, &mut rng).unwrap();
        let dist = euclidean_distance(&phi, &psi).unwrap();
        for subset in 1u32..16 {
            let qubits: Vec<usize> = (0..4).filter(|q| subset >> q & 1 == 1).collect();
            let p = measure_distribution(&phi, &qubits).unwrap();
            let q = measure_distribution(&psi, &qubits).unwrap();
            prop_assert!(total_variation(&p.probs, &q.probs).unwrap() <= 4.0 * dist + 1e-12);
        }
    }

    #[test]
    fn interpolation_reproduces_every_value(values in prop::collection::vec(-1.0f64..1.0, 16)) {
        let p = MultilinearPolynomial::interpolate(4, &values).unwrap();
        prop_assert!(p.residual(&values) < 1e-12);
        for (mask, v) in values.iter().enumerate() {
            prop_assert!((p.evaluate_mask(mask) - v).abs() < 1e-12);
        }
    }

    #[test]
    fn acceptance_degree_at_most_twice_queries(seed in any::<u64>(), t in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(3, 1, t, UnitaryKind::Haar, &mut rng).unwrap();
        let outcomes = OutcomeSet::new(vec![0], vec![1]);
        let p = acceptance_polynomial(&net, &outcomes).unwrap();
        prop_assert!(p.max_coefficient_above(2 * t) < 1e-9);
    }

    #[test]
    fn agreeing_overrides_leave_state_unchanged(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(3, 2, 2, UnitaryKind::Haar, &mut rng).unwrap();
        let c = random_concept(2, &mut rng);
        let mut table = OverrideTable::new(2);
        for x in 0..4 {
            table.insert(rng.gen_range(0..2), x, c.eval(x)).unwrap();
        }
        let honest = final_state(&net, OracleInstance::Qmq(&c)).unwrap();
        let overridden = run_with_overrides(&net, &c, &table).unwrap();
        prop_assert!(euclidean_distance(&honest, &overridden).unwrap() < 1e-12);
    }

    #[test]
    fn query_magnitudes_sum_to_query_count(seed in any::<u64>(), t in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(3, 2, t, UnitaryKind::Haar, &mut rng).unwrap();
        let c = random_concept(2, &mut rng);
        let q = query_magnitudes(&net, &c).unwrap();
        prop_assert!((q.total() - t as f64).abs() < 1e-9);
    }

    /// Overriding a set of total query mass `Σq` moves the final state by at
    /// most `2·√(T·Σq)`.
    #[test]
    fn hybrid_distance_within_twice_root_mass(seed in any::<u64>(), t in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(3, 2, t, UnitaryKind::Haar, &mut rng).unwrap();
        let c = random_concept(2, &mut rng);
        let q = query_magnitudes(&net, &c).unwrap();
        let mut table = OverrideTable::new(t);
        for step in 0..t {
            for x in 0..4 {
                if rng.gen_bool(0.3) {
                    table.insert(step, x, rng.gen()).unwrap();
                }
            }
        }
        let honest = final_state(&net, OracleInstance::Qmq(&c)).unwrap();
        let changed = run_with_overrides(&net, &c, &table).unwrap();
        let bound = 2.0 * (t as f64 * q.mass_of(&table)).sqrt();
        prop_assert!(euclidean_distance(&honest, &changed).unwrap() <= bound + 1e-9);
    }
}

#[test]
fn orthogonal_basis_states() {
    let a = QuantumState::basis(3, 0).unwrap();
    let b = QuantumState::basis(3, 5).unwrap();
    assert!((euclidean_distance(&a, &b).unwrap() - 2f64.sqrt()).abs() < 1e-15);
    let p = measure_distribution(&a, &[0, 1, 2]).unwrap();
    let q = measure_distribution(&b, &[0, 1, 2]).unwrap();
    assert!((total_variation(&p.probs, &q.probs).unwrap() - 2.0).abs() < 1e-15);
}

#[test]
fn qmq_flips_answer_bit_only_where_concept_is_one() {
    let c = Concept::point(2, 2).unwrap();
    for x in 0..4 {
        for b in 0..2 {
            let z = (x << 3) | (b << 2);
            let mut s = QuantumState::basis(5, z).unwrap();
            apply_qmq(&mut s, &c).unwrap();
            let expected = if c.eval(x) { z ^ 0b100 } else { z };
            assert!((s.amplitudes()[expected].re - 1.0).abs() < 1e-15);
        }
    }
}

#[test]
fn deutsch_separates_constant_from_balanced() {
    let net = QueryNetwork::new(
        2,
        1,
        vec![
            Stage::Gates(vec![Gate::X(1), Gate::H(0), Gate::H(1)]),
            Stage::Oracle,
            Stage::Gates(vec![Gate::H(0)]),
        ],
        Decode::parity(1),
    )
    .unwrap();
    for mask in 0..4u64 {
        let c = Concept::from_mask(1, mask).unwrap();
        let state = final_state(&net, OracleInstance::Qmq(&c)).unwrap();
        let p1 = measure_distribution(&state, &[0]).unwrap().prob(1);
        let balanced = c.eval(0) != c.eval(1);
        assert!((p1 - if balanced { 1.0 } else { 0.0 }).abs() < 1e-12, "mask {mask}");
    }
}

#[test]
fn zero_query_network_has_constant_acceptance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let net = random_network(3, 2, 0, UnitaryKind::Haar, &mut rng).unwrap();
    let p = acceptance_polynomial(&net, &OutcomeSet::new(vec![0, 2], vec![1, 2])).unwrap();
    assert_eq!(p.degree(1e-9), 0);
}

#[test]
fn qex_state_matches_distribution() {
    let c = Concept::from_hex(3, "96").unwrap();
    let weights = vec![0.05, 0.1, 0.15, 0.2, 0.05, 0.25, 0.1, 0.1];
    let dist = Distribution::new(3, weights.clone()).unwrap();
    let state = prepare_qex(&c, &dist, 5).unwrap();
    let marginal = measure_distribution(&state, &[0, 1, 2, 3]).unwrap();
    for (x, &w) in weights.iter().enumerate() {
        let label = usize::from(c.eval(x));
        assert!((marginal.prob(2 * x + label) - w).abs() < 1e-12);
        assert!(marginal.prob(2 * x + 1 - label) < 1e-15);
    }

    let shots = 20_000;
    let samples = marginal.sample(9, shots);
    for (x, &p) in weights.iter().enumerate() {
        let v = 2 * x + usize::from(c.eval(x));
        let hits = samples.iter().filter(|&&s| s == v).count() as f64;
        let sigma = (shots as f64 * p * (1.0 - p)).sqrt();
        assert!((hits - shots as f64 * p).abs() <= 4.0 * sigma, "x = {x}");
    }
}

#[test]
fn qex_cannot_follow_other_stages() {
    let stages = vec![Stage::Gates(vec![Gate::H(0)]), Stage::Qex];
    assert!(QueryNetwork::new(3, 2, stages, Decode::parity(2)).is_err());
    let mixed = vec![Stage::Qex, Stage::Oracle];
    assert!(QueryNetwork::new(3, 2, mixed, Decode::parity(2)).is_err());
}

#[test]
fn non_unitary_stage_is_rejected() {
    let mut data = vec![Complex64::new(0.0, 0.0); 16];
    data[0] = Complex64::new(2.0, 0.0);
    assert!(DenseUnitary::from_row_major(4, data).rejected());
}

trait NonUnitary {
    fn rejected(self) -> bool;
}

impl NonUnitary for qlearn::Result<DenseUnitary> {
    fn rejected(self) -> bool {
        match self {
            Err(_) => true,
            Ok(u) => {
                let net = QueryNetwork::new(2, 1, vec![Stage::Dense(u)], Decode::parity(1));
                matches!(net, Err(qlearn::Error::NonUnitary { .. }))
            }
        }
    }
}

/// One query, `φ₀ = √(1−δ)|1⟩|0⟩ + √δ|0⟩|−⟩`, and the answer at `x = 0`
/// flipped. The overridden pair carries mass `δ`, so the budget `ε²/T` is
/// met with `ε = √δ`, yet the final states are exactly `2ε` apart.
#[test]
fn single_override_reaches_twice_epsilon() {
    let delta: f64 = 0.01;
    let epsilon = delta.sqrt();
    let (c, s) = ((1.0 - delta).sqrt(), delta.sqrt());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let v1 = [0.0, 0.0, 1.0, 0.0];
    let v2 = [r, -r, 0.0, 0.0];
    let mut u = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in 0..4 {
            let id = if i == j { 1.0 } else { 0.0 };
            let plane = v1[i] * v1[j] + v2[i] * v2[j];
            let rot = v2[i] * v1[j] - v1[i] * v2[j];
            u[i * 4 + j] = Complex64::new(id + (c - 1.0) * plane + s * rot, 0.0);
        }
    }
    let net = QueryNetwork::new(
        2,
        1,
        vec![
            Stage::Gates(vec![Gate::X(0)]),
            Stage::Dense(DenseUnitary::from_row_major(4, u).unwrap()),
            Stage::Oracle,
        ],
        Decode::parity(1),
    )
    .unwrap();
    let zero = Concept::zero(1).unwrap();
    let q = query_magnitudes(&net, &zero).unwrap();
    assert!((q.q[0][0] - delta).abs() < 1e-12);

    let mut table = OverrideTable::new(1);
    table.insert(0, 0, true).unwrap();
    assert!(q.mass_of(&table) <= epsilon * epsilon + 1e-12);
    let honest = final_state(&net, OracleInstance::Qmq(&zero)).unwrap();
    let changed = run_with_overrides(&net, &zero, &table).unwrap();
    let d = euclidean_distance(&honest, &changed).unwrap();
    assert!((d - 2.0 * epsilon).abs() < 1e-12, "distance {d}");
}

/// Number of witness concepts whose final state lies more than `ε` from the
/// typical concept's, against `T²·|C′|·γ̂/ε²`.
#[test]
fn distinguished_concepts_within_bound() {
    let class = ConceptClass::points_plus_zero(3).unwrap();
    let mut first = vec![Gate::X(3), Gate::H(3)];
    first.extend((0..3).map(Gate::H));
    let net = QueryNetwork::new(4, 3, vec![Stage::Gates(first), Stage::Oracle], Decode::parity(3))
        .unwrap();
    let count = distinguished_count(&net, &class, 0.5).unwrap();
    assert!(count.heavy as f64 <= count.bound, "{count:?}");
    assert!(count.far as f64 <= count.bound, "{count:?}");
}

#[test]
fn distinguished_count_respects_heavy_bound_on_random_networks() {
    let class = ConceptClass::points_plus_zero(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for t in 1..=3 {
        let net = random_network(3, 2, t, UnitaryKind::Haar, &mut rng).unwrap();
        let count = distinguished_count(&net, &class, 0.3).unwrap();
        assert!(count.heavy as f64 <= count.bound, "{count:?}");
    }
}
