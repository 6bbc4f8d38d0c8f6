//! Seeded generators for random states, unitaries and query networks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use super::gates::DenseUnitary;
use super::network::{Decode, QueryNetwork, Stage};
use super::state::QuantumState;
use crate::error::Result;

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A uniformly random unit vector on `m` qubits.
pub fn random_state(m: usize, rng: &mut impl Rng) -> Result<QuantumState> {
    let mut amps: Vec<Complex64> = (0..1usize << m).map(|_| gaussian(rng)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    QuantumState::from_amplitudes(amps)
}

fn to_dense(mat: &DMatrix<Complex64>) -> DenseUnitary {
    let dim = mat.nrows();
    let data = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .map(|(i, j)| mat[(i, j)])
        .collect();
    DenseUnitary::from_row_major(dim, data).expect("square matrix")
}

/// A Haar-random unitary: QR of a complex Gaussian matrix with the phases
/// of `R`'s diagonal folded back into `Q`.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> DenseUnitary {
    let g = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    to_dense(&q)
}

/// A unitary close to a phased permutation: `P·(I − iK)(I + iK)⁻¹` with
/// `K` a random Hermitian matrix of entry scale `spread`. Each basis state
/// maps mostly onto a single basis state, so query magnitudes stay
/// concentrated instead of spreading evenly over all strings.
pub fn near_permutation_unitary(dim: usize, spread: f64, rng: &mut impl Rng) -> DenseUnitary {
    let mut k = DMatrix::from_fn(dim, dim, |_, _| gaussian(rng) * spread);
    k = (&k + k.adjoint()) * Complex64::new(0.5, 0.0);
    let i_k = &k * Complex64::new(0.0, 1.0);
    let eye = DMatrix::<Complex64>::identity(dim, dim);
    let cayley = (&eye - &i_k)
        * (&eye + &i_k)
            .try_inverse()
            .expect("I + iK is invertible for Hermitian K");
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut p = DMatrix::<Complex64>::zeros(dim, dim);
    for (j, &pj) in perm.iter().enumerate() {
        p[(pj, j)] = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    }
    to_dense(&(p * cayley))
}

/// How the unitary stages of a random network are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UnitaryKind {
    Haar,
    NearPermutation { spread: f64 },
}

/// A random network `U_0, O_1, U_1, …, O_T, U_T` on `m` qubits with parity
/// decoding of the query register.
pub fn random_network(
    m: usize,
    n: usize,
    t: usize,
    kind: UnitaryKind,
    rng: &mut impl Rng,
) -> Result<QueryNetwork> {
    let dim = 1usize << m;
    let mut draw = || match kind {
        UnitaryKind::Haar => random_unitary(dim, rng),
        UnitaryKind::NearPermutation { spread } => near_permutation_unitary(dim, spread, rng),
    };
    let mut stages = vec![Stage::Dense(draw())];
    for _ in 0..t {
        stages.push(Stage::Oracle);
        stages.push(Stage::Dense(draw()));
    }
    QueryNetwork::new(m, n, stages, Decode::parity(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in [2, 4, 8, 16] {
            assert!(random_unitary(dim, &mut rng).unitarity_deviation() < 1e-12);
            assert!(near_permutation_unitary(dim, 0.1, &mut rng).unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn near_permutation_concentrates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let u = near_permutation_unitary(8, 0.05, &mut rng);
        for j in 0..8 {
            let biggest = (0..8).map(|i| u.get(i, j).norm_sqr()).fold(0.0, f64::max);
            assert!(biggest > 0.8, "{biggest}");
        }
    }

    #[test]
    fn random_states_are_normalized_and_seeded() {
        let a = random_state(3, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = random_state(3, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(a, b);
        assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn networks_have_requested_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let net = random_network(3, 2, 2, UnitaryKind::Haar, &mut rng).unwrap();
        assert_eq!(net.query_count(), 2);
        assert_eq!(net.stages().len(), 5);
    }
}
