use num_complex::Complex64;

use super::gates::{DenseUnitary, Gate};
use crate::error::{Error, Result};

/// Norm and unitarity tolerance used throughout the simulator.
pub const NORM_TOLERANCE: f64 = 1e-9;

const DEFAULT_MAX_QUBITS: usize = 12;

/// Register size limit; `QLEARN_MAX_QUBITS` overrides the default of 12.
pub fn max_qubits() -> usize {
    std::env::var("QLEARN_MAX_QUBITS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&m| (1..=26).contains(&m))
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

pub(crate) fn check_qubits(m: usize) -> Result<()> {
    let limit = max_qubits();
    if m == 0 {
        return Err(Error::invalid("a register needs at least one qubit"));
    }
    if m > limit {
        return Err(Error::CapExceeded {
            what: "qubit count",
            limit,
            got: m,
        });
    }
    Ok(())
}

/// Dense pure state on `m` qubits. Qubit 0 is the most significant bit of
/// the basis index, so the first `n` qubits read as the big-endian point
/// index of a query string.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    m: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// `|0^m⟩`.
    pub fn zero(m: usize) -> Result<Self> {
        Self::basis(m, 0)
    }

    pub fn basis(m: usize, z: usize) -> Result<Self> {
        check_qubits(m)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << m];
        *amps
            .get_mut(z)
            .ok_or_else(|| Error::invalid(format!("basis index {z} outside 2^{m}")))? =
            Complex64::new(1.0, 0.0);
        Ok(Self { m, amps })
    }

    /// Wraps an amplitude vector; its length must be `2^m` and its norm 1.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::invalid(format!("{len} amplitudes is not 2^m for m >= 1")));
        }
        let m = len.trailing_zeros() as usize;
        check_qubits(m)?;
        let state = Self { m, amps };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::invalid(format!("state norm {norm} is not 1")));
        }
        Ok(state)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Bit mask of qubit `q` within a basis index.
    #[inline]
    pub(crate) fn qubit_mask(&self, q: usize) -> usize {
        1 << (self.m - 1 - q)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.check(self.m)?;
        match *gate {
            Gate::H(q) => {
                let bit = self.qubit_mask(q);
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for z in 0..self.amps.len() {
                    if z & bit == 0 {
                        let (a, b) = (self.amps[z], self.amps[z | bit]);
                        self.amps[z] = (a + b) * s;
                        self.amps[z | bit] = (a - b) * s;
                    }
                }
            }
            Gate::X(q) => {
                let bit = self.qubit_mask(q);
                for z in 0..self.amps.len() {
                    if z & bit == 0 {
                        self.amps.swap(z, z | bit);
                    }
                }
            }
            Gate::Z(q) => self.apply_phase(q, Complex64::new(-1.0, 0.0)),
            Gate::Phase { qubit, theta } => {
                self.apply_phase(qubit, Complex64::from_polar(1.0, theta))
            }
            Gate::Cnot { control, target } => {
                let (cb, tb) = (self.qubit_mask(control), self.qubit_mask(target));
                for z in 0..self.amps.len() {
                    if z & cb != 0 && z & tb == 0 {
                        self.amps.swap(z, z | tb);
                    }
                }
            }
        }
        Ok(())
    }

    fn apply_phase(&mut self, q: usize, phase: Complex64) {
        let bit = self.qubit_mask(q);
        for (z, a) in self.amps.iter_mut().enumerate() {
            if z & bit != 0 {
                *a *= phase;
            }
        }
    }

    pub fn apply_dense(&mut self, u: &DenseUnitary) -> Result<()> {
        if u.dim() != self.amps.len() {
            return Err(Error::DimensionMismatch {
                expected: self.amps.len(),
                got: u.dim(),
            });
        }
        self.amps = u.mul_vec(&self.amps);
        Ok(())
    }
}
