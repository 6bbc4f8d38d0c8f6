use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::NORM_TOLERANCE;
use crate::error::{Error, Result};

/// Dense stages are limited to 10 qubits (a 1024 x 1024 matrix).
pub const MAX_DENSE_QUBITS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    /// `diag(1, e^{iθ})`.
    Phase { qubit: usize, theta: f64 },
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub(crate) fn check(&self, m: usize) -> Result<()> {
        let out = |q: usize| q >= m;
        let bad = match *self {
            Gate::H(q) | Gate::X(q) | Gate::Z(q) => out(q),
            Gate::Phase { qubit, theta } => out(qubit) || !theta.is_finite(),
            Gate::Cnot { control, target } => out(control) || out(target) || control == target,
        };
        if bad {
            return Err(Error::invalid(format!("gate {self:?} is invalid on {m} qubits")));
        }
        Ok(())
    }
}

/// A square complex matrix, row-major. Serialized as rows of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct DenseUnitary {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseUnitary {
    /// Builds from row-major entries without checking unitarity.
    pub fn from_row_major(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self · other`.
    pub fn compose(&self, other: &DenseUnitary) -> Result<DenseUnitary> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(DenseUnitary { dim: d, data })
    }

    /// Largest entry of `|U·U† − I|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let dot: Complex64 = (0..d)
                    .map(|k| self.data[i * d + k] * self.data[j * d + k].conj())
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_deviation() <= NORM_TOLERANCE
    }
}

impl TryFrom<Vec<Vec<[f64; 2]>>> for DenseUnitary {
    type Error = Error;

    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse("dense matrix must be square".into()));
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        Self::from_row_major(dim, data)
    }
}

impl From<DenseUnitary> for Vec<Vec<[f64; 2]>> {
    fn from(u: DenseUnitary) -> Self {
        u.data
            .chunks(u.dim)
            .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
            .collect()
    }
}
