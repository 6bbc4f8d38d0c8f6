use nalgebra::DMatrix;
use serde::Serialize;

use crate::concept::ConceptClass;
use crate::error::{Error, Result};
use crate::learners::certify_learner;
use crate::quantum::QueryNetwork;

/// Largest matrix accepted by [`diagonal_dominance_full_rank`].
pub const MAX_MATRIX_SIZE: usize = 64;

/// Pivot magnitude below which a column counts as dependent.
pub const RANK_THRESHOLD: f64 = 1e-9;

/// `L[i][j] = Pr[the network outputs concept i | oracle c_j]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuccessMatrix {
    /// Hex tables of the class, in class order.
    pub labels: Vec<String>,
    pub entries: Vec<Vec<f64>>,
}

impl SuccessMatrix {
    /// `Lᵀ` is strictly diagonally dominant when every oracle's correct
    /// output outweighs all its wrong outputs within the class combined.
    pub fn transpose_dominant(&self) -> bool {
        self.failing_columns().is_empty()
    }

    /// Oracles `j` with `L[j][j] ≤ Σ_{i≠j} L[i][j]`.
    pub fn failing_columns(&self) -> Vec<usize> {
        let k = self.entries.len();
        (0..k)
            .filter(|&j| {
                let off: f64 = (0..k).filter(|&i| i != j).map(|i| self.entries[i][j].abs()).sum();
                self.entries[j][j].abs() <= off
            })
            .collect()
    }

    /// Each column lists probabilities of disjoint events.
    pub fn column_sums(&self) -> Vec<f64> {
        let k = self.entries.len();
        (0..k)
            .map(|j| (0..k).map(|i| self.entries[i][j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Vec<Vec<f64>> {
        let k = self.entries.len();
        (0..k)
            .map(|i| (0..k).map(|j| self.entries[j][i]).collect())
            .collect()
    }
}

pub fn success_matrix(net: &QueryNetwork, class: &ConceptClass) -> Result<SuccessMatrix> {
    let cert = certify_learner(net, class, 0.0)?;
    let labels: Vec<String> = class.iter().map(|c| c.to_hex()).collect();
    let k = labels.len();
    let mut entries = vec![vec![0.0; k]; k];
    for (j, target) in cert.targets.iter().enumerate() {
        for (i, label) in labels.iter().enumerate() {
            entries[i][j] = target.hypotheses.get(label).copied().unwrap_or(0.0);
        }
    }
    Ok(SuccessMatrix { labels, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Disk {
    pub center: f64,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceReport {
    /// `|a_ii| > Σ_{j≠i} |a_ij|` on every row.
    pub dominant: bool,
    pub rank: usize,
    pub full_rank: bool,
    pub disks: Vec<Disk>,
    /// `(re, im)` pairs.
    pub eigenvalues: Vec<(f64, f64)>,
    /// Largest distance from an eigenvalue to the union of the disks.
    pub disk_excess: f64,
}

impl DominanceReport {
    /// Dominance implies full rank, and every eigenvalue sits in the disks
    /// up to `tol`.
    pub fn consistent(&self, tol: f64) -> bool {
        (!self.dominant || self.full_rank) && self.disk_excess <= tol
    }
}

/// Rank by Gaussian elimination with full pivoting.
pub fn numerical_rank(a: &[Vec<f64>], threshold: f64) -> usize {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    while rank < rows.min(cols) {
        let (mut pr, mut pc, mut best) = (rank, rank, 0.0);
        for (i, row) in m.iter().enumerate().skip(rank) {
            for (j, v) in row.iter().enumerate().skip(rank) {
                if v.abs() > best {
                    (pr, pc, best) = (i, j, v.abs());
                }
            }
        }
        if best <= threshold {
            break;
        }
        m.swap(rank, pr);
        for row in m.iter_mut() {
            row.swap(rank, pc);
        }
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[rank] / pivot_row[rank];
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(rank) {
                *v -= f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Gershgorin disks, eigenvalues, strict diagonal dominance and rank of a
/// square real matrix.
pub fn diagonal_dominance_full_rank(a: &[Vec<f64>]) -> Result<DominanceReport> {
    let size = a.len();
    if size == 0 || a.iter().any(|row| row.len() != size) {
        return Err(Error::invalid("matrix must be square and non-empty"));
    }
    if size > MAX_MATRIX_SIZE {
        return Err(Error::CapExceeded {
            what: "matrix size",
            limit: MAX_MATRIX_SIZE,
            got: size,
        });
    }
    let disks: Vec<Disk> = a
        .iter()
        .enumerate()
        .map(|(i, row)| Disk {
            center: row[i],
            radius: row
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| v.abs())
                .sum(),
        })
        .collect();
    let dominant = disks.iter().all(|d| d.center.abs() > d.radius);
    let matrix = DMatrix::from_fn(size, size, |i, j| a[i][j]);
    let eigenvalues: Vec<(f64, f64)> = matrix
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    let disk_excess = eigenvalues
        .iter()
        .map(|&(re, im)| {
            disks
                .iter()
                .map(|d| ((re - d.center).hypot(im) - d.radius).max(0.0))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let rank = numerical_rank(a, RANK_THRESHOLD);
    Ok(DominanceReport {
        dominant,
        rank,
        full_rank: rank == size,
        disks,
        eigenvalues,
        disk_excess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::build_parity_learner;
    use crate::quantum::Decode;

    #[test]
    fn identity() {
        let r = diagonal_dominance_full_rank(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(r.dominant && r.full_rank);
        assert_eq!(r.disks, vec![Disk { center: 1.0, radius: 0.0 }; 2]);
    }

    #[test]
    fn three_one_one_three() {
        let r = diagonal_dominance_full_rank(&[vec![3.0, 1.0], vec![1.0, 3.0]]).unwrap();
        assert!(r.dominant && r.full_rank);
        let mut re: Vec<f64> = r.eigenvalues.iter().map(|e| e.0).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] - 2.0).abs() < 1e-12 && (re[1] - 4.0).abs() < 1e-12);
        assert!(r.consistent(1e-6));
    }

    #[test]
    fn all_ones_is_singular() {
        let r = diagonal_dominance_full_rank(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(!r.dominant);
        assert_eq!(r.rank, 1);
        assert!(diagonal_dominance_full_rank(&[vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn parity_learner_matrix_is_identity() {
        let class = ConceptClass::parity_class(2).unwrap();
        let l = success_matrix(&build_parity_learner(2).unwrap(), &class).unwrap();
        for (i, row) in l.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((v - e).abs() < 1e-9);
            }
        }
        assert!(l.transpose_dominant());
    }

    #[test]
    fn constant_output_fails_a_column() {
        let class = ConceptClass::parity_class(1).unwrap();
        let net = QueryNetwork::new(2, 1, vec![], Decode::constant(&class.concepts()[0])).unwrap();
        let l = success_matrix(&net, &class).unwrap();
        assert_eq!(l.failing_columns(), vec![1]);
    }
}
