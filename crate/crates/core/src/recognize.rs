//! Membership tests for balanced 3-cycle matrices, weak sum matrices and
//! symmetric matrices, each returning a certificate or a witness.
//!
//! Comparisons use `tol * scale` with `scale = max(1, max |A|)`.

use serde::Serialize;

use crate::model::{build_sum_matrix, SquareMatrix};
use crate::tolerance_scale;

/// A triple `i < j < k` whose two cyclic orientations carry different
/// weights. `lhs = A[i][j] + A[j][k] + A[k][i]`,
/// `rhs = A[j][i] + A[k][j] + A[i][k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BalanceWitness {
    #[serde(serialize_with = "crate::one_based::index")]
    pub i: usize,
    #[serde(serialize_with = "crate::one_based::index")]
    pub j: usize,
    #[serde(serialize_with = "crate::one_based::index")]
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
}

impl BalanceWitness {
    pub(crate) fn of_triple(a: &SquareMatrix, i: usize, j: usize, k: usize) -> Self {
        let (lhs, rhs) = cycle_weights(a, i, j, k);
        Self { i, j, k, lhs, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum BalanceVerdict {
    /// `max_residual` is the largest `|lhs - rhs|` over all triples.
    Balanced {
        max_residual: f64,
    },
    Unbalanced {
        witness: BalanceWitness,
    },
}

impl BalanceVerdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceVerdict::Balanced { .. })
    }
}

#[inline]
fn cycle_weights(a: &SquareMatrix, i: usize, j: usize, k: usize) -> (f64, f64) {
    (a[(i, j)] + a[(j, k)] + a[(k, i)], a[(j, i)] + a[(k, j)] + a[(i, k)])
}

/// Checks every triple `i < j < k` for equal clockwise and counter-clockwise
/// weight. Reports the lexicographically first violation.
pub fn check_balanced_3cycle(a: &SquareMatrix, tol: f64) -> BalanceVerdict {
    let n = a.order();
    let threshold = tol * tolerance_scale(&[a]);
    let mut max_residual = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (lhs, rhs) = cycle_weights(a, i, j, k);
                let r = (lhs - rhs).abs();
                if r > threshold {
                    return BalanceVerdict::Unbalanced {
                        witness: BalanceWitness { i, j, k, lhs, rhs },
                    };
                }
                max_residual = max_residual.max(r);
            }
        }
    }
    BalanceVerdict::Balanced { max_residual }
}

/// Parameters of a sum matrix agreeing with the certified matrix off the
/// diagonal: `A[i][j] = alpha[i] + beta[j]` for `i != j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeakSumCertificate {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl WeakSumCertificate {
    pub fn to_sum_matrix(&self) -> SquareMatrix {
        build_sum_matrix(&self.alpha, &self.beta).expect("certificate vectors have equal length")
    }

    /// Largest off-diagonal `|A[i][j] - alpha[i] - beta[j]|`, with its position.
    pub fn worst_residual(&self, a: &SquareMatrix) -> OffDiagonalResidual {
        let n = a.order();
        let mut worst = OffDiagonalResidual {
            row: 0,
            col: 0,
            residual: 0.0,
        };
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let r = (a[(i, j)] - self.alpha[i] - self.beta[j]).abs();
                if r > worst.residual {
                    worst = OffDiagonalResidual {
                        row: i,
                        col: j,
                        residual: r,
                    };
                }
            }
        }
        worst
    }

    /// Tour length `sum_i (alpha[i] + beta[i])` shared by every Hamiltonian
    /// cycle: each city is left once and entered once.
    pub fn tour_value(&self) -> f64 {
        self.alpha.iter().zip(&self.beta).map(|(a, b)| a + b).sum()
    }
}

/// An off-diagonal entry and its distance from the anchored sum-matrix fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OffDiagonalResidual {
    #[serde(serialize_with = "crate::one_based::index")]
    pub row: usize,
    #[serde(serialize_with = "crate::one_based::index")]
    pub col: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WeakSumVerdict {
    WeakSum { certificate: WeakSumCertificate },
    NotWeakSum { witness: OffDiagonalResidual },
}

impl WeakSumVerdict {
    pub fn is_weak_sum(&self) -> bool {
        matches!(self, WeakSumVerdict::WeakSum { .. })
    }
}

/// Decides whether `a` is a sum matrix up to its diagonal.
///
/// For `n >= 3` the off-diagonal system `a_ij = alpha_i + beta_j` has a
/// one-dimensional solution set when consistent (shift `alpha + c`,
/// `beta - c`), so fixing `alpha[0] = 0` leaves one candidate:
/// `beta[j] = a[0][j]` for `j != 0`, `alpha[i] = a[i][j*] - beta[j*]` with
/// `j*` the smallest column outside `{0, i}`, and `beta[0] = a[1][0] -
/// alpha[1]`. The candidate is then checked against every off-diagonal
/// entry; the witness on failure is the worst entry.
///
/// Orders 1 and 2 are always weak sum. The certificate there uses
/// `alpha = 0` and `beta[j] = a[i][j]` for the other row `i` (the lone
/// entry for `n = 1`), which keeps [`WeakSumCertificate::tour_value`]
/// consistent with the Hamiltonian objective.
pub fn recognize_weak_sum(a: &SquareMatrix, tol: f64) -> WeakSumVerdict {
    let n = a.order();
    let certificate = match n {
        1 => WeakSumCertificate {
            alpha: vec![0.0],
            beta: vec![a[(0, 0)]],
        },
        2 => WeakSumCertificate {
            alpha: vec![0.0, 0.0],
            beta: vec![a[(1, 0)], a[(0, 1)]],
        },
        _ => {
            let mut alpha = vec![0.0; n];
            let mut beta = vec![0.0; n];
            for j in 1..n {
                beta[j] = a[(0, j)];
            }
            for (i, alpha_i) in alpha.iter_mut().enumerate().skip(1) {
                let anchor = if i == 1 { 2 } else { 1 };
                *alpha_i = a[(i, anchor)] - beta[anchor];
            }
            beta[0] = a[(1, 0)] - alpha[1];
            WeakSumCertificate { alpha, beta }
        }
    };
    let worst = certificate.worst_residual(a);
    if worst.residual > tol * tolerance_scale(&[a]) {
        WeakSumVerdict::NotWeakSum { witness: worst }
    } else {
        WeakSumVerdict::WeakSum { certificate }
    }
}

pub fn is_symmetric(a: &SquareMatrix, tol: f64) -> bool {
    let n = a.order();
    let threshold = tol * tolerance_scale(&[a]);
    (0..n).all(|i| (i + 1..n).all(|j| (a[(i, j)] - a[(j, i)]).abs() <= threshold))
}
