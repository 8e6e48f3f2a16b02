//! Dense O(n^3) linear assignment by shortest augmenting paths with dual
//! potentials.

use serde::Serialize;

use crate::model::{Permutation, SquareMatrix};

/// A permutation and its objective value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssignmentSolution {
    pub permutation: Permutation,
    pub value: f64,
}

/// Row potentials `u` and column potentials `v` with
/// `u[i] + v[j] <= C[i][j]` everywhere and equality on assigned pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualCertificate {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl DualCertificate {
    /// Largest violation of `u[i] + v[j] <= C[i][j]` (0 when feasible).
    pub fn feasibility_violation(&self, c: &SquareMatrix) -> f64 {
        let n = c.order();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max(self.u[i] + self.v[j] - c[(i, j)]);
            }
        }
        worst
    }

    /// Largest `|u[i] + v[p(i)] - C[i][p(i)]|` over assigned pairs.
    pub fn slackness_violation(&self, c: &SquareMatrix, p: &Permutation) -> f64 {
        p.images()
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.u[i] + self.v[j] - c[(i, j)]).abs())
            .fold(0.0, f64::max)
    }

    /// Dual objective `sum u + sum v`, a lower bound on every assignment.
    pub fn bound(&self) -> f64 {
        self.u.iter().sum::<f64>() + self.v.iter().sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LapSolution {
    #[serde(flatten)]
    pub assignment: AssignmentSolution,
    pub duals: DualCertificate,
}

/// Minimum-cost assignment of rows to columns.
///
/// Rows are inserted in increasing order; each insertion grows a shortest
/// path tree over columns (ties go to the lowest column index) and
/// augments along it. Negative costs need no preprocessing.
pub fn solve_lap(c: &SquareMatrix) -> LapSolution {
    let n = c.order();
    // 1-based internally; index 0 is the virtual root column.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0usize;
        let mut min_slack = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let i0 = owner[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = c[(i0 - 1, j - 1)] - u[i0] - v[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = col0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    col1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            owner[col0] = owner[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut images = vec![0usize; n];
    for j in 1..=n {
        images[owner[j] - 1] = j - 1;
    }
    let permutation = Permutation::from_slice_unchecked(&images);
    let value = images.iter().enumerate().map(|(i, &j)| c[(i, j)]).sum();
    LapSolution {
        assignment: AssignmentSolution { permutation, value },
        duals: DualCertificate {
            u: u[1..].to_vec(),
            v: v[1..].to_vec(),
        },
    }
}
