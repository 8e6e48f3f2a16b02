//! Splitting a balanced 3-cycle matrix into a symmetric matrix plus a
//! positive combination of directed cut matrices.
//!
//! The construction first removes the symmetric part `min(a_ij, a_ji)`,
//! leaving a nonnegative residual `R` with `R[i][j] * R[j][i] = 0`. It then
//! repeats:
//!
//! 1. take the largest residual entry `R[r][s]` (first in row-major order);
//! 2. let `I = { i : R[r][i] < R[r][s] / 2 }`, so `r` is in `I` and `s` is not;
//! 3. every crossing entry `R[i][j]`, `i` in `I`, `j` outside, is positive
//!    when `R` is balanced, so subtract `lambda = min crossing entry` times
//!    the cut matrix of `I`.
//!
//! Each round zeroes at least one more off-diagonal entry, so at most
//! `n^2 - n` rounds run. A zero crossing entry proves the input unbalanced.

use serde::Serialize;

use crate::error::{Error, NotBalanced, Result};
use crate::model::{build_cut_matrix, IndexSubset, SquareMatrix};
use crate::recognize::{check_balanced_3cycle, BalanceVerdict, BalanceWitness};
use crate::tolerance_scale;

/// One cut term `coefficient * cut(subset)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutTerm {
    pub coefficient: f64,
    pub subset: IndexSubset,
}

/// `symmetric_part + sum coefficient_t * cut(subset_t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutDecomposition {
    pub symmetric_part: SquareMatrix,
    pub terms: Vec<CutTerm>,
}

/// Record of one extraction round.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutStep {
    /// Position of the maximum residual entry.
    #[serde(serialize_with = "crate::one_based::pair")]
    pub pivot: (usize, usize),
    pub subset: IndexSubset,
    /// Position of the smallest crossing entry.
    #[serde(serialize_with = "crate::one_based::pair")]
    pub min_crossing: (usize, usize),
    pub lambda: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DecompositionTrace {
    pub steps: Vec<CutStep>,
}

/// Result of one extraction round on a residual.
#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    /// The residual is zero within tolerance.
    Done,
    Step {
        step: CutStep,
        next: SquareMatrix,
    },
    /// Crossing entry `crossing` of the cut around `pivot` is zero, which a
    /// balanced residual rules out. `pivot.0`, `crossing.0` and
    /// `crossing.1` form an unbalanced triple.
    NotBalanced {
        pivot: (usize, usize),
        crossing: (usize, usize),
    },
}

/// `S[i][j] = min(A[i][j], A[j][i])` off the diagonal, `S[i][i] = A[i][i]`,
/// and `R = A - S`.
pub fn split_symmetric(a: &SquareMatrix) -> (SquareMatrix, SquareMatrix) {
    let n = a.order();
    let mut s = vec![0.0; n * n];
    let mut r = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let x = a[(i, j)];
            let m = if i == j { x } else { x.min(a[(j, i)]) };
            s[i * n + j] = m;
            r[i * n + j] = x - m;
        }
    }
    (SquareMatrix::from_parts(n, s), SquareMatrix::from_parts(n, r))
}

/// One extraction round, with tolerance scaled by the residual itself.
pub fn extract_cut_step(r: &SquareMatrix, tol: f64) -> Result<StepOutcome> {
    extract_step(r, tol * tolerance_scale(&[r]))
}

fn extract_step(r: &SquareMatrix, threshold: f64) -> Result<StepOutcome> {
    check_residual(r, threshold)?;
    let n = r.order();

    let mut pivot = (0, 0);
    let mut max = f64::NEG_INFINITY;
    for i in 0..n {
        for j in 0..n {
            if r[(i, j)] > max {
                max = r[(i, j)];
                pivot = (i, j);
            }
        }
    }
    if max <= threshold {
        return Ok(StepOutcome::Done);
    }

    let (row, _) = pivot;
    // Entries within the threshold of half the pivot count as ties and stay
    // outside; rounding would otherwise split entries that are equal in exact
    // arithmetic and expose a zero crossing.
    let half = 0.5 * max;
    let inside: Vec<bool> = (0..n)
        .map(|i| r[(row, i)] <= threshold || r[(row, i)] < half - threshold)
        .collect();

    let mut min_crossing = (0, 0);
    let mut lambda = f64::INFINITY;
    for i in (0..n).filter(|&i| inside[i]) {
        for j in (0..n).filter(|&j| !inside[j]) {
            let x = r[(i, j)];
            if x <= threshold {
                return Ok(StepOutcome::NotBalanced {
                    pivot,
                    crossing: (i, j),
                });
            }
            if x < lambda {
                lambda = x;
                min_crossing = (i, j);
            }
        }
    }

    let mut data = r.as_slice().to_vec();
    for i in (0..n).filter(|&i| inside[i]) {
        for j in (0..n).filter(|&j| !inside[j]) {
            data[i * n + j] -= lambda;
        }
    }
    for x in &mut data {
        if x.abs() <= threshold {
            *x = 0.0;
        }
    }
    Ok(StepOutcome::Step {
        step: CutStep {
            pivot,
            subset: IndexSubset::from_mask(&inside),
            min_crossing,
            lambda,
        },
        next: SquareMatrix::from_parts(n, data),
    })
}

fn check_residual(r: &SquareMatrix, threshold: f64) -> Result<()> {
    let n = r.order();
    for i in 0..n {
        if r[(i, i)].abs() > threshold {
            return Err(Error::MalformedResidual(format!(
                "diagonal entry ({0}, {0}) is {1}",
                i + 1,
                r[(i, i)]
            )));
        }
        for j in 0..n {
            if r[(i, j)] < -threshold {
                return Err(Error::MalformedResidual(format!(
                    "entry ({}, {}) is negative: {}",
                    i + 1,
                    j + 1,
                    r[(i, j)]
                )));
            }
            if i < j && r[(i, j)].min(r[(j, i)]) > threshold {
                return Err(Error::MalformedResidual(format!(
                    "entries ({0}, {1}) and ({1}, {0}) are both positive",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Decomposes `a` into a symmetric matrix plus positive cut terms, or shows
/// that it is not balanced.
///
/// The diagonal of `a` is copied into the symmetric part untouched.
pub fn decompose(a: &SquareMatrix, tol: f64) -> Result<(CutDecomposition, DecompositionTrace), NotBalanced> {
    let threshold = tol * tolerance_scale(&[a]);
    let (symmetric_part, mut residual) = split_symmetric(a);
    let mut trace = DecompositionTrace::default();
    let mut terms = Vec::new();
    loop {
        let outcome = extract_step(&residual, threshold)
            .expect("split_symmetric and cut subtraction keep the residual well formed");
        match outcome {
            StepOutcome::Done => break,
            StepOutcome::Step { step, next } => {
                terms.push(CutTerm {
                    coefficient: step.lambda,
                    subset: step.subset.clone(),
                });
                trace.steps.push(step);
                residual = next;
            }
            StepOutcome::NotBalanced { pivot, crossing } => {
                return Err(NotBalanced {
                    witness: failure_witness(a, tol, pivot.0, crossing),
                });
            }
        }
    }
    Ok((CutDecomposition { symmetric_part, terms }, trace))
}

/// Prefers the recognizer's lexicographically first triple; falls back to the
/// triple exposed by the stuck round when the violation sits at the
/// tolerance boundary.
fn failure_witness(a: &SquareMatrix, tol: f64, pivot_row: usize, crossing: (usize, usize)) -> BalanceWitness {
    match check_balanced_3cycle(a, tol) {
        BalanceVerdict::Unbalanced { witness } => witness,
        BalanceVerdict::Balanced { .. } => {
            let mut t = [pivot_row, crossing.0, crossing.1];
            t.sort_unstable();
            BalanceWitness::of_triple(a, t[0], t[1], t[2])
        }
    }
}

/// `symmetric_part + sum coefficient * cut(subset)`.
pub fn recompose(d: &CutDecomposition) -> SquareMatrix {
    d.terms.iter().fold(d.symmetric_part.clone(), |acc, term| {
        let cut = build_cut_matrix(&term.subset).expect("subset matches the matrix order");
        acc.add_scaled(term.coefficient, &cut)
            .expect("finite terms keep the sum finite")
    })
}
