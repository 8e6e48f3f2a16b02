//! Checking a claimed linearization permutation by permutation, and deciding
//! linearizability from scratch by least squares over all of `S_n`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::enumerate::{self, Execution};
use crate::error::{Error, Result};
use crate::model::{lap_value_raw, qap_value_raw, Permutation, SquareMatrix};
use crate::rng::SeededRng;
use crate::tolerance_scale;

/// Largest order accepted by exhaustive verification.
pub const EXHAUSTIVE_LIMIT: usize = 10;
/// Largest order accepted by [`linearizability_oracle`].
pub const ORACLE_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// All `n!` permutations, in lexicographic order.
    Exhaustive,
    /// `count` uniform permutations drawn from the seeded sampler.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerifyOutcome {
    /// Every checked permutation agreed; `max_residual` is the largest
    /// `|QAP - LAP|` seen.
    Ok {
        checked: u64,
        exhaustive: bool,
        max_residual: f64,
    },
    Counterexample {
        permutation: Permutation,
        qap: f64,
        lap: f64,
    },
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok { .. })
    }
}

/// Checks `QAP(A, B, p) = LAP(C, p)` within `tol * scale`, `scale` taken over
/// all three matrices. Returns the first failing permutation in enumeration
/// (or sampling) order.
pub fn verify_linearization(
    a: &SquareMatrix,
    b: &SquareMatrix,
    c: &SquareMatrix,
    tol: f64,
    mode: VerifyMode,
) -> Result<VerifyOutcome> {
    verify_linearization_with(a, b, c, tol, mode, Execution::default())
}

pub fn verify_linearization_with(
    a: &SquareMatrix,
    b: &SquareMatrix,
    c: &SquareMatrix,
    tol: f64,
    mode: VerifyMode,
    exec: Execution,
) -> Result<VerifyOutcome> {
    let n = a.order();
    b.check_order(n)?;
    c.check_order(n)?;
    let threshold = tol * tolerance_scale(&[a, b, c]);
    let probe = |p: &[usize]| {
        let q = qap_value_raw(a, b, p);
        let l = lap_value_raw(c, p);
        ((q - l).abs() > threshold).then_some((q, l))
    };
    let residual = |p: &[usize]| (qap_value_raw(a, b, p) - lap_value_raw(c, p)).abs();

    match mode {
        VerifyMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::TooLarge {
                    n,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            if let Some((p, (qap, lap))) = enumerate::find_first(n, exec, probe) {
                return Ok(VerifyOutcome::Counterexample {
                    permutation: Permutation::from_slice_unchecked(&p),
                    qap,
                    lap,
                });
            }
            let (_, neg_max) = enumerate::argmin(n, exec, |p| -residual(p));
            Ok(VerifyOutcome::Ok {
                checked: enumerate::factorial(n),
                exhaustive: true,
                max_residual: -neg_max,
            })
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = SeededRng::new(seed);
            let samples: Vec<Vec<usize>> = (0..count).map(|_| rng.permutation(n)).collect();
            if let Some((idx, (qap, lap))) = enumerate::find_first_in(&samples, exec, |p| probe(p)) {
                return Ok(VerifyOutcome::Counterexample {
                    permutation: Permutation::from_slice_unchecked(&samples[idx]),
                    qap,
                    lap,
                });
            }
            let max_residual = samples.iter().map(|p| residual(p)).fold(0.0, f64::max);
            Ok(VerifyOutcome::Ok {
                checked: count as u64,
                exhaustive: false,
                max_residual,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OracleVerdict {
    Linearizable { c: SquareMatrix, residual: f64 },
    NotLinearizable { residual: f64 },
}

impl OracleVerdict {
    pub fn is_linearizable(&self) -> bool {
        matches!(self, OracleVerdict::Linearizable { .. })
    }

    pub fn residual(&self) -> f64 {
        match self {
            OracleVerdict::Linearizable { residual, .. } | OracleVerdict::NotLinearizable { residual } => *residual,
        }
    }
}

/// Decides whether any `C` satisfies `LAP(C, p) = QAP(A, B, p)` for all `p`.
///
/// One equation per permutation over the `n^2` unknowns of `C`, solved in
/// the least-squares sense (the system is always rank deficient);
/// the verdict depends only on the largest equation residual.
pub fn linearizability_oracle(a: &SquareMatrix, b: &SquareMatrix, tol: f64) -> Result<OracleVerdict> {
    linearizability_oracle_with(a, b, tol, Execution::default())
}

pub fn linearizability_oracle_with(
    a: &SquareMatrix,
    b: &SquareMatrix,
    tol: f64,
    exec: Execution,
) -> Result<OracleVerdict> {
    let n = a.order();
    b.check_order(n)?;
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge { n, limit: ORACLE_LIMIT });
    }
    let perms: Vec<(Vec<usize>, f64)> = enumerate::map_all(n, exec, |p| (p.to_vec(), qap_value_raw(a, b, p)));
    let rows = perms.len();
    let unknowns = n * n;

    let mut system = DMatrix::<f64>::zeros(rows, unknowns);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (r, (p, value)) in perms.iter().enumerate() {
        for (i, &j) in p.iter().enumerate() {
            system[(r, i * n + j)] = 1.0;
        }
        rhs[r] = *value;
    }

    // Minimum-norm least squares through the eigendecomposition of the
    // normal matrix. Its spectrum is tightly clustered (n! once, n!/(n-1)
    // with multiplicity (n-1)^2, then zeros), which the bidiagonal SVD
    // resolves poorly at n = 5; the symmetric eigensolver gets it to rounding.
    let eigen = (system.transpose() * &system).symmetric_eigen();
    let cutoff = 1e-10 * eigen.eigenvalues.amax().max(1.0);
    let projected = eigen.eigenvectors.transpose() * (system.transpose() * &rhs);
    let weights = DVector::from_iterator(
        unknowns,
        eigen
            .eigenvalues
            .iter()
            .zip(projected.iter())
            .map(|(&l, &y)| if l > cutoff { y / l } else { 0.0 }),
    );
    let x = &eigen.eigenvectors * weights;
    let residual = (&system * &x - &rhs).amax();

    let scale = tolerance_scale(&[a, b]);
    if residual <= tol * scale {
        let c = SquareMatrix::from_row_major(n, x.iter().copied().collect())?;
        Ok(OracleVerdict::Linearizable { c, residual })
    } else {
        Ok(OracleVerdict::NotLinearizable { residual })
    }
}
