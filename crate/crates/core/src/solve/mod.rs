//! Optimization: the assignment solver, the polynomial weighted feedback arc
//! set solver for balanced 3-cycle matrices, and exhaustive baselines.

mod lap;

pub use lap::{solve_lap, AssignmentSolution, DualCertificate, LapSolution};

use serde::Serialize;

use crate::enumerate::{self, Execution};
use crate::error::{Error, NotBalanced, Result};
use crate::linearize::linearize_fas;
use crate::model::{build_feedback_matrix, build_hamiltonian_matrix, qap_value_raw, Permutation, SquareMatrix};
use crate::tolerance_scale;

/// Largest order accepted by the brute-force QAP enumerator.
pub const BRUTE_FORCE_QAP_LIMIT: usize = 10;
/// Largest order accepted by the brute-force TSP enumerator.
pub const BRUTE_FORCE_TSP_LIMIT: usize = 9;

/// A backward arc `from -> to` of a layout and its weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BackwardArc {
    #[serde(serialize_with = "crate::one_based::index")]
    pub from: usize,
    #[serde(serialize_with = "crate::one_based::index")]
    pub to: usize,
    pub weight: f64,
}

/// An optimal vertex layout for the weighted feedback arc set problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FasSolution {
    /// `layout[i]` is the vertex at position `i`.
    pub layout: Permutation,
    pub value: f64,
    /// Nonzero-weight arcs pointing from a later position to an earlier one.
    pub backward_arcs: Vec<BackwardArc>,
}

/// Arcs of `a` that point backwards in `layout`, with nonzero weight.
pub fn backward_arcs(a: &SquareMatrix, layout: &Permutation) -> Vec<BackwardArc> {
    let p = layout.images();
    let mut arcs = Vec::new();
    for later in 0..p.len() {
        for earlier in 0..later {
            let weight = a[(p[later], p[earlier])];
            if weight != 0.0 {
                arcs.push(BackwardArc {
                    from: p[later],
                    to: p[earlier],
                    weight,
                });
            }
        }
    }
    arcs
}

/// Minimum-weight feedback arc set of a balanced 3-cycle matrix, through its
/// assignment linearization.
pub fn solve_fas_balanced(a: &SquareMatrix, tol: f64) -> Result<FasSolution, NotBalanced> {
    let lin = linearize_fas(a, tol)?;
    let solution = solve_lap(&lin.c);
    let layout = solution.assignment.permutation;
    Ok(FasSolution {
        backward_arcs: backward_arcs(a, &layout),
        value: solution.assignment.value,
        layout,
    })
}

/// Exhaustive QAP minimum; ties go to the lexicographically first
/// permutation.
pub fn brute_force_qap(a: &SquareMatrix, b: &SquareMatrix) -> Result<AssignmentSolution> {
    brute_force_qap_with(a, b, Execution::default())
}

pub fn brute_force_qap_with(a: &SquareMatrix, b: &SquareMatrix, exec: Execution) -> Result<AssignmentSolution> {
    let n = a.order();
    b.check_order(n)?;
    if n > BRUTE_FORCE_QAP_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_QAP_LIMIT,
        });
    }
    let (p, value) = enumerate::argmin(n, exec, |p| qap_value_raw(a, b, p));
    Ok(AssignmentSolution {
        permutation: Permutation::from_slice_unchecked(&p),
        value,
    })
}

/// Exhaustive minimum of the weighted FAS-QAP `(A, F_n)`.
pub fn brute_force_fas(a: &SquareMatrix) -> Result<AssignmentSolution> {
    brute_force_qap(a, &build_feedback_matrix(a.order())?)
}

/// Every TSP-QAP value over all of `S_n`, cyclic or not.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TspEnumeration {
    /// Distinct values in increasing order; values within `tol * scale` of
    /// the smallest member of a run are merged into it.
    pub value_set: Vec<f64>,
    pub min: AssignmentSolution,
}

pub fn brute_force_tsp(a: &SquareMatrix, tol: f64) -> Result<TspEnumeration> {
    brute_force_tsp_with(a, tol, Execution::default())
}

pub fn brute_force_tsp_with(a: &SquareMatrix, tol: f64, exec: Execution) -> Result<TspEnumeration> {
    let n = a.order();
    if n < 2 {
        return Err(Error::DegenerateInstance("TSP enumeration needs n >= 2".into()));
    }
    if n > BRUTE_FORCE_TSP_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_TSP_LIMIT,
        });
    }
    let h = build_hamiltonian_matrix(n)?;
    let mut values = enumerate::map_all(n, exec, |p| qap_value_raw(a, &h, p));
    let (p, min_value) = enumerate::argmin(n, exec, |p| qap_value_raw(a, &h, p));

    values.sort_by(f64::total_cmp);
    let threshold = tol * tolerance_scale(&[a]);
    let mut value_set: Vec<f64> = Vec::new();
    for v in values {
        match value_set.last() {
            Some(&rep) if v - rep <= threshold => {}
            _ => value_set.push(v),
        }
    }
    Ok(TspEnumeration {
        value_set,
        min: AssignmentSolution {
            permutation: Permutation::from_slice_unchecked(&p),
            value: min_value,
        },
    })
}
