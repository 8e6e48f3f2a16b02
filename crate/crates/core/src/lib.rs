//! Linearizable special cases of the quadratic assignment problem.
//!
//! A Koopmans-Beckmann QAP instance `(A, B)` assigns to every permutation `p`
//! the value `sum_ij A[p(i)][p(j)] * B[i][j]`. The instance is *linearizable*
//! when a single cost matrix `C` reproduces that value as the linear
//! assignment objective `sum_i C[i][p(i)]` for every `p`.
//!
//! This crate covers two families where linearizability has a combinatorial
//! characterization:
//!
//! * the feedback arc set QAP `(A, F_n)`, linearizable exactly when every
//!   3-cycle of `A` is balanced; such matrices split into a symmetric part
//!   plus a positive combination of directed cut matrices ([`decompose`]),
//!   and the resulting linearization turns the weighted FAS problem into an
//!   assignment problem ([`solve::solve_fas_balanced`]);
//! * the traveling salesman QAP `(A, H_n)`, linearizable exactly when `A` is
//!   a weak sum matrix ([`recognize::recognize_weak_sum`]).
//!
//! Brute-force enumerators and a least-squares linearizability oracle check
//! every characterization on small instances. Permutation enumeration runs
//! on rayon when the `parallel` feature is enabled (the default); pass
//! [`Execution::Sequential`] to force a single-threaded scan.
//!
//! Indices are 0-based in the Rust API. Everything that leaves the process
//! (serialized results, error messages, instance files) is 1-based.

pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod generate;
pub mod io;
pub mod linearize;
pub mod model;
pub mod recognize;
pub mod rng;
pub mod solve;
pub mod verify;

mod one_based;

pub use crate::enumerate::Execution;
pub use crate::error::{Error, NotBalanced, NotWeakSum, Result};
pub use crate::model::{IndexSubset, Permutation, SquareMatrix};

/// Default relative comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Scale factor for tolerance comparisons: `max(1, max |entry|)` over all
/// operands.
pub fn tolerance_scale(operands: &[&SquareMatrix]) -> f64 {
    operands.iter().map(|m| m.max_abs()).fold(1.0_f64, f64::max)
}
