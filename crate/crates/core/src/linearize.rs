//! Linear assignment matrices `C` with `QAP(A, B, p) = LAP(C, p)` for every
//! permutation `p`.
//!
//! Conventions follow the QAP objective `sum_ij A[p(i)][p(j)] B[i][j]`: rows
//! of `C` are positions of `B` and columns are facilities of `A`. For the
//! feedback arc set QAP (`B = F_n`) a row is a layout slot and a column is a
//! vertex.

use serde::Serialize;

use crate::decompose::decompose;
use crate::error::{Error, NotBalanced, NotWeakSum, Result};
use crate::model::{IndexSubset, SquareMatrix};
use crate::recognize::{check_balanced_3cycle, recognize_weak_sum, BalanceVerdict, WeakSumVerdict};

/// A cost matrix certified to reproduce a QAP objective.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Linearization {
    pub c: SquareMatrix,
}

/// Linearization of the TSP-QAP together with the common tour length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TspLinearization {
    pub linearization: Linearization,
    pub tour_value: f64,
}

/// Every entry `value / n`, so every assignment costs exactly `value`
/// (up to rounding of the division).
pub fn constant_lap_matrix(n: usize, value: f64) -> Result<SquareMatrix> {
    if n == 0 {
        return Err(Error::DegenerateInstance("order must be at least 1".into()));
    }
    SquareMatrix::from_row_major(n, vec![value / n as f64; n * n])
}

/// Linearization of the FAS-QAP for the directed cut matrix of `subset`.
///
/// If the `k` vertices of `I` occupy layout slots `q_1 < .. < q_k`, the
/// vertex in slot `q_t` has `q_t - t` vertices outside `I` before it, each
/// a backward arc. The total `sum_t q_t - k(k+1)/2` is linear in the slots,
/// so column `v` of `C` (for `v` in `I`) holds `slot - (k+1)/2` in every row
/// (slots 1-based); all other columns are zero.
pub fn linearize_cut_fas(subset: &IndexSubset) -> Result<Linearization> {
    if !subset.is_proper() {
        return Err(Error::DegenerateInstance(format!(
            "cut subset {subset} is empty or full; its cut matrix is zero"
        )));
    }
    let k = subset.len() as f64;
    let centre = (k + 1.0) / 2.0;
    let mask = subset.mask();
    let c = SquareMatrix::from_fn(
        subset.ambient(),
        |slot, v| {
            if mask[v] {
                (slot + 1) as f64 - centre
            } else {
                0.0
            }
        },
    )?;
    Ok(Linearization { c })
}

/// Linearizes the FAS-QAP `(A, F_n)`, which is possible exactly for balanced
/// 3-cycle matrices.
///
/// The symmetric part of the decomposition costs `sum_{i<j} S[i][j]` in every
/// layout; each cut term contributes `lambda * linearize_cut_fas(I)`.
pub fn linearize_fas(a: &SquareMatrix, tol: f64) -> Result<Linearization, NotBalanced> {
    if let BalanceVerdict::Unbalanced { witness } = check_balanced_3cycle(a, tol) {
        return Err(NotBalanced { witness });
    }
    let (decomposition, _) = decompose(a, tol)?;
    let n = a.order();
    let s = &decomposition.symmetric_part;
    let symmetric_cost: f64 = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| s[(i, j)])
        .sum();

    let mut c = constant_lap_matrix(n, symmetric_cost).expect("n >= 1");
    for term in &decomposition.terms {
        let cut = linearize_cut_fas(&term.subset).expect("decomposition emits proper subsets");
        c = c.add_scaled(term.coefficient, &cut.c).expect("same order");
    }
    Ok(Linearization { c })
}

/// Linearizes the TSP-QAP `(A, H_n)`, which is possible exactly for weak sum
/// matrices. Every permutation then has the tour length
/// `sum_i (alpha_i + beta_i)`, and `C` is the constant matrix for it.
///
/// Orders 1 and 2 always succeed: `S_1` and `S_2` traverse one fixed arc
/// multiset.
pub fn linearize_tsp(a: &SquareMatrix, tol: f64) -> Result<TspLinearization, NotWeakSum> {
    match recognize_weak_sum(a, tol) {
        WeakSumVerdict::WeakSum { certificate } => {
            let tour_value = certificate.tour_value();
            let c = constant_lap_matrix(a.order(), tour_value).expect("n >= 1");
            Ok(TspLinearization {
                linearization: Linearization { c },
                tour_value,
            })
        }
        WeakSumVerdict::NotWeakSum { witness } => Err(NotWeakSum { witness }),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeneralLinearizeError {
    #[error(transparent)]
    NotWeakSum(#[from] NotWeakSum),
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// Linearization of `(A, B)` for a weak sum matrix `A` and arbitrary `B`.
///
/// With `A[u][v] = alpha_u + beta_v` off the diagonal and `d_v = A[v][v]`,
/// `C[i][v] = alpha_v * rowsum_i(B) + beta_v * colsum_i(B) + (d_v - alpha_v - beta_v) * B[i][i]`.
pub fn linearize_weak_sum_general(
    a: &SquareMatrix,
    b: &SquareMatrix,
    tol: f64,
) -> Result<Linearization, GeneralLinearizeError> {
    let n = a.order();
    b.check_order(n)?;
    let certificate = match recognize_weak_sum(a, tol) {
        WeakSumVerdict::WeakSum { certificate } => certificate,
        WeakSumVerdict::NotWeakSum { witness } => return Err(NotWeakSum { witness }.into()),
    };
    let row_sums: Vec<f64> = b.rows().map(|r| r.iter().sum()).collect();
    let col_sums: Vec<f64> = (0..n).map(|j| (0..n).map(|i| b[(i, j)]).sum()).collect();
    let (alpha, beta) = (&certificate.alpha, &certificate.beta);
    let c = SquareMatrix::from_fn(n, |i, v| {
        alpha[v] * row_sums[i] + beta[v] * col_sums[i] + (a[(v, v)] - alpha[v] - beta[v]) * b[(i, i)]
    })?;
    Ok(Linearization { c })
}

/// Restricts a FAS-QAP linearization `C` of `A` to the principal submatrix
/// `A[J]`.
///
/// Layouts of `A[J]` extend to layouts of `A` by placing `J` first (ordered by
/// the sub-permutation) and the complement `K` after it in increasing order.
/// The complement then adds the fixed weight `W2` (backward arcs inside `K`)
/// plus `W3` (every arc from `K` into `J`), and contributes
/// `sum_t C[k + t][K_t]` to the assignment cost. Hence
/// `C' = C[slots 0..k, columns J] + const(sum_t C[k+t][K_t] - W2 - W3)`.
pub fn reduce_principal(a: &SquareMatrix, c: &SquareMatrix, subset: &IndexSubset) -> Result<Linearization> {
    let n = a.order();
    c.check_order(n)?;
    if subset.ambient() != n {
        return Err(Error::Dimension {
            expected: n,
            found: subset.ambient(),
        });
    }
    if subset.is_empty() {
        return Err(Error::DegenerateInstance(
            "principal reduction to an empty index set".into(),
        ));
    }
    let inner = subset.members();
    let outer_set = subset.complement();
    let outer = outer_set.members();
    let k = inner.len();

    let w2: f64 = (0..outer.len())
        .flat_map(|t| (0..t).map(move |s| (t, s)))
        .map(|(t, s)| a[(outer[t], outer[s])])
        .sum();
    let w3: f64 = outer.iter().flat_map(|&x| inner.iter().map(move |&y| a[(x, y)])).sum();
    let tail: f64 = outer.iter().enumerate().map(|(t, &v)| c[(k + t, v)]).sum();

    let shift = (tail - (w2 + w3)) / k as f64;
    let reduced = SquareMatrix::from_fn(k, |slot, col| c[(slot, inner[col])] + shift)?;
    Ok(Linearization { c: reduced })
}
