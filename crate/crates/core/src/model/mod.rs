//! Matrices, permutations, objective functions and the structured matrices
//! (feedback arc, Hamiltonian cycle, directed cut, sum) the rest of the crate
//! is built on.

mod matrix;
mod permutation;
mod subset;

pub use matrix::SquareMatrix;
pub use permutation::Permutation;
pub use subset::IndexSubset;

use crate::error::{Error, Result};

/// Koopmans-Beckmann objective `sum_ij A[p(i)][p(j)] * B[i][j]`.
pub fn qap_value(a: &SquareMatrix, b: &SquareMatrix, p: &Permutation) -> Result<f64> {
    let n = a.order();
    b.check_order(n)?;
    check_perm(p, n)?;
    Ok(qap_value_raw(a, b, p.images()))
}

/// Linear assignment objective `sum_i C[i][p(i)]`.
pub fn lap_value(c: &SquareMatrix, p: &Permutation) -> Result<f64> {
    check_perm(p, c.order())?;
    Ok(lap_value_raw(c, p.images()))
}

#[inline]
pub(crate) fn qap_value_raw(a: &SquareMatrix, b: &SquareMatrix, p: &[usize]) -> f64 {
    let n = p.len();
    let mut total = 0.0;
    for i in 0..n {
        let a_row = a.row(p[i]);
        let b_row = b.row(i);
        for j in 0..n {
            total += a_row[p[j]] * b_row[j];
        }
    }
    total
}

#[inline]
pub(crate) fn lap_value_raw(c: &SquareMatrix, p: &[usize]) -> f64 {
    p.iter().enumerate().map(|(i, &j)| c.get(i, j)).sum()
}

fn check_perm(p: &Permutation, n: usize) -> Result<()> {
    if p.order() == n {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: n,
            found: p.order(),
        })
    }
}

/// The feedback arc matrix `F_n`: entry `(i, j)` is 1 iff `j < i`.
pub fn build_feedback_matrix(n: usize) -> Result<SquareMatrix> {
    SquareMatrix::from_fn(n, |i, j| if j < i { 1.0 } else { 0.0 })
}

/// Adjacency matrix `H_n` of the directed Hamiltonian cycle `0 -> 1 -> .. -> n-1 -> 0`.
pub fn build_hamiltonian_matrix(n: usize) -> Result<SquareMatrix> {
    if n < 2 {
        return Err(Error::DegenerateInstance(format!(
            "Hamiltonian cycle matrix needs n >= 2, got {n}"
        )));
    }
    SquareMatrix::from_fn(n, |i, j| if (i + 1) % n == j { 1.0 } else { 0.0 })
}

/// Directed cut matrix induced by `subset`: 1 on `(i, j)` with `i` inside and
/// `j` outside.
pub fn build_cut_matrix(subset: &IndexSubset) -> Result<SquareMatrix> {
    let mask = subset.mask();
    SquareMatrix::from_fn(subset.ambient(), |i, j| if mask[i] && !mask[j] { 1.0 } else { 0.0 })
}

/// Sum matrix `alpha[i] + beta[j]`, diagonal included.
pub fn build_sum_matrix(alpha: &[f64], beta: &[f64]) -> Result<SquareMatrix> {
    if alpha.len() != beta.len() {
        return Err(Error::Dimension {
            expected: alpha.len(),
            found: beta.len(),
        });
    }
    SquareMatrix::from_fn(alpha.len(), |i, j| alpha[i] + beta[j])
}

/// Rows and columns of `a` indexed by `subset`, in increasing order.
pub fn principal_submatrix(a: &SquareMatrix, subset: &IndexSubset) -> Result<SquareMatrix> {
    a.check_order(subset.ambient())?;
    if subset.is_empty() {
        return Err(Error::DegenerateInstance(
            "principal submatrix of an empty index set".into(),
        ));
    }
    let idx = subset.members();
    SquareMatrix::from_fn(idx.len(), |r, c| a.get(idx[r], idx[c]))
}

/// See [`Permutation::cyclic_shift`].
pub fn cyclic_shift(p: &Permutation, k: usize) -> Result<Permutation> {
    p.cyclic_shift(k)
}
