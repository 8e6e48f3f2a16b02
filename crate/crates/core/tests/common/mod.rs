#![allow(dead_code)]

use qaplin::generate::{generate, BaseKind, EntryRange, GeneratorSpec};
use qaplin::rng::SeededRng;
use qaplin::{IndexSubset, SquareMatrix};

pub fn eq6_a() -> SquareMatrix {
    SquareMatrix::from_rows(&[
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
    .unwrap()
}

/// The second matrix exactly as printed next to A and C.
pub fn eq6_b_printed() -> SquareMatrix {
    SquareMatrix::from_rows(&[
        [0.0, 1.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
    .unwrap()
}

pub fn eq6_c() -> SquareMatrix {
    SquareMatrix::from_rows(&[
        [0.0, 1.0, 2.0, 3.0],
        [-1.0, 0.0, 1.0, 2.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
    .unwrap()
}

/// All permutations of `0..n` by plain recursion, independent of the
/// library enumerator.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn qap(a: &SquareMatrix, b: &SquareMatrix, p: &[usize]) -> f64 {
    let n = p.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += a.get(p[i], p[j]) * b.get(i, j);
        }
    }
    s
}

pub fn lap(c: &SquareMatrix, p: &[usize]) -> f64 {
    p.iter().enumerate().map(|(i, &j)| c.get(i, j)).sum()
}

/// Minimum assignment cost by branch-and-bound free exhaustive search.
pub fn brute_lap_min(c: &SquareMatrix) -> f64 {
    fn go(c: &SquareMatrix, row: usize, used: &mut [bool], acc: f64, best: &mut f64) {
        let n = used.len();
        if row == n {
            *best = best.min(acc);
            return;
        }
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                go(c, row + 1, used, acc + c.get(row, j), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(c, 0, &mut vec![false; c.order()], 0.0, &mut best);
    best
}

pub fn scale(ms: &[&SquareMatrix]) -> f64 {
    ms.iter().map(|m| m.max_abs()).fold(1.0, f64::max)
}

pub fn random_matrix(rng: &mut SeededRng, n: usize, lo: f64, hi: f64) -> SquareMatrix {
    SquareMatrix::from_fn(n, |_, _| rng.real_in(lo, hi)).unwrap()
}

pub fn random_int_matrix(rng: &mut SeededRng, n: usize, lo: i64, hi: i64) -> SquareMatrix {
    SquareMatrix::from_fn(n, |_, _| rng.int_in(lo, hi) as f64).unwrap()
}

/// A nonempty random subset of `0..n`.
pub fn random_subset(rng: &mut SeededRng, n: usize) -> IndexSubset {
    loop {
        let members: Vec<usize> = (0..n).filter(|_| rng.coin()).collect();
        if !members.is_empty() {
            return IndexSubset::new(n, members).unwrap();
        }
    }
}

pub fn instance(kind: BaseKind, n: usize, seed: u64, range: EntryRange, perturb: Option<f64>) -> SquareMatrix {
    let mut spec = GeneratorSpec::new(kind, n, seed).with_range(range);
    spec.perturb = perturb;
    generate(&spec).unwrap().a
}

pub const INT_RANGE: EntryRange = EntryRange::Integer { lo: -5, hi: 5 };
pub const REAL_RANGE: EntryRange = EntryRange::Real { lo: -5.0, hi: 5.0 };
