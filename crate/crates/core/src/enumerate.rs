//! Lexicographic enumeration of `S_n`, split into rank ranges so the scan can
//! run on rayon.
//!
//! Every search reports the enumeration-order first hit (or first minimizer),
//! whatever the partitioning: each range is scanned in order and the
//! reduction keeps the lowest rank.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How permutation scans are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rank ranges are scanned on the rayon pool. Without the `parallel`
    /// feature this falls back to [`Execution::Sequential`].
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Below this many permutations a scan always runs sequentially.
const PARALLEL_THRESHOLD: u64 = 2048;
const TARGET_CHUNKS: u64 = 256;

/// `n!`, saturating at `u64::MAX` (n > 20).
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .unwrap_or(u64::MAX)
}

/// Steps `p` to its lexicographic successor; returns `false` (leaving `p`
/// unchanged) when `p` is the last permutation.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The permutation of `{0..n-1}` at lexicographic position `rank`.
pub fn unrank(n: usize, mut rank: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        let idx = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(idx));
    }
    out
}

/// Lexicographic position of `p`.
pub fn rank(p: &[usize]) -> u64 {
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count() as u64;
        r += smaller * factorial(n - 1 - i);
    }
    r
}

fn chunks(total: u64) -> Vec<Range<u64>> {
    let size = total.div_ceil(TARGET_CHUNKS).max(1);
    (0..total.div_ceil(size))
        .map(|c| c * size..((c + 1) * size).min(total))
        .collect()
}

fn use_parallel(exec: Execution, total: u64) -> bool {
    cfg!(feature = "parallel") && exec == Execution::Parallel && total > PARALLEL_THRESHOLD
}

/// Visits the permutations with ranks in `range`, in order, until `visit`
/// returns `Some`.
fn scan_range<T>(n: usize, range: Range<u64>, mut visit: impl FnMut(u64, &[usize]) -> Option<T>) -> Option<T> {
    if range.is_empty() {
        return None;
    }
    let mut p = unrank(n, range.start);
    let mut r = range.start;
    loop {
        if let Some(hit) = visit(r, &p) {
            return Some(hit);
        }
        r += 1;
        if r >= range.end || !next_permutation(&mut p) {
            return None;
        }
    }
}

/// First permutation (in lexicographic order) for which `f` returns `Some`.
pub fn find_first<T, F>(n: usize, exec: Execution, f: F) -> Option<(Vec<usize>, T)>
where
    T: Send,
    F: Fn(&[usize]) -> Option<T> + Sync,
{
    let total = factorial(n);
    let probe = |range: Range<u64>| scan_range(n, range, |_, p| f(p).map(|t| (p.to_vec(), t)));
    if use_parallel(exec, total) {
        #[cfg(feature = "parallel")]
        return chunks(total).into_par_iter().find_map_first(probe);
    }
    chunks(total).into_iter().find_map(probe)
}

/// Lexicographically first minimizer of `f` and its value.
pub fn argmin<F>(n: usize, exec: Execution, f: F) -> (Vec<usize>, f64)
where
    F: Fn(&[usize]) -> f64 + Sync,
{
    let total = factorial(n);
    let best_in = |range: Range<u64>| {
        let mut best: Option<(u64, Vec<usize>, f64)> = None;
        scan_range::<()>(n, range, |r, p| {
            let v = f(p);
            if best.as_ref().is_none_or(|b| v < b.2) {
                best = Some((r, p.to_vec(), v));
            }
            None
        });
        best
    };
    // Lower value wins; equal values keep the earlier rank.
    let pick = |a: Option<(u64, Vec<usize>, f64)>, b: Option<(u64, Vec<usize>, f64)>| match (a, b) {
        (Some(a), Some(b)) => {
            if b.2 < a.2 || (b.2 == a.2 && b.0 < a.0) {
                Some(b)
            } else {
                Some(a)
            }
        }
        (a, None) => a,
        (None, b) => b,
    };
    let finish = |best: Option<(u64, Vec<usize>, f64)>| {
        let (_, p, v) = best.expect("S_n is nonempty for n >= 1");
        (p, v)
    };
    if use_parallel(exec, total) {
        #[cfg(feature = "parallel")]
        return finish(chunks(total).into_par_iter().map(best_in).reduce(|| None, pick));
    }
    finish(chunks(total).into_iter().map(best_in).fold(None, pick))
}

/// `f` applied to every permutation, in lexicographic order.
pub fn map_all<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[usize]) -> T + Sync,
{
    let total = factorial(n);
    let run = |range: Range<u64>| {
        let mut out = Vec::with_capacity((range.end - range.start) as usize);
        scan_range::<()>(n, range, |_, p| {
            out.push(f(p));
            None
        });
        out
    };
    if use_parallel(exec, total) {
        #[cfg(feature = "parallel")]
        {
            let parts: Vec<Vec<T>> = chunks(total).into_par_iter().map(run).collect();
            return parts.into_iter().flatten().collect();
        }
    }
    chunks(total).into_iter().flat_map(run).collect()
}

/// First element of `items` (in slice order) for which `f` returns `Some`.
pub fn find_first_in<I, T, F>(items: &[I], exec: Execution, f: F) -> Option<(usize, T)>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> Option<T> + Sync,
{
    let probe = |(idx, item): (usize, &I)| f(item).map(|t| (idx, t));
    if use_parallel(exec, items.len() as u64) {
        #[cfg(feature = "parallel")]
        return items.par_iter().enumerate().find_map_first(probe);
    }
    items.iter().enumerate().find_map(probe)
}
