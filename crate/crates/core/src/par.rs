//! Data-parallel helpers. With the `rayon` feature these fan out over the
//! global rayon pool; without it they run sequentially. Either way the output
//! order is the input order, so results never depend on scheduling.

use std::ops::Range;

#[cfg(feature = "rayon")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, preserving index order.
#[cfg(feature = "rayon")]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "rayon"))]
pub(crate) fn map_range<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, preserving order.
#[cfg(feature = "rayon")]
pub(crate) fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "rayon"))]
pub(crate) fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    F: Fn(&S) -> T,
{
    items.iter().map(f).collect()
}

/// Splits `0..n` into fixed-size chunks and maps `f` over them.
///
/// Chunk boundaries depend only on `n` and `chunk`, never on the thread
/// count, so a caller that folds the returned partials in order gets
/// bit-identical floating point sums on any pool size.
pub(crate) fn map_chunks<T, F>(n: usize, chunk: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let count = n.div_ceil(chunk);
    map_range(count, |c| {
        let start = c * chunk;
        f(start..(start + chunk).min(n))
    })
}

/// Element-wise sum of equally sized vectors, folded left to right.
pub(crate) fn sum_in_order(parts: Vec<Vec<f64>>, len: usize) -> Vec<f64> {
    let mut acc = vec![0.0; len];
    for part in parts {
        for (a, p) in acc.iter_mut().zip(part) {
            *a += p;
        }
    }
    acc
}
