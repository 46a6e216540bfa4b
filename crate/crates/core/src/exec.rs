//! Data-parallel map helpers. With the `parallel` feature (default)
//! work is spread over the rayon pool; without it the same calls run
//! sequentially. Callers must keep per-item work order-independent.

/// Map `f` over `items`, collecting results in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}

/// Map `f` over the index range `0..n`, collecting results in order.
pub fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    map_collect((0..n).collect(), f)
}

/// Always-sequential variant of [`map_indexed`], available regardless
/// of the `parallel` feature. Used as the reference implementation in
/// the benchmark suite.
pub fn map_indexed_seq<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}
