//! Data-parallel map helpers with a sequential fallback.
//!
//! With the `parallel` feature (default) the indexed maps run on rayon;
//! without it they degrade to plain loops. Results are collected in index
//! order either way, so callers observe identical output regardless of
//! feature flags or thread count. Work items must derive any randomness
//! from their index (see [`crate::rng`]) to keep that guarantee.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sequential counterpart of [`map_collect`], always single-threaded.
/// Kept unconditionally so benchmarks can compare both paths.
pub fn map_collect_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Run `f` inside a rayon pool capped at `threads` workers. With the
/// `parallel` feature disabled the cap is irrelevant and `f` runs inline.
/// `threads = 0` means "library default".
pub fn with_thread_cap<T, F>(threads: usize, f: F) -> T
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    #[cfg(feature = "parallel")]
    {
        if threads == 0 {
            f()
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("failed to build rayon pool");
            pool.install(f)
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_collect_preserves_index_order() {
        let out = map_collect(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn seq_and_par_agree() {
        let par = map_collect(64, |i| (i as f64).sin());
        let seq = map_collect_seq(64, |i| (i as f64).sin());
        assert_eq!(par, seq);
    }

    #[test]
    fn thread_cap_does_not_change_results() {
        let a = with_thread_cap(1, || map_collect(256, |i| (i as f64).sqrt()));
        let b = with_thread_cap(4, || map_collect(256, |i| (i as f64).sqrt()));
        assert_eq!(a, b);
    }
}
