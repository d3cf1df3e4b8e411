// SPDX-License-Identifier: Apache-2.0

//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these fan out over the rayon
//! global pool; without it they run sequentially. Results are always
//! collected in index order, so the output never depends on scheduling.

/// Maps `f` over `0..n` and collects in index order.
///
/// `parallel = false` forces the sequential path even when the feature is
/// enabled, which the benchmarks use to compare both.
pub fn map_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel && n > 1 {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    let _ = parallel;
    (0..n).map(f).collect()
}

/// True when the crate was built with rayon support.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}
