//! Execution strategy for the data-parallel loops (random trials, grid
//! sups, ascent restarts, level sweeps).
//!
//! With the `parallel` feature enabled, [`Exec::Parallel`] fans work out over
//! the rayon thread pool. Without it, every strategy runs sequentially. Results
//! always come back in input order, so outputs are identical across strategies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Sizes the global worker pool. A no-op without the `parallel` feature;
/// fails if the pool was already built.
pub fn set_threads(threads: usize) -> crate::Result<()> {
    if threads == 0 {
        return Err(crate::Error::InvalidArgument("thread count must be positive".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
    Ok(())
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Maximum of `f` over `0..n`; `0.0` for an empty range.
    pub fn max_range<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        self.map_range(n, f).into_iter().fold(0.0, f64::max)
    }
}

/// Sets the global rayon pool size. A no-op without the `parallel` feature.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        // Ignored if the pool was already initialised.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_preserve_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = Exec::Sequential.map(&xs, |x| x * x);
        let b = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(a, b);
        assert_eq!(a[17], 289);
        assert_eq!(Exec::Parallel.max_range(0, |_| 5.0), 0.0);
    }
}
