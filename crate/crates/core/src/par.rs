//! Execution strategy shared by the counting engines.
//!
//! Every engine takes an [`Execution`] so both paths stay callable from one
//! build. Without the `parallel` feature, [`Execution::Parallel`] degrades to
//! the sequential path.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Number of workers the parallel path will use.
    pub fn workers(self) -> usize {
        if !self.is_parallel() {
            return 1;
        }
        #[cfg(feature = "parallel")]
        {
            rayon::current_num_threads()
        }
        #[cfg(not(feature = "parallel"))]
        {
            1
        }
    }
}

/// Order-preserving map.
pub(crate) fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Map each item and fold the results with an associative `combine`.
pub(crate) fn map_reduce<T, R, F, C>(exec: Execution, items: &[T], identity: R, f: F, combine: C) -> R
where
    T: Sync,
    R: Send + Sync + Clone,
    F: Fn(&T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).reduce(|| identity.clone(), &combine);
    }
    let _ = exec;
    items.iter().map(f).fold(identity, combine)
}

/// Configure the global pool from `STARFREE_THREADS`, if set.
pub fn init_threads_from_env() {
    #[cfg(feature = "parallel")]
    if let Some(n) =
        std::env::var("STARFREE_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0)
    {
        // A second call fails harmlessly once the pool exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(map(exec, &xs, |x| x * 2)[999], 1998);
            assert_eq!(map_reduce(exec, &xs, 0u64, |x| *x, |a, b| a + b), 499_500);
        }
    }
}
