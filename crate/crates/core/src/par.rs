//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over the rayon pool; without it, or with [`Parallelism::Sequential`],
//! the same closures run in order on the calling thread. Results are
//! returned in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    /// Whether work will actually be spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

pub fn map<T, R, F>(mode: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Maps each item and folds the results with an associative `merge`.
pub fn map_reduce<T, A, F, M, I>(mode: Parallelism, items: &[T], identity: I, f: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&T) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        return items.par_iter().map(f).reduce(&identity, &merge);
    }
    let _ = mode;
    items.iter().map(f).fold(identity(), merge)
}

/// Runs with a pool of `jobs` threads when `jobs` is given.
pub fn with_threads<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(j) = jobs {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
        {
            return pool.install(f);
        }
    }
    let _ = jobs;
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Parallelism::Sequential, &xs, |x| x * x);
        let b = map(Parallelism::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        let s = map_reduce(Parallelism::Parallel, &xs, || 0, |&x| x, |a, b| a + b);
        assert_eq!(s, 499_500);
    }
}
