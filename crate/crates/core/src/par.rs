//! Sequential or data-parallel execution of independent work items.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon thread pool; without it every mode runs sequentially. Results are
//! always returned in input order, so output never depends on the mode.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `items.iter().map(f).collect()`, possibly in parallel.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Like [`map`] over `0..n`.
pub fn map_range<U, F>(exec: Exec, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    let idx: Vec<usize> = (0..n).collect();
    map(exec, &idx, |&i| f(i))
}

/// Collects `Result`s produced by [`map`], keeping the first error in input order.
pub fn try_map<T, U, E, F>(exec: Exec, items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    map(exec, items, f).into_iter().collect()
}
