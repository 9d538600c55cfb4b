//! Execution strategy for data-parallel inner loops.
//!
//! With the `parallel` feature (the default) candidate evaluations run on
//! rayon; without it they run on a plain iterator. Callers reduce the
//! returned vector sequentially in input order, so results are identical
//! either way.

#[cfg(feature = "parallel")]
pub(crate) fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_vec<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
