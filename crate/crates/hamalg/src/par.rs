//! Batch mapping with a data-parallel default and a sequential fallback.
//!
//! Check suites fan independent samples through `batch_map`; with the
//! `parallel` feature (on by default) the work is distributed by rayon,
//! without it the call degrades to a plain sequential map with identical
//! results and ordering.

/// Maps `f` over the items, in parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn batch_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Maps `f` over the items sequentially (the `parallel` feature is off).
#[cfg(not(feature = "parallel"))]
pub fn batch_map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    batch_map_seq(items, f)
}

/// Sequential reference implementation of `batch_map`.
pub fn batch_map_seq<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<i64> = (0..100).collect();
        let f = |x: &i64| x * x - 3;
        assert_eq!(batch_map(&items, f), batch_map_seq(&items, f));
    }
}
