//! Execution helpers for data-parallel inner loops.
//!
//! The pipeline's hot loops are all independent per-item maps: assigning
//! points to centroids, scoring candidate/reference pairs, predicting over an
//! unlabeled pool. [`map_collect`] runs them on rayon when the `parallel`
//! feature is enabled and sequentially otherwise, so a `--no-default-features`
//! build has no rayon dependency at all. The explicit `_seq`/`_par` variants
//! exist so the bench suite can compare both paths in one binary.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order. Parallel when the `parallel`
/// feature is enabled, sequential otherwise.
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_collect_par(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_collect_seq(items, f)
    }
}

/// Sequential map, always available.
pub fn map_collect_seq<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Rayon-backed map.
#[cfg(feature = "parallel")]
pub fn map_collect_par<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_input_order() {
        let items: Vec<u32> = (0..1000).collect();
        let out = map_collect(&items, |x| x * 2);
        assert_eq!(out, items.iter().map(|x| x * 2).collect::<Vec<_>>());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn seq_and_par_agree() {
        let items: Vec<u64> = (0..500).collect();
        let seq = map_collect_seq(&items, |x| x.wrapping_mul(2654435761));
        let par = map_collect_par(&items, |x| x.wrapping_mul(2654435761));
        assert_eq!(seq, par);
    }
}
