//! Deterministic parallel search over a leading index.

use rayon::prelude::*;

/// Leading ranges shorter than this run sequentially.
const PARALLEL_THRESHOLD: usize = 24;

/// Returns the witness produced for the smallest leading index that yields
/// one. Each closure call is expected to search its own block in lexicographic
/// order, so the overall result is the lexicographically first failure
/// regardless of scheduling.
pub(crate) fn first_witness<F>(len: usize, f: F) -> Option<Vec<usize>>
where
    F: Fn(usize) -> Option<Vec<usize>> + Sync + Send,
{
    if len < PARALLEL_THRESHOLD {
        (0..len).find_map(f)
    } else {
        (0..len).into_par_iter().find_map_first(f)
    }
}

/// Same as [`first_witness`] but only reports whether every block passes.
pub(crate) fn all_hold<F>(len: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    if len < PARALLEL_THRESHOLD {
        (0..len).all(f)
    } else {
        (0..len).into_par_iter().all(f)
    }
}
