//! Data-parallel helpers for the enumeration sweeps.
//!
//! With the `parallel` feature the dispatching functions fan out to rayon;
//! without it they fall back to the sequential versions. The `_seq`
//! variants are always available so the bench suite can compare the two on
//! identical workloads. All helpers preserve input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_seq<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    map_seq(items, f)
}

pub fn filter_seq<T>(items: Vec<T>, keep: impl Fn(&T) -> bool) -> Vec<T> {
    items.into_iter().filter(|t| keep(t)).collect()
}

#[cfg(feature = "parallel")]
pub fn filter<T: Send>(items: Vec<T>, keep: impl Fn(&T) -> bool + Sync + Send) -> Vec<T> {
    items.into_par_iter().filter(|t| keep(t)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter<T: Send>(items: Vec<T>, keep: impl Fn(&T) -> bool + Sync + Send) -> Vec<T> {
    filter_seq(items, keep)
}

pub fn find_first_seq<T>(items: &[T], pred: impl Fn(&T) -> bool) -> Option<usize> {
    items.iter().position(pred)
}

/// Leftmost index whose element satisfies the predicate; with rayon this is
/// `position_first`, so the winning witness is deterministic.
#[cfg(feature = "parallel")]
pub fn find_first<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> Option<usize> {
    items.par_iter().position_first(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn find_first<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> Option<usize> {
    find_first_seq(items, pred)
}

pub fn all_seq<T>(items: &[T], pred: impl Fn(&T) -> bool) -> bool {
    items.iter().all(pred)
}

#[cfg(feature = "parallel")]
pub fn all<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.par_iter().all(pred)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T: Sync>(items: &[T], pred: impl Fn(&T) -> bool + Sync + Send) -> bool {
    all_seq(items, pred)
}
