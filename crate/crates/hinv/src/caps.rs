//! Enumeration budgets.
//!
//! Every operation that sweeps an exponentially sized set checks one of
//! these caps up front and fails with [`Error::EnumerationTooLarge`] instead
//! of silently truncating.
//!
//! [`Error::EnumerationTooLarge`]: crate::Error::EnumerationTooLarge

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Vectors enumerated from a single subspace (`p^dim`).
    pub vectors: u64,
    /// Subspaces enumerated from one ambient space.
    pub subspaces: u64,
    /// Generator tuples visited in one enumeration or automorphism sweep.
    pub tuples: u64,
    /// Commutant members enumerated when counting automorphisms.
    pub members: u64,
    /// Node budget for the markedness backtracking search. Exhausting it
    /// yields the `Unknown` verdict, never a silent `false`.
    pub search_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            vectors: 1 << 20,
            subspaces: 100_000,
            tuples: 1 << 20,
            members: 1 << 20,
            search_nodes: 1_000_000,
        }
    }
}

impl Caps {
    /// Budget with room for the exhaustive desk-scale sweeps the test suite
    /// runs; roughly 16x the default tuple/member budgets.
    pub fn exhaustive() -> Self {
        Caps {
            vectors: 1 << 21,
            subspaces: 200_000,
            tuples: 1 << 24,
            members: 1 << 22,
            search_nodes: 4_000_000,
        }
    }
}
