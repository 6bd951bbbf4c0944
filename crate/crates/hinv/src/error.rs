//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in the supported range 2..=251")]
    BadModulus(u16),

    #[error("operands live in different fields: GF({left}) vs GF({right})")]
    FieldMismatch { left: u8, right: u8 },

    #[error("division by zero in GF({modulus})")]
    DivisionByZero { modulus: u8 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("{what} enumeration needs {needed} items, cap is {cap}")]
    EnumerationTooLarge {
        what: &'static str,
        needed: u128,
        cap: u64,
    },

    #[error("characteristic polynomial does not split: multiplicities sum to {found}, dimension is {dim}")]
    NonSplitCharPoly { found: usize, dim: usize },

    #[error("operator is not nilpotent")]
    NotNilpotent,

    #[error("subspace is not invariant under the operator")]
    NotInvariant,

    #[error("depth tuple is not admissible for the given exponents")]
    NotAdmissible,

    #[error("tuple lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("not a generator tuple: {0}")]
    NotGeneratorTuple(&'static str),

    #[error("not an invariant direct-sum decomposition: {0}")]
    NotADecomposition(&'static str),

    #[error("component split failed: components cover {got} of {expected} dimensions")]
    ComponentSplitFailed { got: usize, expected: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
