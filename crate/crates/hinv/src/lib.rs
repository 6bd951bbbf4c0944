//! Exact linear algebra over prime fields GF(p) for studying the invariant
//! subspaces of a fixed endomorphism.
//!
//! Given a square matrix `f` over GF(p) whose characteristic polynomial
//! splits, this crate decides for an `f`-invariant subspace `X` whether it is
//!
//! * *marked* — `X` has a Jordan basis that extends to a Jordan basis of the
//!   whole space, equivalently `X = W(r, U)` for a generator tuple `U` and an
//!   admissible depth tuple `r`,
//! * *characteristic* — `alpha(X) = X` for every automorphism `alpha`
//!   commuting with `f`,
//! * *hyperinvariant* — `g(X) ⊆ X` for every endomorphism `g` commuting
//!   with `f`,
//!
//! and it enumerates the full lattice of hyperinvariant subspaces. Everything
//! is exact; there is no floating point anywhere.
//!
//! Module map:
//!
//! * [`gf`] — arithmetic in GF(p), `2 <= p <= 251`.
//! * [`linalg`] — dense vectors/matrices and the canonical [`Subspace`]
//!   representation (reduced row echelon basis, the universal equality key).
//! * [`operator`] — eigenvalue split, generalized eigenspaces, Jordan
//!   structure of nilpotent operators, exponents and heights.
//! * [`marked`] — the `W(r, U)` / `W(r)` constructions and the markedness
//!   decision procedure.
//! * [`classify`] — commutant bases, generator-tuple enumeration, the four
//!   classification predicates, and componentwise classification reports.
//! * [`lattice`] — enumeration of subspace families (all / invariant /
//!   hyperinvariant / characteristic / marked), Hasse diagrams, DOT output.
//! * [`verify`] — executable property suites for the structural facts the
//!   library is built on, used by the CLI `verify` command and the
//!   acceptance tests.
//!
//! The heavy sweeps are data-parallel via rayon when the `parallel` feature
//! (on by default) is enabled; disabling it yields a fully sequential build
//! with identical results.
//!
//! ```
//! use hinv::{Caps, PrimeField, Subspace, VectorF, Verdict};
//! use hinv::classify::{classify_subspace, ClassifyOptions};
//! use hinv::operator::Operator;
//!
//! // f with one zero block and one shift block of size 3 over GF(2)
//! let field = PrimeField::new(2)?;
//! let f = Operator::nilpotent_blocks(field, &[1, 3])?;
//!
//! // Z is spanned by e1 + e3 and its image e4
//! let z = Subspace::from_rows(
//!     field,
//!     4,
//!     &[VectorF::from_ints(field, &[1, 0, 1, 0]), VectorF::unit(field, 4, 3)],
//! )?;
//!
//! let report = classify_subspace(&f, &z, &Caps::default(), ClassifyOptions::default())?;
//! assert_eq!(report.characteristic, Verdict::Yes);
//! assert_eq!(report.hyperinvariant, Verdict::No);
//! assert_eq!(report.marked, Verdict::No);
//!
//! // the witness is a commuting endomorphism pushing a vector out of Z
//! let w = report.hyper_witness.unwrap();
//! assert!(!z.contains(&w.image)?);
//! # Ok::<(), hinv::Error>(())
//! ```

pub mod caps;
pub mod classify;
pub mod error;
pub mod gf;
pub mod lattice;
pub mod linalg;
pub mod marked;
pub mod operator;
mod rng;
pub mod sweep;
pub mod verify;

pub use caps::Caps;
pub use classify::{ClassificationReport, CommutantBasis, Verdict};
pub use error::{Error, Result};
pub use gf::{PrimeField, Scalar};
pub use lattice::SubspaceLattice;
pub use linalg::{image, kernel, MatrixF, Subspace, VectorF};
pub use marked::{ExponentTuple, Markedness};
pub use operator::{Height, JordanStructure, Operator};
