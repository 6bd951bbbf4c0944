//! The four classification predicates and the machinery behind them.
//!
//! * invariant: `f(X) ⊆ X`, checked on the basis.
//! * hyperinvariant: `g(X) ⊆ X` for every `g` commuting with `f`. Checking a
//!   basis of the commutant suffices, because membership is linear in `g`;
//!   the brute-force sweep over the whole commutant stays available as an
//!   oracle.
//! * characteristic: `alpha(X) = X` for every automorphism commuting with
//!   `f`. For p > 2 this coincides with hyperinvariant, so that is the fast
//!   path; for p = 2 the automorphism group is genuinely enumerated through
//!   generator tuples (each tuple is the image of the canonical one under
//!   exactly one automorphism), capped and reported rather than
//!   approximated.
//! * marked: see [`crate::marked`].
//!
//! Operators with several eigenvalues are classified componentwise: the
//! verdict holds for `X` exactly when it holds for every component
//! `X ∩ V_lambda` under the nilpotent part of the restriction, and
//! witnesses lift back to the ambient space padded with identity (for
//! automorphisms) or zero (for endomorphisms) on the other components.

mod tuples;

use std::fmt;

pub use tuples::{
    count_generator_tuples, enumerate_generator_tuples, visit_generator_tuples, w_uniformity,
    w_uniformity_multi,
    Flow, GenericSpan, UniformityOutcome,
};
pub(crate) use tuples::characteristic_sweep;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::linalg::{kernel, MatrixF, Subspace, VectorF};
use crate::marked::{is_marked, MarkedWitness, Markedness};
use crate::operator::{decompose, EigenComponent, JordanStructure, Operator};

/// Basis of the algebra of matrices commuting with a fixed operator.
#[derive(Debug, Clone)]
pub struct CommutantBasis {
    members: Vec<MatrixF>,
}

impl CommutantBasis {
    pub fn members(&self) -> &[MatrixF] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }
}

/// Basis of `{g : g f = f g}`, from the kernel of the linear commutation
/// system in the n^2 matrix entries.
pub fn commutant_basis(f: &Operator) -> CommutantBasis {
    let n = f.dim();
    let field = f.field();
    let fm = f.matrix();
    let mut system = MatrixF::zeros(field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                // (g f)[i][j] contributes g[i][k] * f[k][j]
                let c1 = system.get(row, i * n + k);
                system.set(row, i * n + k, field.add(c1, fm.get(k, j)));
                // -(f g)[i][j] contributes -f[i][k] * g[k][j]
                let c2 = system.get(row, k * n + j);
                system.set(row, k * n + j, field.sub(c2, fm.get(i, k)));
            }
        }
    }
    let null = kernel(&system);
    let members: Vec<MatrixF> = null
        .basis_rows()
        .map(|v| MatrixF::from_fn(field, n, n, |r, c| v.entries()[r * n + c]))
        .collect();
    debug_assert!(members
        .iter()
        .all(|g| g.mul(fm).unwrap() == fm.mul(g).unwrap()));
    CommutantBasis { members }
}

pub fn is_invariant(f: &Operator, x: &Subspace) -> Result<bool> {
    if x.ambient() != f.dim() {
        return Err(Error::AmbientMismatch {
            left: f.dim(),
            right: x.ambient(),
        });
    }
    for row in x.basis_rows() {
        if !x.contains(&f.apply(&row)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A commuting endomorphism that maps a vector of `X` outside `X`.
#[derive(Debug, Clone)]
pub struct EndoWitness {
    pub endo: MatrixF,
    pub vector: VectorF,
    pub image: VectorF,
}

impl fmt::Display for EndoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g maps {} to {} outside the subspace",
            self.vector.symbolic(),
            self.image.symbolic()
        )
    }
}

/// `None` means hyperinvariant; otherwise the witness shows a commuting
/// endomorphism escaping `X`. Invariance under a commutant basis extends to
/// the spanned algebra by linearity, so the basis sweep is exact.
pub fn is_hyperinvariant(f: &Operator, x: &Subspace) -> Result<Option<EndoWitness>> {
    if !is_invariant(f, x)? {
        return Err(Error::NotInvariant);
    }
    let commutant = commutant_basis(f);
    for g in commutant.members() {
        for row in x.basis_rows() {
            let image = g.mul_vec(&row)?;
            if !x.contains(&image)? {
                return Ok(Some(EndoWitness {
                    endo: g.clone(),
                    vector: row,
                    image,
                }));
            }
        }
    }
    Ok(None)
}

/// Oracle variant: sweep every member of the commutant algebra (all p^d
/// coefficient combinations) instead of only a basis.
pub fn is_hyperinvariant_bruteforce(
    f: &Operator,
    x: &Subspace,
    caps: &Caps,
) -> Result<Option<EndoWitness>> {
    if !is_invariant(f, x)? {
        return Err(Error::NotInvariant);
    }
    let commutant = commutant_basis(f);
    let mut witness = None;
    sweep_commutant_members(f, &commutant, caps, &mut |g| {
        for row in x.basis_rows() {
            let image = g.mul_vec(&row).expect("same ambient");
            if !x.contains(&image).expect("same ambient") {
                witness = Some(EndoWitness {
                    endo: g.clone(),
                    vector: row,
                    image,
                });
                return Flow::Stop;
            }
        }
        Flow::Continue
    })?;
    Ok(witness)
}

/// Visit every member of the commutant algebra, `p^d` of them. The member
/// is maintained incrementally across odometer steps, which makes the cost
/// amortized O(n^2) per member instead of O(d n^2).
fn sweep_commutant_members(
    f: &Operator,
    commutant: &CommutantBasis,
    caps: &Caps,
    visit: &mut impl FnMut(&MatrixF) -> Flow,
) -> Result<()> {
    let field = f.field();
    let p = field.modulus() as u128;
    let d = commutant.dim();
    let needed = p.checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > caps.members as u128 {
        return Err(Error::EnumerationTooLarge {
            what: "commutant member",
            needed,
            cap: caps.members,
        });
    }
    let n = f.dim();
    let mut digits = vec![0u8; d];
    let mut g = MatrixF::zeros(field, n, n);
    loop {
        if visit(&g) == Flow::Stop {
            return Ok(());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if digits[i] + 1 < field.modulus() {
                digits[i] += 1;
                g.add_scaled_in_place(&commutant.members()[i], 1);
                break;
            }
            // position rolls over to zero: remove its contribution
            let c = digits[i];
            digits[i] = 0;
            if c != 0 {
                g.add_scaled_in_place(&commutant.members()[i], field.neg(c));
            }
        }
    }
}

/// Number of invertible members of the commutant algebra, by genuine
/// enumeration. This equals the number of generator tuples; the identity of
/// the two counts is one of the verified facts.
pub fn count_invertible_commutant_members(f: &Operator, caps: &Caps) -> Result<u64> {
    let commutant = commutant_basis(f);
    let n = f.dim();
    let mut count = 0u64;
    sweep_commutant_members(f, &commutant, caps, &mut |g| {
        if g.rank() == n {
            count += 1;
        }
        Flow::Continue
    })?;
    Ok(count)
}

/// The unique automorphism commuting with `f` that maps the tuple `u` to
/// the tuple `u2` chainwise, built from the two Jordan basis matrices.
pub fn theta_automorphism(
    f: &Operator,
    u: &JordanStructure,
    u2: &JordanStructure,
) -> Result<MatrixF> {
    u.validate(f)?;
    u2.validate(f)?;
    if u.exponents != u2.exponents {
        return Err(Error::NotGeneratorTuple("exponent lists differ"));
    }
    let ju = u.chain_matrix(f);
    let ju2 = u2.chain_matrix(f);
    let inv = ju
        .inverse()?
        .ok_or(Error::NotGeneratorTuple("chain matrix is singular"))?;
    let alpha = ju2.mul(&inv)?;
    debug_assert_eq!(
        alpha.mul(f.matrix()).unwrap(),
        f.matrix().mul(&alpha).unwrap()
    );
    debug_assert_eq!(alpha.rank(), f.dim());
    Ok(alpha)
}

/// Verdict of the characteristic test.
#[derive(Debug, Clone)]
pub struct CharVerdict {
    pub characteristic: bool,
    /// An automorphism moving `X`, when one was found. The p > 2 fast path
    /// may fail the subspace without materializing an automorphism.
    pub witness: Option<MatrixF>,
}

/// Options shared by the classification entry points.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClassifyOptions {
    /// Use genuine automorphism enumeration even when p > 2, instead of the
    /// hyperinvariance fast path.
    pub force_bruteforce: bool,
}

/// Decide whether `x` is fixed setwise by every automorphism commuting
/// with `f`.
pub fn is_characteristic(
    f: &Operator,
    x: &Subspace,
    caps: &Caps,
    opts: ClassifyOptions,
) -> Result<CharVerdict> {
    if !is_invariant(f, x)? {
        return Err(Error::NotInvariant);
    }
    if x.is_zero_space() || x.is_full_space() {
        return Ok(CharVerdict {
            characteristic: true,
            witness: None,
        });
    }
    let p = f.field().modulus();
    if p > 2 && !opts.force_bruteforce {
        // over fields with more than two elements, characteristic and
        // hyperinvariant coincide, and hyperinvariant always implies
        // characteristic
        return match is_hyperinvariant(f, x)? {
            None => Ok(CharVerdict {
                characteristic: true,
                witness: None,
            }),
            Some(_) => Ok(CharVerdict {
                characteristic: false,
                witness: automorphism_witness_from_commutant(f, x)?,
            }),
        };
    }

    let components = decompose(f)?;
    if components.len() == 1 && components[0].space.is_full_space() {
        let nil = components[0].nilpotent_part();
        return match characteristic_sweep(&nil, x, caps)? {
            None => Ok(CharVerdict {
                characteristic: true,
                witness: None,
            }),
            Some(alpha) => Ok(CharVerdict {
                characteristic: false,
                witness: Some(alpha),
            }),
        };
    }
    for (ci, comp) in components.iter().enumerate() {
        let xc = comp.project_subspace(&x.intersect(&comp.space)?)?;
        let nil = comp.nilpotent_part();
        if let Some(alpha_c) = characteristic_sweep(&nil, &xc, caps)? {
            let alpha = embed_component_map(&components, ci, &alpha_c, true)?;
            return Ok(CharVerdict {
                characteristic: false,
                witness: Some(alpha),
            });
        }
    }
    Ok(CharVerdict {
        characteristic: true,
        witness: None,
    })
}

/// Best-effort automorphism witness for the p > 2 path: try `I + a g` over
/// commutant basis members and scalars.
fn automorphism_witness_from_commutant(
    f: &Operator,
    x: &Subspace,
) -> Result<Option<MatrixF>> {
    let field = f.field();
    let n = f.dim();
    let id = MatrixF::identity(field, n);
    for g in commutant_basis(f).members() {
        for a in 1..field.modulus() {
            let alpha = id.add(&g.scale(a))?;
            if alpha.rank() != n {
                continue;
            }
            if !subspace_fixed_by(&alpha, x)? {
                return Ok(Some(alpha));
            }
        }
    }
    Ok(None)
}

fn subspace_fixed_by(alpha: &MatrixF, x: &Subspace) -> Result<bool> {
    for row in x.basis_rows() {
        if !x.contains(&alpha.mul_vec(&row)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Embed a component-coordinate map into the ambient space, acting as the
/// identity (`identity_elsewhere`) or as zero on the other components.
fn embed_component_map(
    components: &[EigenComponent],
    which: usize,
    map: &MatrixF,
    identity_elsewhere: bool,
) -> Result<MatrixF> {
    let field = map.field();
    let n: usize = components.iter().map(|c| c.dim()).sum();
    // columns of P are the stacked component basis vectors
    let mut p = MatrixF::zeros(field, n, n);
    let mut col = 0usize;
    for comp in components {
        for row in comp.space.basis_rows() {
            for i in 0..n {
                p.set(i, col, row.entries()[i]);
            }
            col += 1;
        }
    }
    let mut block = MatrixF::zeros(field, n, n);
    let mut offset = 0usize;
    for (ci, comp) in components.iter().enumerate() {
        let d = comp.dim();
        for i in 0..d {
            for j in 0..d {
                let v = if ci == which {
                    map.get(i, j)
                } else if identity_elsewhere && i == j {
                    1
                } else {
                    0
                };
                block.set(offset + i, offset + j, v);
            }
        }
        offset += d;
    }
    let pinv = p.inverse()?.expect("component bases stack to a basis");
    p.mul(&block)?.mul(&pinv)
}

/// Markedness verdict for an invariant subspace of a general operator with
/// split characteristic polynomial: the conjunction of the per-component
/// verdicts against the nilpotent parts.
pub fn marked_verdict(f: &Operator, x: &Subspace, caps: &Caps) -> Result<Verdict> {
    if !is_invariant(f, x)? {
        return Err(Error::NotInvariant);
    }
    if f.is_nilpotent() {
        return Ok(match is_marked(f, x, caps)? {
            Markedness::Marked(_) => Verdict::Yes,
            Markedness::NotMarked => Verdict::No,
            Markedness::Unknown { .. } => Verdict::Unknown,
        });
    }
    let components = decompose(f)?;
    let mut verdict = Verdict::Yes;
    for comp in &components {
        let xc = comp.project_subspace(&x.intersect(&comp.space)?)?;
        let nil = comp.nilpotent_part();
        let part = match is_marked(&nil, &xc, caps)? {
            Markedness::Marked(_) => Verdict::Yes,
            Markedness::NotMarked => Verdict::No,
            Markedness::Unknown { .. } => Verdict::Unknown,
        };
        verdict = verdict.and(part);
    }
    Ok(verdict)
}

/// Does `x` split along the given invariant direct-sum decomposition,
/// i.e. `x = (x ∩ V_1) + ... + (x ∩ V_q)`?
pub fn check_distributivity(f: &Operator, x: &Subspace, parts: &[Subspace]) -> Result<bool> {
    let n = f.dim();
    let mut total = 0usize;
    let mut union = Subspace::zero(f.field(), n);
    for part in parts {
        if !is_invariant(f, part)? {
            return Err(Error::NotADecomposition("a part is not invariant"));
        }
        total += part.dim();
        union = union.sum(part)?;
    }
    if total != n || union.dim() != n {
        return Err(Error::NotADecomposition(
            "parts do not form a direct sum of the whole space",
        ));
    }
    let mut pieces = Subspace::zero(f.field(), n);
    for part in parts {
        pieces = pieces.sum(&x.intersect(part)?)?;
    }
    Ok(&pieces == x)
}

/// Three-valued classification flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Unknown, _) | (_, Unknown) => Unknown,
            (Yes, Yes) => Yes,
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::Unknown => None,
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No => write!(f, "no"),
            Verdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// Per-eigenvalue part of a classification report.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub lambda: u8,
    pub dim: usize,
    pub marked: Verdict,
    pub characteristic: Verdict,
    pub hyperinvariant: Verdict,
    pub marked_witness: Option<MarkedWitness>,
}

/// Full classification of one invariant subspace.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub invariant: Verdict,
    pub marked: Verdict,
    pub characteristic: Verdict,
    pub hyperinvariant: Verdict,
    /// Commuting endomorphism escaping `x`, in ambient coordinates.
    pub hyper_witness: Option<EndoWitness>,
    /// Commuting automorphism moving `x`, in ambient coordinates.
    pub char_witness: Option<MatrixF>,
    pub components: Vec<ComponentReport>,
}

/// Split `x` along the generalized eigenspaces, classify each component
/// against the nilpotent part, and combine. Verdicts agree with the direct
/// ambient-space predicates; witnesses are lifted back to ambient
/// coordinates.
pub fn classify_subspace(
    f: &Operator,
    x: &Subspace,
    caps: &Caps,
    opts: ClassifyOptions,
) -> Result<ClassificationReport> {
    if !is_invariant(f, x)? {
        return Err(Error::NotInvariant);
    }
    let components = decompose(f)?;
    let mut split_dim = 0usize;
    let mut reports = Vec::with_capacity(components.len());
    let mut hyper_witness: Option<EndoWitness> = None;
    let mut char_witness: Option<MatrixF> = None;

    for (ci, comp) in components.iter().enumerate() {
        let ambient_piece = x.intersect(&comp.space)?;
        split_dim += ambient_piece.dim();
        let xc = comp.project_subspace(&ambient_piece)?;
        let nil = comp.nilpotent_part();

        let basis_verdict = is_hyperinvariant(&nil, &xc)?;
        if opts.force_bruteforce {
            // oracle cross-check: the basis sweep must agree with the full
            // commutant sweep
            let full = is_hyperinvariant_bruteforce(&nil, &xc, caps)?;
            assert_eq!(
                basis_verdict.is_none(),
                full.is_none(),
                "internal inconsistency: commutant basis sweep disagrees with the full sweep"
            );
        }
        let hyper = match basis_verdict {
            None => Verdict::Yes,
            Some(w) => {
                if hyper_witness.is_none() {
                    let endo = embed_component_map(&components, ci, &w.endo, false)?;
                    let vector = comp.lift_vector(&w.vector);
                    let image = comp.lift_vector(&w.image);
                    hyper_witness = Some(EndoWitness {
                        endo,
                        vector,
                        image,
                    });
                }
                Verdict::No
            }
        };

        let chv = is_characteristic(&nil, &xc, caps, opts)?;
        let characteristic = Verdict::from(chv.characteristic);
        if !chv.characteristic && char_witness.is_none() {
            if let Some(alpha_c) = chv.witness {
                char_witness = Some(embed_component_map(&components, ci, &alpha_c, true)?);
            }
        }

        let markedness = is_marked(&nil, &xc, caps)?;
        let (marked, marked_witness) = match markedness {
            Markedness::Marked(w) => (Verdict::Yes, Some(w)),
            Markedness::NotMarked => (Verdict::No, None),
            Markedness::Unknown { .. } => (Verdict::Unknown, None),
        };

        reports.push(ComponentReport {
            lambda: comp.lambda,
            dim: xc.dim(),
            marked,
            characteristic,
            hyperinvariant: hyper,
            marked_witness,
        });
    }

    if split_dim != x.dim() {
        return Err(Error::ComponentSplitFailed {
            got: split_dim,
            expected: x.dim(),
        });
    }

    let marked = reports
        .iter()
        .fold(Verdict::Yes, |acc, r| acc.and(r.marked));
    let characteristic = reports
        .iter()
        .fold(Verdict::Yes, |acc, r| acc.and(r.characteristic));
    let hyperinvariant = reports
        .iter()
        .fold(Verdict::Yes, |acc, r| acc.and(r.hyperinvariant));

    // hyperinvariant forces the other two; a computed violation is a defect
    if hyperinvariant == Verdict::Yes {
        assert_ne!(
            characteristic,
            Verdict::No,
            "internal inconsistency: hyperinvariant but not characteristic"
        );
        assert_ne!(
            marked,
            Verdict::No,
            "internal inconsistency: hyperinvariant but not marked"
        );
    }

    Ok(ClassificationReport {
        invariant: Verdict::Yes,
        marked,
        characteristic,
        hyperinvariant,
        hyper_witness,
        char_witness,
        components: reports,
    })
}
