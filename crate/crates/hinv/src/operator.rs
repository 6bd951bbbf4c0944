//! Structural analysis of an endomorphism of GF(p)^n.
//!
//! An [`Operator`] caches its powers `f^0 .. f^n`. From it we get the
//! eigenvalues by trial evaluation of `det(f - a*I)` over all residues, the
//! generalized eigenspace decomposition, and for nilpotent operators the
//! Jordan data: exponents `t_1 <= ... <= t_k` with a generator tuple
//! `U = (u_1, ..., u_k)` such that the cyclic subspaces `<u_i>` decompose the
//! space as a direct sum.
//!
//! Chain extraction is deterministic: levels are processed from the largest
//! exponent down, and each pick is the lexicographically smallest eligible
//! vector in the subspace enumeration order. The same input always yields
//! the same tuple.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::{image, kernel, MatrixF, Subspace, VectorF};

/// Height of a vector: the largest `q` with `x` in the image of `f^q`.
/// The zero vector gets the dedicated bottom element, never an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Bottom,
    Finite(usize),
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Bottom => write!(f, "-inf"),
            Height::Finite(q) => write!(f, "{q}"),
        }
    }
}

/// A square matrix together with its cached powers `f^0 .. f^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    mat: MatrixF,
    powers: Vec<MatrixF>,
}

impl Operator {
    pub fn new(mat: MatrixF) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let n = mat.nrows();
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(MatrixF::identity(mat.field(), n));
        for j in 1..=n {
            let next = powers[j - 1].mul(&mat).expect("square powers");
            powers.push(next);
        }
        Ok(Operator { mat, powers })
    }

    pub fn from_int_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(MatrixF::from_int_rows(field, rows)?)
    }

    /// Canonical nilpotent operator with lower-shift blocks of the given
    /// sizes: block of size t maps its first basis vector down the chain,
    /// `e_1 -> e_2 -> ... -> e_t -> 0` within the block.
    pub fn nilpotent_blocks(field: PrimeField, sizes: &[usize]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        let mut m = MatrixF::zeros(field, n, n);
        let mut offset = 0usize;
        for &t in sizes {
            for i in 1..t {
                m.set(offset + i, offset + i - 1, 1);
            }
            offset += t;
        }
        Self::new(m)
    }

    pub fn field(&self) -> PrimeField {
        self.mat.field()
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &MatrixF {
        &self.mat
    }

    /// `f^j` for `j <= n` from the cache; higher powers are computed.
    pub fn power(&self, j: usize) -> MatrixF {
        if j < self.powers.len() {
            self.powers[j].clone()
        } else {
            let mut acc = self.powers.last().expect("cache nonempty").clone();
            for _ in self.powers.len() - 1..j {
                acc = acc.mul(&self.mat).expect("square powers");
            }
            acc
        }
    }

    pub(crate) fn power_ref(&self, j: usize) -> &MatrixF {
        &self.powers[j]
    }

    pub fn apply(&self, v: &VectorF) -> Result<VectorF> {
        self.mat.mul_vec(v)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.powers[self.dim()].is_zero()
    }

    /// `Ker f^j`, saturated at `j = n`.
    pub fn kernel_of_power(&self, j: usize) -> Subspace {
        kernel(self.power_ref(j.min(self.dim())))
    }

    /// `Im f^j = f^j V`, saturated at `j = n`.
    pub fn image_of_power(&self, j: usize) -> Subspace {
        image(self.power_ref(j.min(self.dim())))
    }

    /// `f - lambda * id`.
    pub fn shifted(&self, lambda: u8) -> Operator {
        let f = self.field();
        let shift = MatrixF::identity(f, self.dim()).scale(f.neg(lambda));
        Operator::new(self.mat.add(&shift).expect("same shape")).expect("square")
    }

    /// Smallest `l >= 0` with `f^l x = 0`; `e(0) = 0`.
    ///
    /// Panics if no cached power kills `x`, which cannot happen for a
    /// nilpotent operator.
    pub fn exponent(&self, x: &VectorF) -> usize {
        let mut cur = x.clone();
        for l in 0..=self.dim() {
            if cur.is_zero() {
                return l;
            }
            cur = self.apply(&cur).expect("ambient match");
        }
        panic!("exponent: no power of the operator annihilates the vector (not nilpotent?)");
    }

    /// Largest `q` with `x` in `f^q V`; bottom for the zero vector.
    pub fn height(&self, x: &VectorF) -> Height {
        if x.is_zero() {
            return Height::Bottom;
        }
        let mut last = 0usize;
        for q in 1..=self.dim() {
            if self
                .image_of_power(q)
                .contains(x)
                .expect("ambient match")
            {
                last = q;
            } else {
                break;
            }
        }
        Height::Finite(last)
    }

    /// `<x>_f = span{x, fx, f^2 x, ...}`.
    pub fn cyclic_subspace(&self, x: &VectorF) -> Subspace {
        let mut rows = Vec::new();
        let mut cur = x.clone();
        for _ in 0..=self.dim() {
            if cur.is_zero() {
                break;
            }
            rows.push(cur.clone());
            cur = self.apply(&cur).expect("ambient match");
        }
        Subspace::from_rows(self.field(), self.dim(), &rows).expect("rows well formed")
    }

    /// The full chain `x, fx, ..., f^{e(x)-1} x` (empty for `x = 0`).
    pub fn chain(&self, x: &VectorF) -> Vec<VectorF> {
        let mut out = Vec::new();
        let mut cur = x.clone();
        while !cur.is_zero() {
            out.push(cur.clone());
            cur = self.apply(&cur).expect("ambient match");
            if out.len() > self.dim() {
                panic!("chain does not terminate (not nilpotent?)");
            }
        }
        out
    }
}

/// Jordan data of a nilpotent operator: non-decreasing exponents `t_i` and
/// generators `u_i` with `e(u_i) = t_i` whose cyclic subspaces form a direct
/// sum equal to the space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanStructure {
    pub exponents: Vec<usize>,
    pub generators: Vec<VectorF>,
}

impl JordanStructure {
    pub fn block_count(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_dim(&self) -> usize {
        self.exponents.iter().sum()
    }

    /// Check the defining invariants against `f`. `space_dim` is the
    /// dimension the chains must fill (the operator's whole space here).
    pub fn validate(&self, f: &Operator) -> Result<()> {
        if self.exponents.len() != self.generators.len() {
            return Err(Error::NotGeneratorTuple("length mismatch"));
        }
        if self.exponents.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NotGeneratorTuple("exponents not sorted"));
        }
        if self.total_dim() != f.dim() {
            return Err(Error::NotGeneratorTuple("exponents do not sum to the dimension"));
        }
        let mut rows = Vec::new();
        for (u, &t) in self.generators.iter().zip(&self.exponents) {
            if f.exponent(u) != t {
                return Err(Error::NotGeneratorTuple("generator has the wrong exponent"));
            }
            rows.extend(f.chain(u));
        }
        let span = Subspace::from_rows(f.field(), f.dim(), &rows)?;
        if span.dim() != f.dim() {
            return Err(Error::NotGeneratorTuple("chains are not independent"));
        }
        Ok(())
    }

    /// Matrix whose columns are the Jordan basis vectors in chain order:
    /// `u_1, f u_1, ..., f^{t_1-1} u_1, u_2, ...`. Invertible for a valid
    /// tuple.
    pub fn chain_matrix(&self, f: &Operator) -> MatrixF {
        let n = f.dim();
        let mut cols: Vec<VectorF> = Vec::with_capacity(n);
        for u in &self.generators {
            cols.extend(f.chain(u));
        }
        MatrixF::from_fn(f.field(), n, cols.len(), |r, c| cols[c].entries()[r])
    }
}

/// All eigenvalues in GF(p) with algebraic multiplicities, found by trial
/// evaluation of `det(f - a*I)` over every residue; multiplicity is
/// `dim Ker (f - a*I)^n`. Errors if the multiplicities do not sum to `n`,
/// i.e. the characteristic polynomial does not split over GF(p).
pub fn eigenvalues(f: &Operator) -> Result<Vec<(u8, usize)>> {
    let field = f.field();
    let n = f.dim();
    let mut out = Vec::new();
    for lambda in field.elements() {
        let shifted = f.shifted(lambda);
        if shifted.matrix().det()? == 0 {
            let mult = shifted.kernel_of_power(n).dim();
            out.push((lambda, mult));
        }
    }
    let found: usize = out.iter().map(|&(_, m)| m).sum();
    if found != n {
        return Err(Error::NonSplitCharPoly { found, dim: n });
    }
    Ok(out)
}

/// One generalized eigenspace `V_lambda = Ker (f - lambda*I)^n` together
/// with the restriction of `f` expressed in the RREF basis of the component.
#[derive(Debug, Clone)]
pub struct EigenComponent {
    pub lambda: u8,
    pub space: Subspace,
    /// `f` restricted to the component, in component coordinates.
    pub restriction: Operator,
}

impl EigenComponent {
    /// `(f - lambda) | V_lambda` in component coordinates; nilpotent.
    pub fn nilpotent_part(&self) -> Operator {
        self.restriction.shifted(self.lambda)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Express a subspace of the component (given in ambient coordinates,
    /// must be contained in `space`) in component coordinates.
    pub fn project_subspace(&self, x: &Subspace) -> Result<Subspace> {
        let mut rows = Vec::new();
        for row in x.basis_rows() {
            let coords = self
                .space
                .coords(&row)?
                .ok_or(Error::NotInvariant)?;
            rows.push(VectorF::new(self.space.field(), coords));
        }
        Subspace::from_rows(self.space.field(), self.space.dim(), &rows)
    }

    /// Lift a component-coordinate vector back to ambient coordinates.
    pub fn lift_vector(&self, v: &VectorF) -> VectorF {
        self.space.lift(v.entries())
    }

    pub fn lift_subspace(&self, x: &Subspace) -> Subspace {
        let rows: Vec<VectorF> = x.basis_rows().map(|r| self.lift_vector(&r)).collect();
        Subspace::from_rows(self.space.field(), self.space.ambient(), &rows)
            .expect("lifted rows are well formed")
    }
}

/// Restriction of `f` to an invariant subspace, in the RREF basis of `x`.
pub fn restriction_matrix(f: &Operator, x: &Subspace) -> Result<MatrixF> {
    if x.ambient() != f.dim() {
        return Err(Error::AmbientMismatch {
            left: f.dim(),
            right: x.ambient(),
        });
    }
    let m = x.dim();
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(m);
    for row in x.basis_rows() {
        let image = f.apply(&row)?;
        let coords = x.coords(&image)?.ok_or(Error::NotInvariant)?;
        cols.push(coords);
    }
    Ok(MatrixF::from_fn(f.field(), m, m, |r, c| cols[c][r]))
}

/// Generalized eigenspace decomposition. Components are f-invariant,
/// pairwise independent, and span the whole space; each nilpotent part is
/// nilpotent by construction.
pub fn decompose(f: &Operator) -> Result<Vec<EigenComponent>> {
    let eigs = eigenvalues(f)?;
    let n = f.dim();
    let mut components = Vec::with_capacity(eigs.len());
    let mut covered = 0usize;
    for (lambda, mult) in eigs {
        let space = f.shifted(lambda).kernel_of_power(n);
        debug_assert_eq!(space.dim(), mult);
        let restriction = Operator::new(restriction_matrix(f, &space)?)?;
        debug_assert!(restriction.shifted(lambda).is_nilpotent());
        covered += space.dim();
        components.push(EigenComponent {
            lambda,
            space,
            restriction,
        });
    }
    if covered != n {
        return Err(Error::ComponentSplitFailed {
            got: covered,
            expected: n,
        });
    }
    Ok(components)
}

/// Deterministic Jordan structure of a nilpotent operator.
///
/// Levels are processed from the largest exponent down. At level `j` the
/// eligible vectors are those of `Ker f^j` outside
/// `Ker f^{j-1} + f(Ker f^{j+1}) + <picks at this level>`, and each pick is
/// the lexicographically smallest eligible vector in enumeration order.
pub fn jordan_structure(f: &Operator) -> Result<JordanStructure> {
    if !f.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = f.dim();
    let kernels: Vec<Subspace> = (0..=n + 1).map(|j| f.kernel_of_power(j)).collect();
    let tmax = (0..=n).find(|&j| kernels[j].dim() == n).unwrap_or(n);

    let mut picks: Vec<(usize, VectorF)> = Vec::new(); // (exponent, generator)
    for j in (1..=tmax).rev() {
        // image of the next kernel under f
        let mapped: Vec<VectorF> = kernels[j + 1]
            .basis_rows()
            .map(|v| f.apply(&v).expect("ambient match"))
            .collect();
        let f_next = Subspace::from_rows(f.field(), n, &mapped)?;
        let mut bad = kernels[j - 1].sum(&f_next)?;
        while let Some(v) = kernels[j].min_lex_not_in(&bad)? {
            bad = bad.sum(&Subspace::from_rows(f.field(), n, std::slice::from_ref(&v))?)?;
            picks.push((j, v));
        }
    }

    // ascending exponents, stable pick order within a level
    picks.sort_by_key(|&(t, _)| t);
    let exponents: Vec<usize> = picks.iter().map(|&(t, _)| t).collect();
    let generators: Vec<VectorF> = picks.into_iter().map(|(_, v)| v).collect();
    let js = JordanStructure {
        exponents,
        generators,
    };
    debug_assert!(js.validate(f).is_ok());
    Ok(js)
}

/// Exponent multiset of a nilpotent operator straight from kernel
/// dimensions, without choosing generators: the number of blocks of size
/// at least `j` is `dim Ker f^j - dim Ker f^{j-1}`.
pub fn exponents_from_kernels(f: &Operator) -> Result<Vec<usize>> {
    if !f.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let n = f.dim();
    let dims: Vec<usize> = (0..=n).map(|j| f.kernel_of_power(j).dim()).collect();
    let mut exps = Vec::new();
    for j in 1..=n {
        let at_least_j = dims[j] - dims[j - 1];
        let at_least_j1 = if j < n { dims[j + 1] - dims[j] } else { 0 };
        for _ in 0..at_least_j.saturating_sub(at_least_j1) {
            exps.push(j);
        }
    }
    exps.sort_unstable();
    Ok(exps)
}

/// Jordan structure of `f` restricted to an invariant subspace, expressed
/// in the coordinates of the RREF basis of `x`; the basis itself is the
/// coordinate map back to ambient space.
pub fn restriction_structure(f: &Operator, x: &Subspace) -> Result<(JordanStructure, MatrixF)> {
    let rmat = restriction_matrix(f, x)?;
    let rop = Operator::new(rmat)?;
    let js = jordan_structure(&rop)?;
    Ok((js, x.basis().clone()))
}

/// Elementary divisor exponents of the operator induced on `V / x`,
/// computed in the complement coordinates of the non-pivot columns; the
/// result is basis independent. Empty for `x = V`.
pub fn quotient_structure(f: &Operator, x: &Subspace) -> Result<Vec<usize>> {
    if x.ambient() != f.dim() {
        return Err(Error::AmbientMismatch {
            left: f.dim(),
            right: x.ambient(),
        });
    }
    // invariance check
    for row in x.basis_rows() {
        if !x.contains(&f.apply(&row)?)? {
            return Err(Error::NotInvariant);
        }
    }
    let n = f.dim();
    let pivots = x.pivots();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let m = free.len();
    let field = f.field();
    let mut cols: Vec<Vec<u8>> = Vec::with_capacity(m);
    for &j in &free {
        let w = f.apply(&VectorF::unit(field, n, j))?;
        let res = x.reduce(&w)?;
        cols.push(free.iter().map(|&c| res.entries()[c]).collect());
    }
    let induced = Operator::new(MatrixF::from_fn(field, m, m, |r, c| cols[c][r]))?;
    exponents_from_kernels(&induced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u16) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// f = diag(0, N3) over GF(2).
    fn ex_shift_1_3() -> Operator {
        Operator::nilpotent_blocks(gf(2), &[1, 3]).unwrap()
    }

    /// f = diag(N2, N3) over GF(2).
    fn ex_shift_2_3() -> Operator {
        Operator::nilpotent_blocks(gf(2), &[2, 3]).unwrap()
    }

    #[test]
    fn eigenvalues_of_nilpotent_block() {
        let f = ex_shift_2_3();
        assert_eq!(eigenvalues(&f).unwrap(), vec![(0, 5)]);
    }

    #[test]
    fn eigenvalues_of_identity() {
        let f = Operator::new(MatrixF::identity(gf(3), 2)).unwrap();
        assert_eq!(eigenvalues(&f).unwrap(), vec![(1, 2)]);
    }

    #[test]
    fn non_split_char_poly_is_detected() {
        // companion matrix of x^2 + x + 1 over GF(2); no roots at 0 or 1
        let f = Operator::from_int_rows(gf(2), &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(
            eigenvalues(&f),
            Err(Error::NonSplitCharPoly { found: 0, dim: 2 })
        );
    }

    #[test]
    fn decompose_diagonal() {
        let f = Operator::from_int_rows(gf(3), &[vec![1, 0], vec![0, 0]]).unwrap();
        let comps = decompose(&f).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.dim() == 1));
        let lambdas: Vec<u8> = comps.iter().map(|c| c.lambda).collect();
        assert_eq!(lambdas, vec![0, 1]);
        for c in &comps {
            assert!(c.nilpotent_part().is_nilpotent());
        }
    }

    #[test]
    fn decompose_single_component() {
        let f = ex_shift_1_3();
        let comps = decompose(&f).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].lambda, 0);
        assert!(comps[0].space.is_full_space());
        // restriction similar to f itself
        assert_eq!(
            exponents_from_kernels(&comps[0].nilpotent_part()).unwrap(),
            vec![1, 3]
        );
    }

    #[test]
    fn jordan_structure_examples() {
        let gf2 = gf(2);
        let f = ex_shift_1_3();
        let js = jordan_structure(&f).unwrap();
        assert_eq!(js.exponents, vec![1, 3]);
        assert_eq!(
            js.generators,
            vec![VectorF::unit(gf2, 4, 0), VectorF::unit(gf2, 4, 1)]
        );

        let g = ex_shift_2_3();
        let js = jordan_structure(&g).unwrap();
        assert_eq!(js.exponents, vec![2, 3]);
        assert_eq!(
            js.generators,
            vec![VectorF::unit(gf2, 5, 0), VectorF::unit(gf2, 5, 2)]
        );

        let zero = Operator::new(MatrixF::zeros(gf2, 2, 2)).unwrap();
        let js = jordan_structure(&zero).unwrap();
        assert_eq!(js.exponents, vec![1, 1]);
    }

    #[test]
    fn jordan_requires_nilpotent() {
        let f = Operator::new(MatrixF::identity(gf(2), 2)).unwrap();
        assert_eq!(jordan_structure(&f), Err(Error::NotNilpotent));
    }

    #[test]
    fn exponent_and_height_examples() {
        let f = ex_shift_1_3();
        let gf2 = gf(2);
        let z = VectorF::from_ints(gf2, &[1, 0, 1, 0]); // e1 + e3
        assert_eq!(f.exponent(&z), 2);
        assert_eq!(f.exponent(&VectorF::zero(gf2, 4)), 0);
        // e2 -> e3 -> e4 -> 0
        assert_eq!(f.exponent(&VectorF::unit(gf2, 4, 1)), 3);

        assert_eq!(f.height(&z), Height::Finite(0));
        let fz = f.apply(&z).unwrap(); // = e4
        assert_eq!(fz, VectorF::unit(gf2, 4, 3));
        assert_eq!(f.height(&fz), Height::Finite(2));
        assert_eq!(f.height(&VectorF::zero(gf2, 4)), Height::Bottom);
        assert!(Height::Bottom < Height::Finite(0));
    }

    #[test]
    fn cyclic_subspace_examples() {
        let f = ex_shift_1_3();
        let gf2 = gf(2);
        let z = VectorF::from_ints(gf2, &[1, 0, 1, 0]);
        let cz = f.cyclic_subspace(&z);
        let expect = Subspace::from_rows(
            gf2,
            4,
            &[z.clone(), VectorF::unit(gf2, 4, 3)],
        )
        .unwrap();
        assert_eq!(cz, expect);
        assert_eq!(cz.dim(), f.exponent(&z));

        assert!(f.cyclic_subspace(&VectorF::zero(gf2, 4)).is_zero_space());

        let g = ex_shift_2_3();
        let c3 = g.cyclic_subspace(&VectorF::unit(gf2, 5, 2));
        let expect = Subspace::from_rows(
            gf2,
            5,
            &[
                VectorF::unit(gf2, 5, 2),
                VectorF::unit(gf2, 5, 3),
                VectorF::unit(gf2, 5, 4),
            ],
        )
        .unwrap();
        assert_eq!(c3, expect);
    }

    #[test]
    fn restriction_structure_examples() {
        let f = ex_shift_1_3();
        let gf2 = gf(2);
        let z = Subspace::from_rows(
            gf2,
            4,
            &[VectorF::from_ints(gf2, &[1, 0, 1, 0]), VectorF::unit(gf2, 4, 3)],
        )
        .unwrap();
        // Z is cyclic, generated by a vector of exponent 2
        let (js, _) = restriction_structure(&f, &z).unwrap();
        assert_eq!(js.exponents, vec![2]);

        let whole = Subspace::full(gf2, 4);
        let (js, _) = restriction_structure(&f, &whole).unwrap();
        assert_eq!(js.exponents, jordan_structure(&f).unwrap().exponents);

        // V[f] = span{e1, e4}; f vanishes there
        let vf = f.kernel_of_power(1);
        let (js, _) = restriction_structure(&f, &vf).unwrap();
        assert_eq!(js.exponents, vec![1, 1]);

        // non-invariant subspace errors
        let bad = Subspace::from_rows(gf2, 4, &[VectorF::unit(gf2, 4, 1)]).unwrap();
        assert!(matches!(
            restriction_structure(&f, &bad),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn quotient_structure_examples() {
        let f = ex_shift_1_3();
        let zero = Subspace::zero(gf(2), 4);
        assert_eq!(quotient_structure(&f, &zero).unwrap(), vec![1, 3]);
        let full = Subspace::full(gf(2), 4);
        assert_eq!(quotient_structure(&f, &full).unwrap(), Vec::<usize>::new());
        // X = fV: the induced operator has exponents {1, 1}
        let fv = f.image_of_power(1);
        assert_eq!(quotient_structure(&f, &fv).unwrap(), vec![1, 1]);
    }

    #[test]
    fn kernel_image_monotone_in_powers() {
        let f = ex_shift_2_3();
        for a in 0..=5usize {
            for b in a..=5usize {
                assert!(f
                    .kernel_of_power(a)
                    .is_subspace_of(&f.kernel_of_power(b))
                    .unwrap());
                assert!(f
                    .image_of_power(b)
                    .is_subspace_of(&f.image_of_power(a))
                    .unwrap());
            }
        }
    }

    #[test]
    fn exponents_from_kernels_matches_jordan() {
        for p in [2u16, 3] {
            for sizes in [vec![1], vec![2], vec![1, 1], vec![1, 3], vec![2, 3], vec![1, 2, 2]] {
                let f = Operator::nilpotent_blocks(gf(p), &sizes).unwrap();
                let mut expect = sizes.clone();
                expect.sort_unstable();
                assert_eq!(exponents_from_kernels(&f).unwrap(), expect);
                assert_eq!(jordan_structure(&f).unwrap().exponents, expect);
            }
        }
    }
}
