//! Enumeration of generator tuples of a nilpotent operator and the sweeps
//! built on it.
//!
//! A generator tuple `U = (u_1, ..., u_k)` has `e(u_i) = t_i` and
//! `V = <u_1> + ... + <u_k>` as a direct sum, ordered by the fixed exponent
//! list. Tuples are enumerated by backtracking over per-exponent candidate
//! lists in vector enumeration order, with the canonical Jordan tuple
//! emitted first; the order is deterministic, every tuple appears exactly
//! once, and sweeps report the first witness in that order.
//!
//! Each automorphism commuting with `f` corresponds to exactly one tuple
//! (it is determined by the images of a fixed tuple), so sweeping tuples is
//! sweeping the automorphism group.
//!
//! For p = 2 with ambient dimension at most 64 the whole walk runs on
//! bit-packed rows.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::gf2::{pack_row, rref_packed_in_place, PackedSpan};
use crate::linalg::{MatrixF, Subspace, VectorF};
use crate::marked::{w_ru, ExponentTuple};
use crate::operator::{jordan_structure, JordanStructure, Operator};

/// Visitor control flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Incremental echelon span over generic entries with stack discipline.
#[derive(Debug, Clone)]
pub struct GenericSpan {
    field: PrimeField,
    n: usize,
    rows: Vec<(Vec<u8>, usize)>, // (normalized row, pivot col)
}

impl GenericSpan {
    pub fn new(field: PrimeField, n: usize) -> Self {
        GenericSpan {
            field,
            n,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut [u8]) {
        let f = self.field;
        for (row, piv) in &self.rows {
            let c = v[*piv];
            if c == 0 {
                continue;
            }
            for j in *piv..self.n {
                let sub = f.mul(c, row[j]);
                v[j] = f.sub(v[j], sub);
            }
        }
    }

    pub fn contains(&self, v: &VectorF) -> bool {
        let mut r = v.entries().to_vec();
        self.reduce_in_place(&mut r);
        r.iter().all(|&c| c == 0)
    }

    /// Insert if independent; returns whether the rank grew.
    pub fn insert(&mut self, v: &VectorF) -> bool {
        let mut r = v.entries().to_vec();
        self.reduce_in_place(&mut r);
        let Some(piv) = r.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.field.inv(r[piv]).expect("pivot nonzero");
        if inv != 1 {
            for c in r.iter_mut() {
                *c = self.field.mul(*c, inv);
            }
        }
        self.rows.push((r, piv));
        true
    }

    pub fn truncate(&mut self, rank: usize) {
        self.rows.truncate(rank);
    }
}

struct LevelCandidates {
    vectors: Vec<VectorF>,
    chains: Vec<Vec<VectorF>>,
    packed_chains: Vec<Vec<u64>>, // empty unless packed mode
}

/// Prepared enumeration state for one nilpotent operator.
pub(crate) struct TupleEnum {
    field: PrimeField,
    n: usize,
    exponents: Vec<usize>,
    canonical: JordanStructure,
    level_of_position: Vec<usize>,
    levels: Vec<LevelCandidates>,
    canonical_indices: Vec<usize>,
    packed: bool,
}

impl TupleEnum {
    pub(crate) fn build(f: &Operator, caps: &Caps) -> Result<Self> {
        let canonical = jordan_structure(f)?;
        let exponents = canonical.exponents.clone();
        let field = f.field();
        let n = f.dim();
        let packed = field.modulus() == 2 && n <= 64;

        let mut distinct: Vec<usize> = exponents.clone();
        distinct.dedup();
        let mut levels = Vec::with_capacity(distinct.len());
        for &t in &distinct {
            let upper = f.kernel_of_power(t);
            let lower = f.kernel_of_power(t - 1);
            let mut vectors = Vec::new();
            let mut chains = Vec::new();
            let mut packed_chains = Vec::new();
            for v in upper.enumerate_vectors(caps.vectors)? {
                if lower.contains(&v)? {
                    continue;
                }
                let chain = f.chain(&v);
                debug_assert_eq!(chain.len(), t);
                if packed {
                    packed_chains.push(chain.iter().map(|c| pack_row(c.entries())).collect());
                }
                vectors.push(v);
                chains.push(chain);
            }
            levels.push(LevelCandidates {
                vectors,
                chains,
                packed_chains,
            });
        }

        let level_of_position: Vec<usize> = exponents
            .iter()
            .map(|t| distinct.iter().position(|d| d == t).expect("level exists"))
            .collect();
        let canonical_indices: Vec<usize> = canonical
            .generators
            .iter()
            .zip(&level_of_position)
            .map(|(g, &lv)| {
                levels[lv]
                    .vectors
                    .iter()
                    .position(|v| v == g)
                    .expect("canonical generator is a candidate")
            })
            .collect();

        Ok(TupleEnum {
            field,
            n,
            exponents,
            canonical,
            level_of_position,
            levels,
            canonical_indices,
            packed,
        })
    }

    pub(crate) fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub(crate) fn canonical(&self) -> &JordanStructure {
        &self.canonical
    }

    pub(crate) fn chain(&self, pos: usize, idx: usize) -> &[VectorF] {
        &self.levels[self.level_of_position[pos]].chains[idx]
    }

    fn packed_chain(&self, pos: usize, idx: usize) -> &[u64] {
        &self.levels[self.level_of_position[pos]].packed_chains[idx]
    }

    pub(crate) fn materialize(&self, indices: &[usize]) -> JordanStructure {
        let generators: Vec<VectorF> = indices
            .iter()
            .enumerate()
            .map(|(pos, &idx)| self.levels[self.level_of_position[pos]].vectors[idx].clone())
            .collect();
        JordanStructure {
            exponents: self.exponents.clone(),
            generators,
        }
    }

    /// Visit every tuple exactly once: the canonical tuple first, then the
    /// rest in backtracking order. Stops early when the visitor says so or
    /// when the tuple cap is exceeded, which is an error.
    pub(crate) fn visit_indices(
        &self,
        cap: u64,
        visit: &mut impl FnMut(&[usize]) -> Flow,
    ) -> Result<()> {
        let mut count: u64 = 1;
        if visit(&self.canonical_indices) == Flow::Stop {
            return Ok(());
        }
        let k = self.exponents.len();
        let mut indices = vec![0usize; k];
        let mut capped = false;
        let flow = if self.packed {
            let mut span = PackedSpan::new();
            self.recurse_packed(0, &mut indices, &mut span, cap, &mut count, &mut capped, visit)
        } else {
            let mut span = GenericSpan::new(self.field, self.n);
            self.recurse_generic(0, &mut indices, &mut span, cap, &mut count, &mut capped, visit)
        };
        if capped {
            return Err(Error::EnumerationTooLarge {
                what: "generator tuple",
                needed: cap as u128 + 1,
                cap,
            });
        }
        let _ = flow;
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse_generic(
        &self,
        pos: usize,
        indices: &mut Vec<usize>,
        span: &mut GenericSpan,
        cap: u64,
        count: &mut u64,
        capped: &mut bool,
        visit: &mut impl FnMut(&[usize]) -> Flow,
    ) -> Flow {
        let k = self.exponents.len();
        if pos == k {
            if indices.as_slice() == self.canonical_indices.as_slice() {
                return Flow::Continue;
            }
            *count += 1;
            if *count > cap {
                *capped = true;
                return Flow::Stop;
            }
            return visit(indices);
        }
        let level = &self.levels[self.level_of_position[pos]];
        for idx in 0..level.chains.len() {
            let mark = span.rank();
            let mut ok = true;
            for link in &level.chains[idx] {
                if !span.insert(link) {
                    ok = false;
                    break;
                }
            }
            if ok {
                indices[pos] = idx;
                let flow =
                    self.recurse_generic(pos + 1, indices, span, cap, count, capped, visit);
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
            }
            span.truncate(mark);
        }
        Flow::Continue
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse_packed(
        &self,
        pos: usize,
        indices: &mut Vec<usize>,
        span: &mut PackedSpan,
        cap: u64,
        count: &mut u64,
        capped: &mut bool,
        visit: &mut impl FnMut(&[usize]) -> Flow,
    ) -> Flow {
        let k = self.exponents.len();
        if pos == k {
            if indices.as_slice() == self.canonical_indices.as_slice() {
                return Flow::Continue;
            }
            *count += 1;
            if *count > cap {
                *capped = true;
                return Flow::Stop;
            }
            return visit(indices);
        }
        let level = &self.levels[self.level_of_position[pos]];
        for idx in 0..level.packed_chains.len() {
            let mark = span.rank();
            let mut ok = true;
            for &link in &level.packed_chains[idx] {
                if !span.insert(link) {
                    ok = false;
                    break;
                }
            }
            if ok {
                indices[pos] = idx;
                let flow =
                    self.recurse_packed(pos + 1, indices, span, cap, count, capped, visit);
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
            }
            span.truncate(mark);
        }
        Flow::Continue
    }
}

/// Stream every generator tuple of a nilpotent operator, canonical tuple
/// first, each exactly once, in deterministic order.
pub fn visit_generator_tuples(
    f: &Operator,
    caps: &Caps,
    visit: &mut dyn FnMut(&JordanStructure) -> Flow,
) -> Result<()> {
    let ctx = TupleEnum::build(f, caps)?;
    ctx.visit_indices(caps.tuples, &mut |indices| visit(&ctx.materialize(indices)))
}

/// Collect all generator tuples; errors if there are more than the cap.
pub fn enumerate_generator_tuples(f: &Operator, caps: &Caps) -> Result<Vec<JordanStructure>> {
    let mut out = Vec::new();
    visit_generator_tuples(f, caps, &mut |js| {
        out.push(js.clone());
        Flow::Continue
    })?;
    Ok(out)
}

/// Exact number of generator tuples (equivalently, of automorphisms
/// commuting with `f`); errors past the cap.
pub fn count_generator_tuples(f: &Operator, caps: &Caps) -> Result<u64> {
    let ctx = TupleEnum::build(f, caps)?;
    let mut count: u64 = 0;
    ctx.visit_indices(caps.tuples, &mut |_| {
        count += 1;
        Flow::Continue
    })?;
    Ok(count)
}

/// Outcome of a `W(r, .)` uniformity sweep over all generator tuples.
#[derive(Debug, Clone)]
pub struct UniformityOutcome {
    pub tuples_checked: u64,
    pub reference: Subspace,
    /// First tuple (in enumeration order) whose subspace differs.
    pub mismatch: Option<(JordanStructure, Subspace)>,
}

impl UniformityOutcome {
    pub fn uniform(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Sweep `W(r, U)` over every generator tuple `U` and compare against the
/// canonical one. Exhaustive up to the tuple cap; errors past it.
pub fn w_uniformity(f: &Operator, r: &ExponentTuple, caps: &Caps) -> Result<UniformityOutcome> {
    let mut out = w_uniformity_multi(f, std::slice::from_ref(r), caps)?;
    Ok(out.pop().expect("one tuple in, one outcome out"))
}

/// Uniformity sweep for several depth tuples in a single enumeration walk.
/// A tuple drops out of the walk once its first mismatch is found; tuples
/// that stay uniform are checked against every generator tuple.
pub fn w_uniformity_multi(
    f: &Operator,
    rs: &[ExponentTuple],
    caps: &Caps,
) -> Result<Vec<UniformityOutcome>> {
    let ctx = TupleEnum::build(f, caps)?;
    for r in rs {
        if r.exponents() != ctx.exponents() || !r.is_admissible() {
            return Err(Error::NotAdmissible);
        }
    }
    let references: Vec<Subspace> = rs
        .iter()
        .map(|r| w_ru(f, ctx.canonical(), r))
        .collect::<Result<_>>()?;
    let k = ctx.exponents().len();
    let mut checked: Vec<u64> = vec![0; rs.len()];
    let mut mismatches: Vec<Option<(JordanStructure, Subspace)>> = vec![None; rs.len()];
    let mut active: Vec<usize> = (0..rs.len()).collect();

    if ctx.packed {
        let ref_rows: Vec<Vec<u64>> = references
            .iter()
            .map(|reference| {
                (0..reference.dim())
                    .map(|i| pack_row(reference.basis().row_slice(i)))
                    .collect()
            })
            .collect();
        let mut rows: Vec<u64> = Vec::with_capacity(ctx.n);
        ctx.visit_indices(caps.tuples, &mut |indices| {
            let mut ai = 0;
            while ai < active.len() {
                let ri = active[ai];
                checked[ri] += 1;
                rows.clear();
                for pos in 0..k {
                    let chain = ctx.packed_chain(pos, indices[pos]);
                    rows.extend_from_slice(&chain[rs[ri].depths()[pos]..]);
                }
                rref_packed_in_place(&mut rows);
                if rows != ref_rows[ri] {
                    let js = ctx.materialize(indices);
                    let w = w_ru(f, &js, &rs[ri]).expect("tuple is valid");
                    mismatches[ri] = Some((js, w));
                    active.swap_remove(ai);
                } else {
                    ai += 1;
                }
            }
            if active.is_empty() {
                Flow::Stop
            } else {
                Flow::Continue
            }
        })?;
    } else {
        ctx.visit_indices(caps.tuples, &mut |indices| {
            let mut ai = 0;
            while ai < active.len() {
                let ri = active[ai];
                checked[ri] += 1;
                let mut rows: Vec<VectorF> = Vec::with_capacity(ctx.n);
                for pos in 0..k {
                    let chain = ctx.chain(pos, indices[pos]);
                    rows.extend_from_slice(&chain[rs[ri].depths()[pos]..]);
                }
                let w = Subspace::from_rows(ctx.field, ctx.n, &rows).expect("rows well formed");
                if w != references[ri] {
                    mismatches[ri] = Some((ctx.materialize(indices), w));
                    active.swap_remove(ai);
                } else {
                    ai += 1;
                }
            }
            if active.is_empty() {
                Flow::Stop
            } else {
                Flow::Continue
            }
        })?;
    }

    Ok(references
        .into_iter()
        .zip(checked)
        .zip(mismatches)
        .map(|((reference, tuples_checked), mismatch)| UniformityOutcome {
            tuples_checked,
            reference,
            mismatch,
        })
        .collect())
}

/// Automorphism sweep for a nilpotent operator: find the first tuple whose
/// induced automorphism moves `x`. `None` means `x` is fixed by the whole
/// group. Assumes `x` is invariant.
pub(crate) fn characteristic_sweep(
    f: &Operator,
    x: &Subspace,
    caps: &Caps,
) -> Result<Option<MatrixF>> {
    if x.is_zero_space() || x.is_full_space() {
        // fixed setwise by any automorphism
        return Ok(None);
    }
    let ctx = TupleEnum::build(f, caps)?;
    let n = ctx.n;
    let canon_chain = ctx.canonical().chain_matrix(f);
    let canon_inv = canon_chain
        .inverse()?
        .expect("chain matrix of a generator tuple is invertible");
    // coordinates of each basis vector of x in the canonical Jordan basis
    let coord_cols: Vec<VectorF> = x
        .basis_rows()
        .map(|row| canon_inv.mul_vec(&row).expect("square"))
        .collect();

    let mut witness_indices: Option<Vec<usize>> = None;

    if ctx.packed {
        let coord_masks: Vec<u64> = coord_cols.iter().map(|c| pack_row(c.entries())).collect();
        let mut xspan = PackedSpan::new();
        for row in x.basis_rows() {
            let grew = xspan.insert(pack_row(row.entries()));
            debug_assert!(grew);
        }
        let mut chain_flat: Vec<u64> = vec![0; n];
        ctx.visit_indices(caps.tuples, &mut |indices| {
            let mut m = 0usize;
            for (pos, &idx) in indices.iter().enumerate() {
                for &link in ctx.packed_chain(pos, idx) {
                    chain_flat[m] = link;
                    m += 1;
                }
            }
            for &mask in &coord_masks {
                let mut image = 0u64;
                let mut bits = mask;
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    image ^= chain_flat[j];
                    bits &= bits - 1;
                }
                if !xspan.contains(image) {
                    witness_indices = Some(indices.to_vec());
                    return Flow::Stop;
                }
            }
            Flow::Continue
        })?;
    } else {
        let field = ctx.field;
        ctx.visit_indices(caps.tuples, &mut |indices| {
            let mut chain_flat: Vec<&VectorF> = Vec::with_capacity(n);
            for (pos, &idx) in indices.iter().enumerate() {
                chain_flat.extend(ctx.chain(pos, idx).iter());
            }
            for coords in &coord_cols {
                let mut image = VectorF::zero(field, n);
                for (j, &c) in coords.entries().iter().enumerate() {
                    if c != 0 {
                        image = image.add(&chain_flat[j].scale(c)).expect("same ambient");
                    }
                }
                if !x.contains(&image).expect("same ambient") {
                    witness_indices = Some(indices.to_vec());
                    return Flow::Stop;
                }
            }
            Flow::Continue
        })?;
    }

    match witness_indices {
        None => Ok(None),
        Some(indices) => {
            let js = ctx.materialize(&indices);
            let alpha = js.chain_matrix(f).mul(&canon_inv)?;
            Ok(Some(alpha))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u16) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn tuple_counts_for_tiny_operators() {
        let caps = Caps::default();
        // f = 0 on GF(2)^2: ordered bases, (4-1)(4-2) = 6
        let zero = Operator::new(MatrixF::zeros(gf(2), 2, 2)).unwrap();
        assert_eq!(count_generator_tuples(&zero, &caps).unwrap(), 6);
        let tuples = enumerate_generator_tuples(&zero, &caps).unwrap();
        assert_eq!(tuples.len(), 6);
        // all distinct
        for i in 0..tuples.len() {
            for j in (i + 1)..tuples.len() {
                assert_ne!(tuples[i].generators, tuples[j].generators);
            }
        }

        // f = N2 on GF(2)^2: generators of exponent 2 are e1 and e1+e2
        let n2 = Operator::nilpotent_blocks(gf(2), &[2]).unwrap();
        let tuples = enumerate_generator_tuples(&n2, &caps).unwrap();
        assert_eq!(tuples.len(), 2);
        let gf2 = gf(2);
        let got: Vec<&VectorF> = tuples.iter().map(|t| &t.generators[0]).collect();
        assert_eq!(
            got,
            vec![
                &VectorF::unit(gf2, 2, 0),
                &VectorF::from_ints(gf2, &[1, 1])
            ]
        );
    }

    #[test]
    fn group_orders_for_the_reference_structure() {
        // for diag(0, N3) an automorphism sends (e1, e2) to
        // (a e1 + b e4, c e2 + d e3 + g e4 + h e1) with a, c nonzero, so
        // the order is (p-1) p (p-1) p^3
        let caps = Caps::exhaustive();
        let f2 = Operator::nilpotent_blocks(gf(2), &[1, 3]).unwrap();
        assert_eq!(count_generator_tuples(&f2, &caps).unwrap(), 16);
        let f3 = Operator::nilpotent_blocks(gf(3), &[1, 3]).unwrap();
        assert_eq!(count_generator_tuples(&f3, &caps).unwrap(), 324);
    }

    #[test]
    fn first_tuple_is_canonical() {
        let caps = Caps::default();
        for (p, sizes) in [
            (2u16, vec![1usize, 3]),
            (2, vec![2, 3]),
            (2, vec![1, 1]),
            (3, vec![1, 2]),
            (3, vec![2, 2]),
        ] {
            let f = Operator::nilpotent_blocks(gf(p), &sizes).unwrap();
            let canonical = jordan_structure(&f).unwrap();
            let mut first = None;
            visit_generator_tuples(&f, &caps, &mut |js| {
                first = Some(js.clone());
                Flow::Stop
            })
            .unwrap();
            assert_eq!(first.unwrap(), canonical, "p={p} sizes={sizes:?}");
        }
    }

    #[test]
    fn every_emitted_tuple_is_valid_and_unique() {
        let caps = Caps::default();
        for (p, sizes) in [(2u16, vec![1usize, 2]), (3, vec![1, 1]), (2, vec![1, 1, 2])] {
            let f = Operator::nilpotent_blocks(gf(p), &sizes).unwrap();
            let tuples = enumerate_generator_tuples(&f, &caps).unwrap();
            for t in &tuples {
                t.validate(&f).unwrap();
            }
            for i in 0..tuples.len() {
                for j in (i + 1)..tuples.len() {
                    assert_ne!(tuples[i].generators, tuples[j].generators);
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_bruteforce_oracle() {
        // independent oracle: test every pair of ambient vectors for the
        // generator-tuple property and compare sets
        let caps = Caps::default();
        for (p, sizes) in [(2u16, vec![1usize, 2]), (3, vec![1, 1])] {
            let f = Operator::nilpotent_blocks(gf(p), &sizes).unwrap();
            let n = f.dim();
            let full = crate::linalg::Subspace::full(f.field(), n);
            let vectors: Vec<VectorF> = full.enumerate_vectors(1 << 12).unwrap().collect();
            let mut expected: Vec<Vec<VectorF>> = Vec::new();
            for u1 in &vectors {
                for u2 in &vectors {
                    if f.exponent(u1) != sizes[0] || f.exponent(u2) != sizes[1] {
                        continue;
                    }
                    let mut rows = f.chain(u1);
                    rows.extend(f.chain(u2));
                    let span =
                        crate::linalg::Subspace::from_rows(f.field(), n, &rows).unwrap();
                    if span.dim() == n {
                        expected.push(vec![u1.clone(), u2.clone()]);
                    }
                }
            }
            let got: Vec<Vec<VectorF>> = enumerate_generator_tuples(&f, &caps)
                .unwrap()
                .into_iter()
                .map(|js| js.generators)
                .collect();
            assert_eq!(got.len(), expected.len(), "p={p} sizes={sizes:?}");
            for tuple in &expected {
                assert!(got.contains(tuple), "missing {tuple:?}");
            }
        }
    }

    #[test]
    fn tuple_cap_is_enforced() {
        let caps = Caps {
            tuples: 4,
            ..Caps::default()
        };
        let zero = Operator::new(MatrixF::zeros(gf(2), 2, 2)).unwrap();
        assert!(matches!(
            count_generator_tuples(&zero, &caps),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn packed_and_generic_sweeps_agree() {
        // compare counts and uniformity results between the packed GF(2)
        // walk and the generic walk on the same operator
        let caps = Caps::default();
        let f = Operator::nilpotent_blocks(gf(2), &[1, 2]).unwrap();
        let mut ctx = TupleEnum::build(&f, &caps).unwrap();
        let mut packed_order: Vec<Vec<usize>> = Vec::new();
        ctx.visit_indices(caps.tuples, &mut |idx| {
            packed_order.push(idx.to_vec());
            Flow::Continue
        })
        .unwrap();
        ctx.packed = false;
        let mut generic_order: Vec<Vec<usize>> = Vec::new();
        ctx.visit_indices(caps.tuples, &mut |idx| {
            generic_order.push(idx.to_vec());
            Flow::Continue
        })
        .unwrap();
        assert_eq!(packed_order, generic_order);
    }
}
