//! The `W(r, U)` and `W(r)` constructions and the markedness decision
//! procedure for a nilpotent operator.
//!
//! Given Jordan exponents `t_1 <= ... <= t_k` of `f`, a depth tuple
//! `r = (r_1, ..., r_k)` is *admissible* when `0 <= r_i <= t_i` and
//! *monotone* when both `r_1 <= ... <= r_k` and
//! `t_1 - r_1 <= ... <= t_k - r_k` hold. For a generator tuple `U`,
//!
//! * `W(r, U) = <f^{r_1} u_1> + ... + <f^{r_k} u_k>` (a direct sum), which
//!   is marked by construction, and
//! * `W(r) = sum_i f^{r_i} V  ∩  Ker f^{t_i - r_i}`, which is
//!   hyperinvariant by construction.
//!
//! A subspace is marked exactly when it equals some `W(r, U)`. The search
//! below decides that by matching restriction/quotient exponent multisets
//! first and then backtracking over generator choices with a node budget;
//! running out of budget is a distinct `Unknown` outcome, never a silent
//! `false`.

use crate::caps::Caps;
use crate::classify::{visit_generator_tuples, Flow};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, VectorF};
use crate::operator::{
    exponents_from_kernels, jordan_structure, quotient_structure, restriction_matrix,
    JordanStructure, Operator,
};

/// A depth tuple `r` measured against Jordan exponents `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentTuple {
    depths: Vec<usize>,
    exponents: Vec<usize>,
}

impl ExponentTuple {
    pub fn new(depths: Vec<usize>, exponents: Vec<usize>) -> Result<Self> {
        if depths.len() != exponents.len() {
            return Err(Error::LengthMismatch {
                left: depths.len(),
                right: exponents.len(),
            });
        }
        Ok(ExponentTuple { depths, exponents })
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.depths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depths.is_empty()
    }

    /// `0 <= r_i <= t_i` for all i.
    pub fn is_admissible(&self) -> bool {
        self.depths
            .iter()
            .zip(&self.exponents)
            .all(|(&r, &t)| r <= t)
    }

    /// `r` non-decreasing and `t - r` non-decreasing.
    pub fn is_monotone(&self) -> bool {
        let rs = &self.depths;
        let ts = &self.exponents;
        let r_ok = rs.windows(2).all(|w| w[0] <= w[1]);
        let d_ok = (1..rs.len()).all(|i| {
            ts[i - 1] as i64 - rs[i - 1] as i64 <= ts[i] as i64 - rs[i] as i64
        });
        r_ok && d_ok
    }

    /// Codepths `t_i - r_i` (meaningful for admissible tuples).
    pub fn codepths(&self) -> Vec<usize> {
        self.depths
            .iter()
            .zip(&self.exponents)
            .map(|(&r, &t)| t.saturating_sub(r))
            .collect()
    }

    /// Label like `W(1,0)`, used by lattice reports.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.depths.iter().map(|r| r.to_string()).collect();
        format!("W({})", parts.join(","))
    }
}

/// `r_i = floor(c * t_i)` for a rational `c = num/den` in (0, 1). The result
/// is always admissible and monotone; both are asserted and tested.
pub fn scaled_tuple(exponents: &[usize], num: u64, den: u64) -> ExponentTuple {
    assert!(num > 0 && num < den, "scaling factor must lie in (0, 1)");
    let depths: Vec<usize> = exponents
        .iter()
        .map(|&t| ((num * t as u64) / den) as usize)
        .collect();
    let tuple = ExponentTuple::new(depths, exponents.to_vec()).expect("equal lengths");
    debug_assert!(tuple.is_admissible() && tuple.is_monotone());
    tuple
}

/// All admissible tuples over `t` in lexicographic order (last coordinate
/// fastest, so `(0,...,0)` comes first).
pub fn admissible_tuples(exponents: &[usize]) -> Vec<ExponentTuple> {
    let k = exponents.len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; k];
    loop {
        out.push(
            ExponentTuple::new(digits.clone(), exponents.to_vec()).expect("equal lengths"),
        );
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if digits[i] < exponents[i] {
                digits[i] += 1;
                for d in &mut digits[i + 1..] {
                    *d = 0;
                }
                break;
            }
        }
    }
}

/// `W(r, U) = <f^{r_1} u_1> + ... + <f^{r_k} u_k>`. Marked by construction;
/// the dimension is the sum of the codepths. Summands with `r_i = t_i`
/// vanish; summands with `r_i = 0` are the full cyclic subspaces.
pub fn w_ru(f: &Operator, u: &JordanStructure, r: &ExponentTuple) -> Result<Subspace> {
    if r.len() != u.exponents.len() {
        return Err(Error::LengthMismatch {
            left: r.len(),
            right: u.exponents.len(),
        });
    }
    if r.exponents() != u.exponents.as_slice() || !r.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    let mut rows = Vec::new();
    for (i, gen) in u.generators.iter().enumerate() {
        let chain = f.chain(gen);
        debug_assert_eq!(chain.len(), u.exponents[i]);
        rows.extend_from_slice(&chain[r.depths()[i].min(chain.len())..]);
    }
    let out = Subspace::from_rows(f.field(), f.dim(), &rows)?;
    debug_assert_eq!(
        out.dim(),
        r.codepths().iter().sum::<usize>(),
        "cyclic summands must be independent"
    );
    Ok(out)
}

/// `W(r) = sum_i  f^{r_i} V  ∩  Ker f^{t_i - r_i}`. Hyperinvariant by
/// construction for every admissible `r`, monotone or not.
pub fn w_r(f: &Operator, r: &ExponentTuple) -> Result<Subspace> {
    let t = exponents_from_kernels(f)?;
    if r.exponents() != t.as_slice() || !r.is_admissible() {
        return Err(Error::NotAdmissible);
    }
    let mut acc = Subspace::zero(f.field(), f.dim());
    for (&ri, &ti) in r.depths().iter().zip(r.exponents()) {
        let term = f.image_of_power(ri).intersect(&f.kernel_of_power(ti - ri))?;
        acc = acc.sum(&term)?;
    }
    Ok(acc)
}

/// Constructive non-uniformity witness for a non-monotone admissible `r`:
/// modifying one entry of `U` across a violating adjacent pair (replace
/// `u_{i+1}` by `u_i + u_{i+1}` when `r_i > r_{i+1}`, or `u_i` by
/// `u_i + f^{t_{i+1}-t_i} u_{i+1}` when the codepths drop) yields another
/// generator tuple with a different `W(r, .)`. Returns the modified tuple
/// and the two differing subspaces.
pub fn nonuniform_witness(
    f: &Operator,
    u: &JordanStructure,
    r: &ExponentTuple,
) -> Result<Option<(JordanStructure, Subspace, Subspace)>> {
    let base = w_ru(f, u, r)?;
    let t = r.exponents();
    for i in 0..u.generators.len().saturating_sub(1) {
        let mut candidates: Vec<JordanStructure> = Vec::new();
        if r.depths()[i] > r.depths()[i + 1] {
            let mut m = u.clone();
            m.generators[i + 1] = m.generators[i].add(&m.generators[i + 1])?;
            candidates.push(m);
        }
        if t[i] - r.depths()[i] > t[i + 1] - r.depths()[i + 1] {
            let mut m = u.clone();
            let shift = f.power(t[i + 1] - t[i]).mul_vec(&u.generators[i + 1])?;
            m.generators[i] = m.generators[i].add(&shift)?;
            candidates.push(m);
        }
        for cand in candidates {
            debug_assert!(cand.validate(f).is_ok());
            let other = w_ru(f, &cand, r)?;
            if other != base {
                return Ok(Some((cand, base, other)));
            }
        }
    }
    Ok(None)
}

/// Witness that a subspace is marked: `X = W(r, U)`.
#[derive(Debug, Clone)]
pub struct MarkedWitness {
    pub generators: JordanStructure,
    pub depths: ExponentTuple,
}

/// Three-valued outcome of the markedness search.
#[derive(Debug, Clone)]
pub enum Markedness {
    Marked(MarkedWitness),
    NotMarked,
    /// The backtracking budget ran out before the search completed.
    Unknown { nodes: u64 },
}

impl Markedness {
    pub fn is_marked(&self) -> Option<bool> {
        match self {
            Markedness::Marked(_) => Some(true),
            Markedness::NotMarked => Some(false),
            Markedness::Unknown { .. } => None,
        }
    }
}

struct SearchCtx<'a> {
    f: &'a Operator,
    budget: u64,
    nodes: u64,
}

impl SearchCtx<'_> {
    fn spend(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }
}

/// Decide whether an invariant subspace of a nilpotent operator is marked.
///
/// The search runs over admissible `r` in lexicographic order, pruned by
/// two necessary multiset conditions (the restriction exponents of `X` must
/// equal the nonzero codepths, the quotient exponents must equal the
/// nonzero depths), then backtracks over Jordan generators of `X` and
/// preimage choices. The first witness found is returned.
pub fn is_marked(f: &Operator, x: &Subspace, caps: &Caps) -> Result<Markedness> {
    if !f.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    if x.ambient() != f.dim() {
        return Err(Error::AmbientMismatch {
            left: f.dim(),
            right: x.ambient(),
        });
    }
    for row in x.basis_rows() {
        if !x.contains(&f.apply(&row)?)? {
            return Err(Error::NotInvariant);
        }
    }

    let canonical = jordan_structure(f)?;
    let t = canonical.exponents.clone();

    // trivial ends: 0 = W(t, U), V = W(0, U)
    if x.is_zero_space() || x.is_full_space() {
        let depths = if x.is_zero_space() {
            t.clone()
        } else {
            vec![0; t.len()]
        };
        let r = ExponentTuple::new(depths, t)?;
        return Ok(Markedness::Marked(MarkedWitness {
            generators: canonical,
            depths: r,
        }));
    }

    let restriction = Operator::new(restriction_matrix(f, x)?)?;
    let mut rest_exps = exponents_from_kernels(&restriction)?;
    rest_exps.sort_unstable();
    let mut quot_exps = quotient_structure(f, x)?;
    quot_exps.sort_unstable();

    let mut ctx = SearchCtx {
        f,
        budget: caps.search_nodes,
        nodes: 0,
    };
    let mut budget_hit = false;

    for r in admissible_tuples(&t) {
        let mut codepths: Vec<usize> = r.codepths().into_iter().filter(|&c| c > 0).collect();
        codepths.sort_unstable();
        if codepths != rest_exps {
            continue;
        }
        let mut depths: Vec<usize> = r.depths().iter().copied().filter(|&d| d > 0).collect();
        depths.sort_unstable();
        if depths != quot_exps {
            continue;
        }
        match search_for_tuple(&mut ctx, x, &restriction, &r, caps)? {
            SearchOutcome::Found(u) => {
                debug_assert_eq!(&w_ru(f, &u, &r)?, x);
                return Ok(Markedness::Marked(MarkedWitness {
                    generators: u,
                    depths: r,
                }));
            }
            SearchOutcome::Exhausted => {}
            SearchOutcome::Budget => {
                budget_hit = true;
                break;
            }
        }
    }

    if budget_hit {
        Ok(Markedness::Unknown { nodes: ctx.nodes })
    } else {
        Ok(Markedness::NotMarked)
    }
}

enum SearchOutcome {
    Found(JordanStructure),
    Exhausted,
    Budget,
}

/// For a fixed admissible `r` whose multisets match, search for a generator
/// tuple `U` of the whole space with `X = W(r, U)`.
fn search_for_tuple(
    ctx: &mut SearchCtx<'_>,
    x: &Subspace,
    restriction: &Operator,
    r: &ExponentTuple,
    caps: &Caps,
) -> Result<SearchOutcome> {
    let f = ctx.f;
    let field = f.field();
    let n = f.dim();
    let t = r.exponents();
    let k = t.len();

    // positions needing a generator of X (nonzero codepth), in order of
    // ascending codepth with stable ties; position i gets the j-th generator
    // of any X-tuple, whose exponent is the j-th smallest.
    let mut bound: Vec<usize> = (0..k).filter(|&i| r.depths()[i] < t[i]).collect();
    bound.sort_by_key(|&i| t[i] - r.depths()[i]);
    let bound_rank: Vec<Option<usize>> = {
        let mut m = vec![None; k];
        for (j, &i) in bound.iter().enumerate() {
            m[i] = Some(j);
        }
        m
    };

    // candidates for free positions: vectors of exponent exactly t_i
    let mut free_candidates: Vec<Option<Vec<VectorF>>> = vec![None; k];
    for i in 0..k {
        if r.depths()[i] == t[i] {
            let level = t[i];
            let upper = f.kernel_of_power(level);
            let lower = f.kernel_of_power(level - 1);
            let mut cands = Vec::new();
            for v in upper.enumerate_vectors(caps.vectors)? {
                if !lower.contains(&v)? {
                    cands.push(v);
                }
            }
            free_candidates[i] = Some(cands);
        }
    }

    // preimage data per bound position
    let power_kernels: Vec<Subspace> = (0..=n).map(|j| f.kernel_of_power(j)).collect();

    let mut found: Option<JordanStructure> = None;
    let mut budget = false;
    let mut failure: Option<Error> = None;

    // each tuple of X costs a node, so the node budget, not the tuple cap,
    // bounds this walk
    let xcaps = Caps {
        tuples: u64::MAX,
        ..*caps
    };
    visit_generator_tuples(restriction, &xcaps, &mut |xjs: &JordanStructure| {
        if !ctx.spend() {
            budget = true;
            return Flow::Stop;
        }
        // lift the X-tuple to ambient coordinates
        let lifted: Vec<VectorF> = xjs
            .generators
            .iter()
            .map(|g| x.lift(g.entries()))
            .collect();

        let mut slots: Vec<Option<VectorF>> = vec![None; k];
        let mut span = crate::classify::GenericSpan::new(field, n);
        match place_position(
            ctx,
            f,
            r,
            &bound_rank,
            &free_candidates,
            &power_kernels,
            &lifted,
            0,
            &mut slots,
            &mut span,
            caps,
        ) {
            Ok(PlaceOutcome::Found) => {
                let generators: Vec<VectorF> =
                    slots.into_iter().map(|s| s.expect("slot filled")).collect();
                found = Some(JordanStructure {
                    exponents: t.to_vec(),
                    generators,
                });
                Flow::Stop
            }
            Ok(PlaceOutcome::Exhausted) => Flow::Continue,
            Ok(PlaceOutcome::Budget) => {
                budget = true;
                Flow::Stop
            }
            Err(e) => {
                failure = Some(e);
                Flow::Stop
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }

    if let Some(u) = found {
        Ok(SearchOutcome::Found(u))
    } else if budget {
        Ok(SearchOutcome::Budget)
    } else {
        Ok(SearchOutcome::Exhausted)
    }
}

enum PlaceOutcome {
    Found,
    Exhausted,
    Budget,
}

#[allow(clippy::too_many_arguments)]
fn place_position(
    ctx: &mut SearchCtx<'_>,
    f: &Operator,
    r: &ExponentTuple,
    bound_rank: &[Option<usize>],
    free_candidates: &[Option<Vec<VectorF>>],
    power_kernels: &[Subspace],
    lifted: &[VectorF],
    pos: usize,
    slots: &mut Vec<Option<VectorF>>,
    span: &mut crate::classify::GenericSpan,
    caps: &Caps,
) -> Result<PlaceOutcome> {
    let k = r.len();
    if pos == k {
        return Ok(PlaceOutcome::Found);
    }
    let t_i = r.exponents()[pos];
    let r_i = r.depths()[pos];

    let try_candidate = |ctx: &mut SearchCtx<'_>,
                         u: VectorF,
                         slots: &mut Vec<Option<VectorF>>,
                         span: &mut crate::classify::GenericSpan|
     -> Result<PlaceOutcome> {
        if !ctx.spend() {
            return Ok(PlaceOutcome::Budget);
        }
        let chain = f.chain(&u);
        if chain.len() != t_i {
            return Ok(PlaceOutcome::Exhausted);
        }
        let mark = span.rank();
        let mut ok = true;
        for link in &chain {
            if !span.insert(link) {
                ok = false;
                break;
            }
        }
        if !ok {
            span.truncate(mark);
            return Ok(PlaceOutcome::Exhausted);
        }
        slots[pos] = Some(u);
        let rec = place_position(
            ctx,
            f,
            r,
            bound_rank,
            free_candidates,
            power_kernels,
            lifted,
            pos + 1,
            slots,
            span,
            caps,
        )?;
        match rec {
            PlaceOutcome::Found => Ok(PlaceOutcome::Found),
            PlaceOutcome::Budget => Ok(PlaceOutcome::Budget),
            PlaceOutcome::Exhausted => {
                slots[pos] = None;
                span.truncate(mark);
                Ok(PlaceOutcome::Exhausted)
            }
        }
    };

    if let Some(j) = bound_rank[pos] {
        // solve f^{r_i} u = x_j over the affine solution set
        let target = &lifted[j];
        let a = f.power_ref(r_i);
        let Some(particular) = crate::linalg::solve(a, target)? else {
            return Ok(PlaceOutcome::Exhausted);
        };
        let freedom = &power_kernels[r_i];
        for w in freedom.enumerate_vectors(caps.vectors)? {
            let u = particular.add(&w)?;
            match try_candidate(ctx, u, slots, span)? {
                PlaceOutcome::Found => return Ok(PlaceOutcome::Found),
                PlaceOutcome::Budget => return Ok(PlaceOutcome::Budget),
                PlaceOutcome::Exhausted => {}
            }
        }
        Ok(PlaceOutcome::Exhausted)
    } else {
        let cands = free_candidates[pos].as_ref().expect("free position");
        for u in cands {
            match try_candidate(ctx, u.clone(), slots, span)? {
                PlaceOutcome::Found => return Ok(PlaceOutcome::Found),
                PlaceOutcome::Budget => return Ok(PlaceOutcome::Budget),
                PlaceOutcome::Exhausted => {}
            }
        }
        Ok(PlaceOutcome::Exhausted)
    }
}
