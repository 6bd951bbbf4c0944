//! Enumeration of subspace families and their lattice structure.
//!
//! The hyperinvariant family of a nilpotent operator is produced directly
//! from the `W(r)` construction over all admissible monotone depth tuples;
//! distinct tuples may repeat a subspace, so elements are deduplicated by
//! their canonical basis and keep every generating tuple as a label. The
//! invariant / characteristic / marked families are produced by brute-force
//! filtering of all subspaces of the ambient space, enumerated by reduced
//! row echelon profile.

use std::collections::HashMap;

use crate::caps::Caps;
use crate::classify::{
    is_characteristic, is_hyperinvariant, is_invariant, ClassifyOptions,
};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::{MatrixF, Subspace};
use crate::marked::{admissible_tuples, w_r};
use crate::operator::{decompose, exponents_from_kernels, Operator};
use crate::sweep;

/// Gaussian binomial `[n choose k]_p`: the number of k-dimensional
/// subspaces of GF(p)^n. Saturates at `u128::MAX` instead of overflowing.
pub fn gaussian_binomial(n: usize, k: usize, p: u8) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut acc = 1u128;
    for i in 0..k {
        let Some(pw) = p.checked_pow((n - i) as u32) else {
            return u128::MAX;
        };
        let num = pw - 1;
        let den = p.pow((i + 1) as u32) - 1;
        // every partial product is itself a Gaussian binomial, an integer
        let Some(prod) = acc.checked_mul(num) else {
            return u128::MAX;
        };
        acc = prod / den;
    }
    acc
}

/// Total number of subspaces of GF(p)^n. Saturates at `u128::MAX`.
pub fn subspace_count(n: usize, p: u8) -> u128 {
    let mut total = 0u128;
    for k in 0..=n {
        total = total.saturating_add(gaussian_binomial(n, k, p));
    }
    total
}

/// Every subspace of GF(p)^n, by reduced row echelon profile: dimension
/// ascending, pivot columns in lexicographic order, then free entries in
/// odometer order. Deterministic; errors when the count exceeds the cap.
pub fn enumerate_all_subspaces(field: PrimeField, n: usize, cap: u64) -> Result<Vec<Subspace>> {
    let total = subspace_count(n, field.modulus());
    if total > cap as u128 {
        return Err(Error::EnumerationTooLarge {
            what: "subspace",
            needed: total,
            cap,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    for d in 0..=n {
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            emit_profile(field, n, &pivots, &mut out);
            // next pivot combination in lexicographic order
            let mut advanced = false;
            let mut i = d;
            while i > 0 {
                i -= 1;
                if pivots[i] < n - d + i {
                    pivots[i] += 1;
                    for j in i + 1..d {
                        pivots[j] = pivots[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

fn emit_profile(field: PrimeField, n: usize, pivots: &[usize], out: &mut Vec<Subspace>) {
    let d = pivots.len();
    // free positions: (row i, col j) with j > pivots[i], j not a pivot
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (i, &pc) in pivots.iter().enumerate() {
        for j in (pc + 1)..n {
            if !pivots.contains(&j) {
                free.push((i, j));
            }
        }
    }
    let p = field.modulus();
    let mut values = vec![0u8; free.len()];
    loop {
        let mut basis = MatrixF::zeros(field, d, n);
        for (i, &pc) in pivots.iter().enumerate() {
            basis.set(i, pc, 1);
        }
        for (&(i, j), &v) in free.iter().zip(&values) {
            basis.set(i, j, v);
        }
        out.push(Subspace::from_canonical_basis(basis));
        let mut i = values.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if values[i] + 1 < p {
                values[i] += 1;
                for v in &mut values[i + 1..] {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// All f-invariant subspaces, by filtering the full enumeration.
pub fn enumerate_invariant_subspaces(f: &Operator, caps: &Caps) -> Result<Vec<Subspace>> {
    let all = enumerate_all_subspaces(f.field(), f.dim(), caps.subspaces)?;
    Ok(sweep::filter(all, |s| {
        is_invariant(f, s).expect("ambient matches")
    }))
}

/// A deduplicated family of subspaces with its containment structure.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    elements: Vec<Subspace>,
    labels: Vec<Vec<String>>,
    hasse: Vec<(usize, usize)>,
    closed: bool,
}

impl SubspaceLattice {
    /// Build from elements; sorts canonically, attaches labels, computes the
    /// covering relation, and records meet/join closure.
    pub fn build(f: &Operator, mut entries: Vec<(Subspace, Vec<String>)>) -> Result<Self> {
        entries.sort_by_key(|a| element_key(&a.0));
        let mut elements: Vec<Subspace> = Vec::new();
        let mut labels: Vec<Vec<String>> = Vec::new();
        for (s, tags) in entries {
            if let Some(i) = elements.iter().position(|e| *e == s) {
                for t in tags {
                    if !labels[i].contains(&t) {
                        labels[i].push(t);
                    }
                }
            } else {
                elements.push(s);
                labels.push(tags);
            }
        }
        // symbolic names for power images and kernels
        for (i, s) in elements.iter().enumerate() {
            for tag in symbolic_tags(f, s)? {
                if !labels[i].contains(&tag) {
                    labels[i].insert(0, tag);
                }
            }
        }
        let hasse = hasse_edges(&elements)?;
        let closed = closure_holds(&elements)?;
        Ok(SubspaceLattice {
            elements,
            labels,
            hasse,
            closed,
        })
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Meet/join closure of the element set.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        self.elements.iter().any(|e| e == s)
    }

    /// DOT text with edges from smaller to larger subspace. Bit-stable for
    /// a fixed input.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph {graph_name} {{\n"));
        out.push_str("  rankdir=BT;\n");
        out.push_str("  node [shape=box];\n");
        for (i, s) in self.elements.iter().enumerate() {
            let tags = if self.labels[i].is_empty() {
                s.to_string()
            } else {
                self.labels[i].join(", ")
            };
            out.push_str(&format!(
                "  n{} [label=\"dim={}\\n{}\"];\n",
                i,
                s.dim(),
                tags
            ));
        }
        for &(lo, hi) in &self.hasse {
            out.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}

fn element_key(s: &Subspace) -> (usize, Vec<u8>) {
    let mut data = Vec::with_capacity(s.dim() * s.ambient());
    for r in 0..s.dim() {
        data.extend_from_slice(s.basis().row_slice(r));
    }
    (s.dim(), data)
}

/// Covering pairs of the containment order.
pub fn hasse_edges(elements: &[Subspace]) -> Result<Vec<(usize, usize)>> {
    let m = elements.len();
    let mut below = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j
                && elements[i].dim() < elements[j].dim()
                && elements[i].is_subspace_of(&elements[j])?
            {
                below[i][j] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if !below[i][j] {
                continue;
            }
            let covered = (0..m).any(|k| below[i][k] && below[k][j]);
            if !covered {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

fn closure_holds(elements: &[Subspace]) -> Result<bool> {
    for a in elements {
        for b in elements {
            let s = a.sum(b)?;
            if !elements.contains(&s) {
                return Ok(false);
            }
            let m = a.intersect(b)?;
            if !elements.contains(&m) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Tags a subspace with the power constructions it equals: `0`, `V`,
/// `f^jV`, `V[f^j]`.
fn symbolic_tags(f: &Operator, s: &Subspace) -> Result<Vec<String>> {
    let mut tags = Vec::new();
    if s.is_zero_space() {
        tags.push("0".to_string());
    }
    if s.is_full_space() {
        tags.push("V".to_string());
    }
    for j in 1..=f.dim() {
        if *s == f.image_of_power(j) && !s.is_zero_space() {
            tags.push(if j == 1 {
                "fV".to_string()
            } else {
                format!("f^{j}V")
            });
            break;
        }
    }
    for j in 1..=f.dim() {
        if *s == f.kernel_of_power(j) && !s.is_full_space() {
            tags.push(if j == 1 {
                "V[f]".to_string()
            } else {
                format!("V[f^{j}]")
            });
            break;
        }
    }
    Ok(tags)
}

/// The full hyperinvariant family. For a nilpotent operator this is `W(r)`
/// over every admissible monotone depth tuple, deduplicated, with the
/// generating tuples kept as labels. An operator with several eigenvalues
/// is handled by recombination: a subspace is hyperinvariant exactly when
/// every component is, so the family is the direct-sum product of the
/// per-component families. Closed under meet and join, which is verified
/// and asserted.
pub fn enumerate_hinv(f: &Operator) -> Result<SubspaceLattice> {
    if f.is_nilpotent() {
        return enumerate_hinv_nilpotent(f);
    }
    let components = decompose(f)?;
    let mut entries: Vec<(Subspace, Vec<String>)> =
        vec![(Subspace::zero(f.field(), f.dim()), Vec::new())];
    for comp in &components {
        let nil = comp.nilpotent_part();
        let part = enumerate_hinv_nilpotent(&nil)?;
        let mut next = Vec::with_capacity(entries.len() * part.len());
        for (acc, acc_tags) in &entries {
            for (el, el_tags) in part.elements().iter().zip(part.labels()) {
                let lifted = comp.lift_subspace(el);
                let combined = acc.sum(&lifted)?;
                let mut tags = acc_tags.clone();
                let tag = el_tags
                    .first()
                    .cloned()
                    .unwrap_or_else(|| format!("dim {}", el.dim()));
                tags.push(format!("lambda={}: {}", comp.lambda, tag));
                next.push((combined, tags));
            }
        }
        entries = next;
    }
    let lattice = SubspaceLattice::build(f, entries)?;
    assert!(
        lattice.is_closed(),
        "hyperinvariant family must be meet/join closed"
    );
    Ok(lattice)
}

fn enumerate_hinv_nilpotent(f: &Operator) -> Result<SubspaceLattice> {
    let t = exponents_from_kernels(f)?; // errors if not nilpotent
    let mut seen: HashMap<Subspace, Vec<String>> = HashMap::new();
    let mut order: Vec<Subspace> = Vec::new();
    for r in admissible_tuples(&t) {
        if !r.is_monotone() {
            continue;
        }
        let w = w_r(f, &r)?;
        match seen.get_mut(&w) {
            Some(tags) => tags.push(r.label()),
            None => {
                seen.insert(w.clone(), vec![r.label()]);
                order.push(w);
            }
        }
    }
    let entries: Vec<(Subspace, Vec<String>)> = order
        .into_iter()
        .map(|s| {
            let tags = seen.remove(&s).unwrap_or_default();
            (s, tags)
        })
        .collect();
    let lattice = SubspaceLattice::build(f, entries)?;
    assert!(
        lattice.is_closed(),
        "hyperinvariant family must be meet/join closed"
    );
    Ok(lattice)
}

/// The characteristic family, by filtering all invariant subspaces. Closed
/// under meet and join, which is verified and asserted.
pub fn enumerate_chinv(f: &Operator, caps: &Caps, opts: ClassifyOptions) -> Result<SubspaceLattice> {
    let invariant = enumerate_invariant_subspaces(f, caps)?;
    let mut entries = Vec::new();
    for s in invariant {
        if is_characteristic(f, &s, caps, opts)?.characteristic {
            entries.push((s, Vec::new()));
        }
    }
    let lattice = SubspaceLattice::build(f, entries)?;
    assert!(
        lattice.is_closed(),
        "characteristic family must be meet/join closed"
    );
    Ok(lattice)
}

/// The marked family, with closure information; markedness is decided by a
/// budgeted search, so undecided members are reported separately instead of
/// being silently dropped.
#[derive(Debug, Clone)]
pub struct MarkedFamily {
    pub elements: Vec<Subspace>,
    pub undecided: Vec<Subspace>,
    /// `(closed, counterexample)` for sum and intersection; `None` when
    /// undecided members make the question unanswerable.
    pub sum_closure: Option<(bool, Option<(usize, usize)>)>,
    pub intersection_closure: Option<(bool, Option<(usize, usize)>)>,
}

pub fn enumerate_marked(f: &Operator, caps: &Caps) -> Result<MarkedFamily> {
    let invariant = enumerate_invariant_subspaces(f, caps)?;
    let mut elements = Vec::new();
    let mut undecided = Vec::new();
    for s in invariant {
        match crate::classify::marked_verdict(f, &s, caps)? {
            crate::classify::Verdict::Yes => elements.push(s),
            crate::classify::Verdict::No => {}
            crate::classify::Verdict::Unknown => undecided.push(s),
        }
    }
    let (sum_closure, intersection_closure) = if undecided.is_empty() {
        (
            Some(family_closure(&elements, Subspace::sum)?),
            Some(family_closure(&elements, Subspace::intersect)?),
        )
    } else {
        (None, None)
    };
    Ok(MarkedFamily {
        elements,
        undecided,
        sum_closure,
        intersection_closure,
    })
}

fn family_closure(
    elements: &[Subspace],
    op: impl Fn(&Subspace, &Subspace) -> Result<Subspace>,
) -> Result<(bool, Option<(usize, usize)>)> {
    for i in 0..elements.len() {
        for j in i..elements.len() {
            let combined = op(&elements[i], &elements[j])?;
            if !elements.contains(&combined) {
                return Ok((false, Some((i, j))));
            }
        }
    }
    Ok((true, None))
}

/// All invariant subspaces that are characteristic but not hyperinvariant.
/// Interesting over GF(2); over bigger prime fields the list is empty, and
/// the full run verifies that.
pub fn search_characteristic_not_hyperinvariant(
    f: &Operator,
    caps: &Caps,
    opts: ClassifyOptions,
) -> Result<Vec<Subspace>> {
    let invariant = enumerate_invariant_subspaces(f, caps)?;
    let mut out = Vec::new();
    for s in invariant {
        if !is_characteristic(f, &s, caps, opts)?.characteristic {
            continue;
        }
        if is_hyperinvariant(f, &s)?.is_some() {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::VectorF;

    fn gf(p: u16) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn gaussian_binomials() {
        // [4 k]_2 = 1, 15, 35, 15, 1
        assert_eq!(gaussian_binomial(4, 0, 2), 1);
        assert_eq!(gaussian_binomial(4, 1, 2), 15);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 3, 2), 15);
        assert_eq!(gaussian_binomial(4, 4, 2), 1);
        assert_eq!(subspace_count(4, 2), 67);
        assert_eq!(subspace_count(2, 2), 5);
        assert_eq!(subspace_count(2, 3), 6);
    }

    #[test]
    fn all_subspaces_enumeration_matches_count() {
        for (p, n) in [(2u16, 1usize), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = gf(p);
            let subs = enumerate_all_subspaces(f, n, 100_000).unwrap();
            assert_eq!(subs.len() as u128, subspace_count(n, p as u8), "p={p} n={n}");
            // all distinct and canonical
            for (i, a) in subs.iter().enumerate() {
                assert_eq!(a.basis(), &a.basis().rref());
                for b in &subs[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn subspace_cap_is_enforced() {
        assert!(matches!(
            enumerate_all_subspaces(gf(2), 12, 1000),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn invariant_subspaces_examples() {
        // f = 0: every subspace is invariant
        let zero = Operator::new(MatrixF::zeros(gf(2), 4, 4)).unwrap();
        assert_eq!(enumerate_invariant_subspaces(&zero, &caps()).unwrap().len(), 67);
        // f = N2 on GF(2)^2: {0, span{e2}, V}
        let n2 = Operator::nilpotent_blocks(gf(2), &[2]).unwrap();
        let inv = enumerate_invariant_subspaces(&n2, &caps()).unwrap();
        assert_eq!(inv.len(), 3);
        let gf2 = gf(2);
        let e2 = Subspace::from_rows(gf2, 2, &[VectorF::unit(gf2, 2, 1)]).unwrap();
        assert!(inv.contains(&e2));
    }

    #[test]
    fn hinv_of_example_structure() {
        // t = (1, 3) over GF(2): exactly {0, fV, f^2V, V[f], V[f^2], V}
        let f = Operator::nilpotent_blocks(gf(2), &[1, 3]).unwrap();
        let lat = enumerate_hinv(&f).unwrap();
        assert_eq!(lat.len(), 6);
        let expect = [
            Subspace::zero(gf(2), 4),
            f.image_of_power(2),
            f.image_of_power(1),
            f.kernel_of_power(1),
            f.kernel_of_power(2),
            Subspace::full(gf(2), 4),
        ];
        for e in &expect {
            assert!(lat.contains(e), "missing {e}");
        }
        assert!(lat.is_closed());
        // diamond-with-chain covering relation has 6 edges
        assert_eq!(lat.hasse().len(), 6);
    }

    #[test]
    fn hinv_trivial_cases() {
        // f = 0 on K^2: monotone tuples collapse to {0, V}
        let zero = Operator::new(MatrixF::zeros(gf(2), 2, 2)).unwrap();
        let lat = enumerate_hinv(&zero).unwrap();
        assert_eq!(lat.len(), 2);
        assert_eq!(lat.hasse().len(), 1);

        // single block N4: a chain 0 < f^3 V < f^2 V < f V < V of length 5
        let n4 = Operator::nilpotent_blocks(gf(2), &[4]).unwrap();
        let lat = enumerate_hinv(&n4).unwrap();
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.hasse().len(), 4);
        for j in 1..4 {
            assert!(lat.contains(&n4.image_of_power(j)));
        }
    }

    #[test]
    fn hinv_equals_filtered_invariants() {
        for (p, sizes) in [
            (2u16, vec![1usize, 3]),
            (2, vec![2, 3]),
            (2, vec![1, 1, 2]),
            (3, vec![1, 2]),
            (3, vec![1, 1]),
        ] {
            let f = Operator::nilpotent_blocks(gf(p), &sizes).unwrap();
            let lat = enumerate_hinv(&f).unwrap();
            let filtered: Vec<Subspace> = enumerate_invariant_subspaces(&f, &caps())
                .unwrap()
                .into_iter()
                .filter(|s| is_hyperinvariant(&f, s).unwrap().is_none())
                .collect();
            assert_eq!(lat.len(), filtered.len(), "p={p} sizes={sizes:?}");
            for s in &filtered {
                assert!(lat.contains(s));
            }
        }
    }

    #[test]
    fn chinv_examples() {
        // over GF(2), Chinv strictly contains Hinv for t = (1,3), with Z in
        // the gap
        let f = Operator::nilpotent_blocks(gf(2), &[1, 3]).unwrap();
        let hinv = enumerate_hinv(&f).unwrap();
        let chinv = enumerate_chinv(&f, &caps(), ClassifyOptions::default()).unwrap();
        assert!(chinv.len() > hinv.len());
        let gf2 = gf(2);
        let z = Subspace::from_rows(
            gf2,
            4,
            &[VectorF::from_ints(gf2, &[1, 0, 1, 0]), VectorF::unit(gf2, 4, 3)],
        )
        .unwrap();
        assert!(chinv.contains(&z));
        assert!(!hinv.contains(&z));

        // over GF(3) the two coincide (checked here with genuine
        // enumeration rather than the fast path)
        let f3 = Operator::nilpotent_blocks(gf(3), &[1, 3]).unwrap();
        let hinv3 = enumerate_hinv(&f3).unwrap();
        let chinv3 = enumerate_chinv(
            &f3,
            &caps(),
            ClassifyOptions {
                force_bruteforce: true,
            },
        )
        .unwrap();
        assert_eq!(hinv3.len(), chinv3.len());
        for s in hinv3.elements() {
            assert!(chinv3.contains(s));
        }
    }

    #[test]
    fn marked_family_is_not_sum_closed_in_general() {
        let f = Operator::nilpotent_blocks(gf(2), &[1, 3, 2]).unwrap();
        let fam = enumerate_marked(&f, &caps()).unwrap();
        assert!(fam.undecided.is_empty());
        let (sum_closed, witness) = fam.sum_closure.unwrap();
        assert!(!sum_closed);
        assert!(witness.is_some());
    }

    #[test]
    fn search_gap_examples() {
        // t = (1,3) over GF(2): the gap contains Z
        let f = Operator::nilpotent_blocks(gf(2), &[1, 3]).unwrap();
        let gap = search_characteristic_not_hyperinvariant(
            &f,
            &caps(),
            ClassifyOptions::default(),
        )
        .unwrap();
        let gf2 = gf(2);
        let z = Subspace::from_rows(
            gf2,
            4,
            &[VectorF::from_ints(gf2, &[1, 0, 1, 0]), VectorF::unit(gf2, 4, 3)],
        )
        .unwrap();
        assert!(gap.contains(&z));

        // t = (1,1) over GF(2): empty at n = 2
        let zero = Operator::new(MatrixF::zeros(gf(2), 2, 2)).unwrap();
        assert!(search_characteristic_not_hyperinvariant(
            &zero,
            &caps(),
            ClassifyOptions::default()
        )
        .unwrap()
        .is_empty());

        // any structure over GF(3): empty
        let f3 = Operator::nilpotent_blocks(gf(3), &[1, 2]).unwrap();
        assert!(search_characteristic_not_hyperinvariant(
            &f3,
            &caps(),
            ClassifyOptions {
                force_bruteforce: true
            }
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn hinv_of_composite_operator_is_the_component_product() {
        // diag(1, 0, N2-at-0) over GF(3): lambda = 1 contributes {0, V_1},
        // the nilpotent component contributes a chain of length 3
        let gf3 = gf(3);
        let m = MatrixF::from_int_rows(
            gf3,
            &[
                vec![1, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 0, 0],
                vec![0, 0, 1, 0],
            ],
        )
        .unwrap();
        let f = Operator::new(m).unwrap();
        let lat = enumerate_hinv(&f).unwrap();
        // product of sizes: 2 (t = (1)) x 4 (t = (1, 2) has 4 monotone classes)
        let filtered: Vec<Subspace> = enumerate_invariant_subspaces(&f, &caps())
            .unwrap()
            .into_iter()
            .filter(|s| is_hyperinvariant(&f, s).unwrap().is_none())
            .collect();
        assert_eq!(lat.len(), filtered.len());
        for s in &filtered {
            assert!(lat.contains(s), "missing {s}");
        }
        assert!(lat.is_closed());
    }

    #[test]
    fn dot_output_is_stable() {
        let f = Operator::nilpotent_blocks(gf(2), &[1, 3]).unwrap();
        let a = enumerate_hinv(&f).unwrap().to_dot("hinv");
        let b = enumerate_hinv(&f).unwrap().to_dot("hinv");
        assert_eq!(a, b);
        assert!(a.starts_with("digraph hinv {"));
        assert_eq!(a.matches("->").count(), 6);
        assert!(a.contains("fV"));
        assert!(a.contains("V[f^2]"));
    }
}
