//! Executable property suites for the structural facts the library rests
//! on, runnable on a fixed operator or on seeded random instances, and
//! reused verbatim by the acceptance tests.
//!
//! Each check returns a [`PropertyOutcome`] with the number of instances
//! checked, the number of violations, and the first witness. A violation
//! anywhere is a defect: the checked statements are exact at these sizes.

use std::fmt::Write as _;

use crate::caps::Caps;
use crate::classify::{
    classify_subspace, count_generator_tuples, count_invertible_commutant_members,
    enumerate_generator_tuples, is_characteristic, is_hyperinvariant, is_invariant,
    check_distributivity, w_uniformity, w_uniformity_multi, ClassifyOptions, Verdict,
};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::lattice::{enumerate_hinv, enumerate_invariant_subspaces, enumerate_marked};
use crate::linalg::{MatrixF, Subspace};
use crate::marked::{
    admissible_tuples, is_marked, nonuniform_witness, w_r, w_ru, ExponentTuple, Markedness,
};
use crate::operator::{decompose, jordan_structure, JordanStructure, Operator};
use crate::rng::Rng;
use crate::sweep;

/// Options for the verification sweeps.
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    pub caps: Caps,
    /// Verify the p > 2 fast paths by genuine enumeration where feasible.
    pub force_bruteforce: bool,
    /// Random generator tuples drawn when a uniformity sweep does not fit
    /// in the tuple cap and sampling takes over.
    pub sample_tuples: u32,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            caps: Caps::default(),
            force_bruteforce: false,
            sample_tuples: 48,
            seed: 0x5eed,
        }
    }
}

/// Result of one property check.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: String,
    pub checked: u64,
    pub violations: u64,
    pub witness: Option<String>,
    pub info: Option<String>,
}

impl PropertyOutcome {
    fn new(name: &str) -> Self {
        PropertyOutcome {
            name: name.to_string(),
            checked: 0,
            violations: 0,
            witness: None,
            info: None,
        }
    }

    fn violation(&mut self, witness: String) {
        self.violations += 1;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Aggregated report over several properties.
#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed())
    }

    pub fn merge(&mut self, other: Vec<PropertyOutcome>) {
        for o in other {
            match self.outcomes.iter_mut().find(|e| e.name == o.name) {
                Some(e) => {
                    e.checked += o.checked;
                    e.violations += o.violations;
                    if e.witness.is_none() {
                        e.witness = o.witness;
                    }
                    // keep distinct notes from different instances
                    match (&mut e.info, o.info) {
                        (Some(cur), Some(new)) if !cur.contains(&new) => {
                            cur.push_str(" / ");
                            cur.push_str(&new);
                        }
                        (None, new @ Some(_)) => e.info = new,
                        _ => {}
                    }
                }
                None => self.outcomes.push(o),
            }
        }
    }
}

/// All partitions of `n` as non-decreasing tuples, in deterministic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in min..=n {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out
}

/// The five conditions compared by the equivalence sweep, per depth tuple.
#[derive(Debug, Clone)]
pub struct ConditionRow {
    pub depths: Vec<usize>,
    pub uniform_over_tuples: bool,
    pub uniform_exhaustive: bool,
    pub monotone: bool,
    pub equals_w_r: bool,
    pub characteristic: bool,
    pub hyperinvariant: bool,
}

impl ConditionRow {
    pub fn all_agree(&self) -> bool {
        let a = self.uniform_over_tuples;
        a == self.monotone
            && a == self.equals_w_r
            && a == self.characteristic
            && a == self.hyperinvariant
    }
}

/// Exact order of the automorphism group of a nilpotent operator with the
/// given exponents over GF(q), used only to route between the exhaustive
/// and the sampled uniformity sweep; the verified counts in the bijection
/// check always come from genuine enumeration. Saturates at `u128::MAX`.
pub(crate) fn aut_count_formula(exponents: &[usize], q: u8) -> u128 {
    let q = q as u128;
    let degree: usize = exponents
        .iter()
        .flat_map(|&ti| exponents.iter().map(move |&tj| ti.min(tj)))
        .sum();
    // multiplicities of the distinct exponent values
    let mut mults: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < exponents.len() {
        let j = (i..exponents.len())
            .take_while(|&j| exponents[j] == exponents[i])
            .count();
        mults.push(j);
        i += j;
    }
    let reduced: usize = mults.iter().map(|&m| m * (m + 1) / 2).sum();
    let Some(mut acc) = q.checked_pow((degree - reduced) as u32) else {
        return u128::MAX;
    };
    for &m in &mults {
        for i in 1..=m {
            let Some(factor) = q.checked_pow(i as u32) else {
                return u128::MAX;
            };
            let Some(next) = acc.checked_mul(factor - 1) else {
                return u128::MAX;
            };
            acc = next;
        }
    }
    acc
}

/// Sampled uniformity check, used when the tuple sweep does not fit in the
/// cap: the canonical tuple's one-entry modifications across every adjacent
/// pair (the constructive witnesses, guaranteed to expose any non-monotone
/// tuple) plus seeded random tuples.
fn uniformity_by_sampling(
    f: &Operator,
    canonical: &JordanStructure,
    r: &ExponentTuple,
    reference: &Subspace,
    opts: &SweepOptions,
    salt: u64,
) -> Result<bool> {
    if nonuniform_witness(f, canonical, r)?.is_some() {
        return Ok(false);
    }
    for cand in adjacent_modifications(f, canonical)? {
        if &w_ru(f, &cand, r)? != reference {
            return Ok(false);
        }
    }
    let mut rng = Rng::new(opts.seed ^ salt);
    for _ in 0..opts.sample_tuples {
        let Some(tuple) = random_generator_tuple(f, canonical, &mut rng, 64)? else {
            continue;
        };
        if &w_ru(f, &tuple, r)? != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluate the five conditions for one admissible depth tuple of a
/// nilpotent operator. Uniformity is exhaustive whenever the whole tuple
/// sweep fits in the cap, sampled otherwise.
pub fn evaluate_conditions(
    f: &Operator,
    r: &ExponentTuple,
    opts: &SweepOptions,
    salt: u64,
) -> Result<ConditionRow> {
    let canonical = jordan_structure(f)?;
    let reference = w_ru(f, &canonical, r)?;

    let tuple_total = aut_count_formula(&canonical.exponents, f.field().modulus());
    let (uniform, exhaustive) = if tuple_total <= opts.caps.tuples as u128 {
        (w_uniformity(f, r, &opts.caps)?.uniform(), true)
    } else {
        (
            uniformity_by_sampling(f, &canonical, r, &reference, opts, salt)?,
            false,
        )
    };

    let monotone = r.is_monotone();
    let equals_w_r = w_r(f, r)? == reference;
    let characteristic = is_characteristic(
        f,
        &reference,
        &opts.caps,
        ClassifyOptions {
            force_bruteforce: false,
        },
    )?
    .characteristic;
    let hyperinvariant = is_hyperinvariant(f, &reference)?.is_none();

    Ok(ConditionRow {
        depths: r.depths().to_vec(),
        uniform_over_tuples: uniform,
        uniform_exhaustive: exhaustive,
        monotone,
        equals_w_r,
        characteristic,
        hyperinvariant,
    })
}

/// Every one-entry modification of the canonical tuple used in the
/// constructive non-uniformity proofs: for each adjacent pair, replace
/// `u_{i+1}` by `u_i + u_{i+1}` and `u_i` by `u_i + f^{t_{i+1}-t_i} u_{i+1}`.
fn adjacent_modifications(f: &Operator, u: &JordanStructure) -> Result<Vec<JordanStructure>> {
    let mut out = Vec::new();
    let t = &u.exponents;
    for i in 0..u.generators.len().saturating_sub(1) {
        let mut m = u.clone();
        m.generators[i + 1] = m.generators[i].add(&m.generators[i + 1])?;
        debug_assert!(m.validate(f).is_ok());
        out.push(m);

        let mut m = u.clone();
        let shift = f.power(t[i + 1] - t[i]).mul_vec(&u.generators[i + 1])?;
        m.generators[i] = m.generators[i].add(&shift)?;
        debug_assert!(m.validate(f).is_ok());
        out.push(m);
    }
    Ok(out)
}

/// Draw a random generator tuple by rejection: random vectors of the right
/// exponent whose chains stay independent.
fn random_generator_tuple(
    f: &Operator,
    canonical: &JordanStructure,
    rng: &mut Rng,
    max_tries: u32,
) -> Result<Option<JordanStructure>> {
    let t = &canonical.exponents;
    let field = f.field();
    let p = field.modulus() as u64;
    'outer: for _ in 0..max_tries {
        let mut span = crate::classify::GenericSpan::new(field, f.dim());
        let mut generators = Vec::with_capacity(t.len());
        for &ti in t {
            let upper = f.kernel_of_power(ti);
            let lower = f.kernel_of_power(ti - 1);
            let mut found = false;
            for _ in 0..32 {
                let coords: Vec<u8> =
                    (0..upper.dim()).map(|_| rng.below(p) as u8).collect();
                let v = upper.lift(&coords);
                if v.is_zero() || lower.contains(&v)? {
                    continue;
                }
                let mark = span.rank();
                let chain = f.chain(&v);
                if chain.iter().all(|link| span.insert(link)) {
                    generators.push(v);
                    found = true;
                    break;
                }
                span.truncate(mark);
            }
            if !found {
                continue 'outer;
            }
        }
        let js = JordanStructure {
            exponents: t.clone(),
            generators,
        };
        debug_assert!(js.validate(f).is_ok());
        return Ok(Some(js));
    }
    Ok(None)
}

/// Pairwise agreement of the five conditions over every admissible depth
/// tuple of one nilpotent operator.
///
/// When the tuple sweep fits in the cap, all uniformity columns come from
/// one shared enumeration walk; otherwise each tuple is checked by
/// sampling.
pub fn check_condition_agreement(f: &Operator, opts: &SweepOptions) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("w_conditions_agree");
    let t = crate::operator::exponents_from_kernels(f)?;
    let tuples = admissible_tuples(&t);
    let tuple_total = aut_count_formula(&t, f.field().modulus());
    let exhaustive = tuple_total <= opts.caps.tuples as u128;

    let uniformity: Vec<bool> = if exhaustive {
        w_uniformity_multi(f, &tuples, &opts.caps)?
            .into_iter()
            .map(|o| o.uniform())
            .collect()
    } else {
        let canonical = jordan_structure(f)?;
        sweep::map(&tuples, |r| {
            let salt = r
                .depths()
                .iter()
                .fold(0u64, |acc, &d| acc.wrapping_mul(31).wrapping_add(d as u64));
            let reference = w_ru(f, &canonical, r)?;
            uniformity_by_sampling(f, &canonical, r, &reference, opts, salt)
        })
        .into_iter()
        .collect::<Result<_>>()?
    };

    let rest: Vec<Result<(bool, bool, bool, bool)>> = sweep::map(&tuples, |r| {
        let reference = w_ru(f, &jordan_structure(f)?, r)?;
        let monotone = r.is_monotone();
        let equals_w_r = w_r(f, r)? == reference;
        let characteristic = is_characteristic(
            f,
            &reference,
            &opts.caps,
            ClassifyOptions {
                force_bruteforce: false,
            },
        )?
        .characteristic;
        let hyperinvariant = is_hyperinvariant(f, &reference)?.is_none();
        Ok((monotone, equals_w_r, characteristic, hyperinvariant))
    });

    for ((r, uniform), row) in tuples.iter().zip(&uniformity).zip(rest) {
        let (monotone, equals_w_r, characteristic, hyperinvariant) = row?;
        outcome.checked += 1;
        let agree = *uniform == monotone
            && *uniform == equals_w_r
            && *uniform == characteristic
            && *uniform == hyperinvariant;
        if !agree {
            outcome.violation(format!(
                "t={t:?} r={:?}: uniform={} monotone={} equals_w_r={} characteristic={} hyperinvariant={}",
                r.depths(),
                uniform,
                monotone,
                equals_w_r,
                characteristic,
                hyperinvariant
            ));
        }
    }
    if !exhaustive {
        outcome.info = Some(format!(
            "uniformity checked by sampling for all {} tuples (group order {tuple_total} beyond the cap)",
            outcome.checked
        ));
    }
    Ok(outcome)
}

/// `W(r)` is hyperinvariant and contains `W(r, U)` for every admissible
/// `r`, and `W(r, U)` is marked with a verified witness.
pub fn check_w_family(f: &Operator, opts: &SweepOptions) -> Result<Vec<PropertyOutcome>> {
    let mut hyper = PropertyOutcome::new("w_r_hyperinvariant");
    let mut contained = PropertyOutcome::new("w_ru_inside_w_r");
    let mut marked = PropertyOutcome::new("w_ru_marked_with_witness");
    let canonical = jordan_structure(f)?;
    let t = canonical.exponents.clone();
    for r in admissible_tuples(&t) {
        let wr = w_r(f, &r)?;
        let wru = w_ru(f, &canonical, &r)?;
        hyper.checked += 1;
        if is_hyperinvariant(f, &wr)?.is_some() {
            hyper.violation(format!("r={:?}", r.depths()));
        }
        contained.checked += 1;
        if !wru.is_subspace_of(&wr)? {
            contained.violation(format!("r={:?}", r.depths()));
        }
        marked.checked += 1;
        match is_marked(f, &wru, &opts.caps)? {
            Markedness::Marked(w) => {
                if w_ru(f, &w.generators, &w.depths)? != wru {
                    marked.violation(format!("witness mismatch r={:?}", r.depths()));
                }
            }
            other => marked.violation(format!("r={:?}: {other:?}", r.depths())),
        }
    }
    Ok(vec![hyper, contained, marked])
}

/// Per invariant subspace: hyperinvariant iff characteristic and marked.
pub fn check_hyper_eq_char_and_marked(
    f: &Operator,
    opts: &SweepOptions,
) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("hyper_eq_char_and_marked");
    let invariant = enumerate_invariant_subspaces(f, &opts.caps)?;
    let copts = ClassifyOptions {
        force_bruteforce: opts.force_bruteforce,
    };
    let rows: Vec<Result<(bool, Option<String>)>> = sweep::map(&invariant, |x| {
        let report = classify_subspace(f, x, &opts.caps, copts)?;
        let ok = match (
            report.hyperinvariant.as_bool(),
            report.characteristic.as_bool(),
            report.marked.as_bool(),
        ) {
            (Some(h), Some(c), Some(m)) => h == (c && m),
            _ => false, // undecided counts as a violation at these sizes
        };
        let witness = if ok {
            None
        } else {
            Some(format!(
                "x={x}: hyper={} char={} marked={}",
                report.hyperinvariant, report.characteristic, report.marked
            ))
        };
        Ok((ok, witness))
    });
    for row in rows {
        let (ok, witness) = row?;
        outcome.checked += 1;
        if !ok {
            outcome.violation(witness.unwrap_or_default());
        }
    }
    Ok(outcome)
}

/// The hyperinvariant family from the `W(r)` construction equals the
/// brute-force filter of the invariant family.
pub fn check_hinv_matches_filter(f: &Operator, opts: &SweepOptions) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("hinv_matches_filter");
    let lat = enumerate_hinv(f)?;
    let filtered: Vec<Subspace> = enumerate_invariant_subspaces(f, &opts.caps)?
        .into_iter()
        .filter(|s| is_hyperinvariant(f, s).expect("invariant").is_none())
        .collect();
    outcome.checked = filtered.len() as u64 + lat.len() as u64;
    for s in &filtered {
        if !lat.contains(s) {
            outcome.violation(format!("missing from construction: {s}"));
        }
    }
    if lat.len() != filtered.len() {
        outcome.violation(format!(
            "construction has {} elements, filter has {}",
            lat.len(),
            filtered.len()
        ));
    }
    Ok(outcome)
}

/// Count of invertible commutant members equals count of generator tuples.
pub fn check_aut_tuple_bijection(f: &Operator, opts: &SweepOptions) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("aut_count_equals_tuple_count");
    let members = count_invertible_commutant_members(f, &opts.caps)?;
    let tuples = count_generator_tuples(f, &opts.caps)?;
    outcome.checked = 1;
    if members != tuples {
        outcome.violation(format!("{members} invertible members vs {tuples} tuples"));
    } else {
        outcome.info = Some(format!("count = {members}"));
    }
    Ok(outcome)
}

/// Hyperinvariant subspaces split over every enumerated invariant
/// direct-sum decomposition; non-hyperinvariant ones fail over some
/// decomposition induced by a generator tuple.
pub fn check_distributivity_characterization(
    f: &Operator,
    opts: &SweepOptions,
) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("distributivity_characterizes_hyper");
    let invariant = enumerate_invariant_subspaces(f, &opts.caps)?;
    // decompositions: all complementary invariant pairs, plus the cyclic
    // decompositions from every generator tuple
    let mut decomps: Vec<Vec<Subspace>> = Vec::new();
    for a in &invariant {
        for b in &invariant {
            if a.dim() + b.dim() == f.dim() && a.intersect(b)?.is_zero_space() {
                decomps.push(vec![a.clone(), b.clone()]);
            }
        }
    }
    // cyclic decompositions from generator tuples, when the group fits in
    // the cap; the pair enumeration alone is already conclusive
    let tuple_decomps: Vec<Vec<Subspace>> = if f.is_nilpotent()
        && aut_count_formula(
            &crate::operator::exponents_from_kernels(f)?,
            f.field().modulus(),
        ) <= opts.caps.tuples as u128
    {
        enumerate_generator_tuples(f, &opts.caps)?
            .into_iter()
            .map(|js| {
                js.generators
                    .iter()
                    .map(|u| f.cyclic_subspace(u))
                    .collect::<Vec<_>>()
            })
            .collect()
    } else {
        Vec::new()
    };
    decomps.extend(tuple_decomps.iter().cloned());

    for x in &invariant {
        outcome.checked += 1;
        let hyper = is_hyperinvariant(f, x)?.is_none();
        if hyper {
            for parts in &decomps {
                if !check_distributivity(f, x, parts)? {
                    outcome.violation(format!("hyperinvariant {x} fails to split"));
                    break;
                }
            }
        } else {
            // a failing q-part decomposition always groups into a failing
            // complementary pair, so the pair enumeration is conclusive
            let found = decomps
                .iter()
                .any(|parts| !check_distributivity(f, x, parts).unwrap_or(true));
            if !found {
                outcome.violation(format!(
                    "non-hyperinvariant {x} splits over every enumerated decomposition"
                ));
            }
        }
    }
    Ok(outcome)
}

/// Over fields with more than two elements, characteristic (decided by
/// genuine automorphism enumeration) coincides with hyperinvariant.
pub fn check_char_eq_hyper_big_fields(
    f: &Operator,
    opts: &SweepOptions,
) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("char_eq_hyper_over_bigger_fields");
    if f.field().modulus() == 2 {
        outcome.info = Some("not applicable over GF(2)".to_string());
        return Ok(outcome);
    }
    let invariant = enumerate_invariant_subspaces(f, &opts.caps)?;
    for x in &invariant {
        outcome.checked += 1;
        let hyper = is_hyperinvariant(f, x)?.is_none();
        let char_enum = is_characteristic(
            f,
            x,
            &opts.caps,
            ClassifyOptions {
                force_bruteforce: true,
            },
        )?
        .characteristic;
        if hyper != char_enum {
            outcome.violation(format!("x={x}: hyper={hyper} characteristic={char_enum}"));
        }
    }
    Ok(outcome)
}

/// Containments over the enumerated invariant family:
/// every hyperinvariant subspace is both characteristic and marked.
pub fn check_containments(f: &Operator, opts: &SweepOptions) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("hyper_within_char_and_marked");
    let invariant = enumerate_invariant_subspaces(f, &opts.caps)?;
    let copts = ClassifyOptions {
        force_bruteforce: opts.force_bruteforce,
    };
    for x in &invariant {
        if is_hyperinvariant(f, x)?.is_some() {
            continue;
        }
        outcome.checked += 1;
        if !is_characteristic(f, x, &opts.caps, copts)?.characteristic {
            outcome.violation(format!("hyperinvariant {x} is not characteristic"));
        }
        if crate::classify::marked_verdict(f, x, &opts.caps)? != Verdict::Yes {
            outcome.violation(format!("hyperinvariant {x} is not marked"));
        }
    }
    Ok(outcome)
}

/// Componentwise classification agrees with the direct ambient predicates,
/// and the eigen decomposition bookkeeping holds.
pub fn check_componentwise(f: &Operator, opts: &SweepOptions) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("componentwise_matches_direct");
    let components = decompose(f)?;
    let total: usize = components.iter().map(|c| c.dim()).sum();
    outcome.checked += 1;
    if total != f.dim() {
        outcome.violation(format!("components span {total} of {}", f.dim()));
        return Ok(outcome);
    }
    for comp in &components {
        if !is_invariant(f, &comp.space)? {
            outcome.violation(format!("component of {} is not invariant", comp.lambda));
        }
        if !comp.nilpotent_part().is_nilpotent() {
            outcome.violation(format!("nilpotent part of {} is not nilpotent", comp.lambda));
        }
    }
    let invariant = enumerate_invariant_subspaces(f, &opts.caps)?;
    let copts = ClassifyOptions {
        force_bruteforce: opts.force_bruteforce,
    };
    for x in &invariant {
        outcome.checked += 1;
        let report = classify_subspace(f, x, &opts.caps, copts)?;
        let direct_hyper = Verdict::from(is_hyperinvariant(f, x)?.is_none());
        if report.hyperinvariant != direct_hyper {
            outcome.violation(format!(
                "x={x}: componentwise hyper={} direct={}",
                report.hyperinvariant, direct_hyper
            ));
        }
        // the split must cover x exactly (checked inside classify_subspace,
        // which errors otherwise)
    }
    Ok(outcome)
}

/// Closure behavior of the marked family; informational, never a failure.
pub fn report_marked_closure(f: &Operator, opts: &SweepOptions) -> Result<PropertyOutcome> {
    let mut outcome = PropertyOutcome::new("marked_family_closure_report");
    let fam = enumerate_marked(f, &opts.caps)?;
    outcome.checked = fam.elements.len() as u64;
    let mut info = String::new();
    match fam.sum_closure {
        Some((true, _)) => write!(info, "closed under sum; ").unwrap(),
        Some((false, _)) => write!(info, "NOT closed under sum; ").unwrap(),
        None => write!(info, "sum closure undecided; ").unwrap(),
    }
    match fam.intersection_closure {
        Some((true, _)) => write!(info, "closed under intersection").unwrap(),
        Some((false, _)) => write!(info, "NOT closed under intersection").unwrap(),
        None => write!(info, "intersection closure undecided").unwrap(),
    }
    outcome.info = Some(info);
    Ok(outcome)
}

/// Run every suite that applies to the operator. A sub-check whose sweep
/// does not fit in the caps is recorded as skipped, never silently dropped;
/// any other error aborts.
pub fn run_operator_suite(f: &Operator, opts: &SweepOptions) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let add = |report: &mut VerifyReport,
                   name: &str,
                   result: Result<Vec<PropertyOutcome>>|
     -> Result<()> {
        match result {
            Ok(outcomes) => report.merge(outcomes),
            Err(Error::EnumerationTooLarge { what, needed, .. }) => {
                let mut o = PropertyOutcome::new(name);
                o.info = Some(format!("skipped: {what} sweep needs {needed} items"));
                report.merge(vec![o]);
            }
            Err(e) => return Err(e),
        }
        Ok(())
    };
    let components = decompose(f)?;
    add(
        &mut report,
        "componentwise_matches_direct",
        check_componentwise(f, opts).map(|o| vec![o]),
    )?;
    add(
        &mut report,
        "hyper_eq_char_and_marked",
        check_hyper_eq_char_and_marked(f, opts).map(|o| vec![o]),
    )?;
    add(
        &mut report,
        "hyper_within_char_and_marked",
        check_containments(f, opts).map(|o| vec![o]),
    )?;
    add(
        &mut report,
        "char_eq_hyper_over_bigger_fields",
        check_char_eq_hyper_big_fields(f, opts).map(|o| vec![o]),
    )?;
    add(
        &mut report,
        "distributivity_characterizes_hyper",
        check_distributivity_characterization(f, opts).map(|o| vec![o]),
    )?;
    add(
        &mut report,
        "marked_family_closure_report",
        report_marked_closure(f, opts).map(|o| vec![o]),
    )?;
    add(
        &mut report,
        "hinv_matches_filter",
        check_hinv_matches_filter(f, opts).map(|o| vec![o]),
    )?;
    for comp in &components {
        let nil = comp.nilpotent_part();
        add(&mut report, "w_family", check_w_family(&nil, opts))?;
        add(
            &mut report,
            "w_conditions_agree",
            check_condition_agreement(&nil, opts).map(|o| vec![o]),
        )?;
        add(
            &mut report,
            "aut_count_equals_tuple_count",
            check_aut_tuple_bijection(&nil, opts).map(|o| vec![o]),
        )?;
    }
    Ok(report)
}

/// Seeded random nilpotent operator: a random partition of `n` conjugated
/// by a random invertible matrix.
pub(crate) fn random_nilpotent(field: PrimeField, n: usize, rng: &mut Rng) -> Operator {
    let parts = partitions(n);
    let t = &parts[rng.below(parts.len() as u64) as usize];
    let base = Operator::nilpotent_blocks(field, t).expect("valid sizes");
    let p = field.modulus() as u64;
    loop {
        let g = MatrixF::from_fn(field, n, n, |_, _| rng.below(p) as u8);
        let Ok(Some(ginv)) = g.inverse() else {
            continue;
        };
        let m = g
            .mul(base.matrix())
            .and_then(|gm| gm.mul(&ginv))
            .expect("square");
        return Operator::new(m).expect("square");
    }
}

/// Seeded random operator with a split characteristic polynomial: a random
/// block-diagonal of shifted nilpotent blocks, conjugated.
pub(crate) fn random_split_operator(field: PrimeField, n: usize, rng: &mut Rng) -> Operator {
    let p = field.modulus() as u64;
    // split n into eigenvalue groups
    let mut remaining = n;
    let mut blocks: Vec<(u8, usize)> = Vec::new();
    while remaining > 0 {
        let size = 1 + rng.below(remaining as u64) as usize;
        let lambda = rng.below(p) as u8;
        blocks.push((lambda, size));
        remaining -= size;
    }
    let mut m = MatrixF::zeros(field, n, n);
    let mut offset = 0usize;
    for &(lambda, size) in &blocks {
        let parts = partitions(size);
        let t = &parts[rng.below(parts.len() as u64) as usize];
        let nil = Operator::nilpotent_blocks(field, t).expect("valid sizes");
        for i in 0..size {
            for j in 0..size {
                let mut v = nil.matrix().get(i, j);
                if i == j {
                    v = field.add(v, lambda);
                }
                m.set(offset + i, offset + j, v);
            }
        }
        offset += size;
    }
    loop {
        let g = MatrixF::from_fn(field, n, n, |_, _| rng.below(p) as u8);
        let Ok(Some(ginv)) = g.inverse() else {
            continue;
        };
        let conj = g.mul(&m).and_then(|gm| gm.mul(&ginv)).expect("square");
        return Operator::new(conj).expect("square");
    }
}

/// Randomized suite: `count` seeded operators of dimension `n` over GF(p),
/// mixing nilpotent and general split operators. Fully reproducible for a
/// fixed seed.
pub fn run_random_suite(
    p: u16,
    n: usize,
    count: u32,
    seed: u64,
    opts: &SweepOptions,
) -> Result<VerifyReport> {
    let field = PrimeField::new(p)?;
    let mut rng = Rng::new(seed);
    let mut report = VerifyReport::default();
    for i in 0..count {
        let f = if i % 2 == 0 {
            random_nilpotent(field, n, &mut rng)
        } else {
            random_split_operator(field, n, &mut rng)
        };
        let sub = run_operator_suite(&f, opts)?;
        report.merge(sub.outcomes);
    }
    Ok(report)
}
