//! Combination rules on the ordered power set.
//!
//! The conjunctive family needs nothing new: intervals are closed under
//! intersection. The disjunctive side requires the ordered union, which maps
//! any pair of intervals back into an interval; the plain set union does not
//! (`w1 union w3` has no interval encoding). All rules enumerate products of
//! focal sets directly; with at most `n(n+1)/2` focal elements per source
//! there is nothing to optimize at this scale.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::OrderedElement;
use crate::fuzzy::{fuzzy_intersection_cardinality, FuzzyParams};
use crate::mass::MassFunction;

/// Per-pair weight of the conjunctive share in the mixed rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaPolicy {
    /// `|Y1 n Y2| / |Y1 uo Y2|`: crisp cardinality ratio. Zero on disjoint
    /// pairs, so no mass reaches the empty set.
    Crisp,
    /// Same ratio with the fuzzy intersection cardinality in the numerator.
    Fuzzy(FuzzyParams),
}

impl DeltaPolicy {
    /// The conjunctive share for one focal pair, in [0, 1]. Pairs involving
    /// the empty set get 0: the whole product goes to the ordered union.
    pub fn delta2(&self, n: usize, y1: &OrderedElement, y2: &OrderedElement) -> f64 {
        if y1.is_empty() || y2.is_empty() {
            return 0.0;
        }
        let union = y1.ordered_union(y2).cardinality() as f64;
        match self {
            DeltaPolicy::Crisp => y1.intersect(y2).cardinality() as f64 / union,
            DeltaPolicy::Fuzzy(params) => {
                let card = fuzzy_intersection_cardinality(n, y1, y2, params)
                    .expect("both elements are non-empty");
                card / union
            }
        }
    }
}

/// Rule selection, including the delta policy of the mixed rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleId {
    Conjunctive,
    Dempster,
    Yager,
    OrderedDisjunctive,
    OrderedDuboisPrade,
    Average,
    Mixed(DeltaPolicy),
}

impl RuleId {
    pub fn name(&self) -> &'static str {
        match self {
            RuleId::Conjunctive => "conj",
            RuleId::Dempster => "dempster",
            RuleId::Yager => "yager",
            RuleId::OrderedDisjunctive => "odisj",
            RuleId::OrderedDuboisPrade => "odp",
            RuleId::Average => "avg",
            RuleId::Mixed(_) => "mixed",
        }
    }

    /// Applies the rule to two or more sources. The binary rules extend as
    /// follows: the conjunctive, Dempster and disjunctive rules fold (they
    /// are associative, so the fold equals the tuple-wise rule), Yager
    /// transfers the total n-way conflict to the whole frame once, and the
    /// mixed rule accepts exactly two sources. Dubois-Prade is applied
    /// tuple-wise because it is not associative.
    pub fn apply(&self, sources: &[MassFunction]) -> Result<MassFunction> {
        if sources.len() < 2 {
            return Err(Error::TooFewSources {
                expected: 2,
                got: sources.len(),
            });
        }
        match self {
            RuleId::Conjunctive => fold_binary(sources, conjunctive),
            RuleId::Dempster => fold_binary(sources, dempster),
            RuleId::Yager => {
                let pooled = fold_binary(sources, conjunctive)?;
                Ok(transfer_conflict_to_frame(pooled))
            }
            RuleId::OrderedDisjunctive => fold_binary(sources, |a, b| {
                ordered_disjunctive(&[a.clone(), b.clone()])
            }),
            RuleId::OrderedDuboisPrade => ordered_dubois_prade(sources),
            RuleId::Average => average(sources),
            RuleId::Mixed(policy) => {
                if sources.len() != 2 {
                    return Err(Error::MixedArity(sources.len()));
                }
                mixed(&sources[0], &sources[1], policy)
            }
        }
    }
}

fn fold_binary(
    sources: &[MassFunction],
    rule: fn(&MassFunction, &MassFunction) -> Result<MassFunction>,
) -> Result<MassFunction> {
    let mut acc = rule(&sources[0], &sources[1])?;
    for m in &sources[2..] {
        acc = rule(&acc, m)?;
    }
    Ok(acc)
}

fn check_same_frame(sources: &[MassFunction]) -> Result<()> {
    let first = sources[0].frame();
    if sources[1..].iter().any(|m| m.frame() != first) {
        return Err(Error::FrameMismatch);
    }
    Ok(())
}

/// Unnormalized conjunctive rule: every focal product lands on the pair's
/// intersection, conflict accumulating on the empty set.
pub fn conjunctive(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    check_same_frame(&[m1.clone(), m2.clone()][..])?;
    let mut out: BTreeMap<OrderedElement, f64> = BTreeMap::new();
    for (y1, v1) in m1.focal() {
        for (y2, v2) in m2.focal() {
            *out.entry(y1.intersect(y2)).or_insert(0.0) += v1 * v2;
        }
    }
    Ok(MassFunction::from_combination(m1.frame().clone(), out))
}

/// Dempster's rule: conjunctive, then the empty-set mass is renormalized
/// away. Fails on total conflict.
pub fn dempster(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let pooled = conjunctive(m1, m2)?;
    let conflict = pooled.empty_mass();
    if conflict >= 1.0 - 1e-12 {
        return Err(Error::TotalConflict);
    }
    let scale = 1.0 - conflict;
    let out: BTreeMap<OrderedElement, f64> = pooled
        .focal()
        .filter(|(e, _)| !e.is_empty())
        .map(|(e, v)| (*e, v / scale))
        .collect();
    Ok(MassFunction::from_combination(m1.frame().clone(), out))
}

/// Yager's rule: conjunctive, then the conflict mass moves onto the whole
/// frame instead of being renormalized.
pub fn yager(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    Ok(transfer_conflict_to_frame(conjunctive(m1, m2)?))
}

fn transfer_conflict_to_frame(pooled: MassFunction) -> MassFunction {
    let conflict = pooled.empty_mass();
    if conflict == 0.0 {
        return pooled;
    }
    let full = pooled.frame().full();
    let mut out: BTreeMap<OrderedElement, f64> = pooled
        .focal()
        .filter(|(e, _)| !e.is_empty())
        .map(|(e, v)| (*e, v))
        .collect();
    *out.entry(full).or_insert(0.0) += conflict;
    MassFunction::from_combination(pooled.frame().clone(), out)
}

/// Ordered disjunctive rule over `s >= 2` sources: each tuple of focal
/// elements sends its product onto the fold of their ordered unions, so the
/// output stays inside the ordered power set by construction.
pub fn ordered_disjunctive(sources: &[MassFunction]) -> Result<MassFunction> {
    require_sources(sources, 2)?;
    check_same_frame(sources)?;
    let mut out: BTreeMap<OrderedElement, f64> = BTreeMap::new();
    for_each_focal_tuple(sources, |elems, product| {
        let union = elems
            .iter()
            .fold(OrderedElement::EMPTY, |acc, e| acc.ordered_union(e));
        *out.entry(union).or_insert(0.0) += product;
    });
    Ok(MassFunction::from_combination(
        sources[0].frame().clone(),
        out,
    ))
}

/// Ordered Dubois-Prade rule over `s >= 2` sources, tuple-wise: agreeing
/// tuples keep the conjunctive target, conflicting tuples transfer their
/// product onto the ordered union of the tuple. Applied per tuple, not by
/// iterated pairwise combination (the rule is not associative); see
/// [`ordered_dubois_prade_pairwise`] for the folded variant.
///
/// Tuples made solely of empty focal elements keep their mass on the empty
/// set, so the output is conflict-free whenever the inputs are.
pub fn ordered_dubois_prade(sources: &[MassFunction]) -> Result<MassFunction> {
    require_sources(sources, 2)?;
    check_same_frame(sources)?;
    let mut out: BTreeMap<OrderedElement, f64> = BTreeMap::new();
    for_each_focal_tuple(sources, |elems, product| {
        let mut inter = elems[0];
        for e in &elems[1..] {
            inter = inter.intersect(e);
        }
        let target = if inter.is_empty() {
            elems
                .iter()
                .fold(OrderedElement::EMPTY, |acc, e| acc.ordered_union(e))
        } else {
            inter
        };
        *out.entry(target).or_insert(0.0) += product;
    });
    Ok(MassFunction::from_combination(
        sources[0].frame().clone(),
        out,
    ))
}

/// Iterated two-way Dubois-Prade. Not equivalent to the tuple-wise rule for
/// more than two sources; exposed for comparison.
pub fn ordered_dubois_prade_pairwise(sources: &[MassFunction]) -> Result<MassFunction> {
    require_sources(sources, 2)?;
    check_same_frame(sources)?;
    fold_binary(sources, |a, b| {
        ordered_dubois_prade(&[a.clone(), b.clone()])
    })
}

/// Mean of the input masses. The focal set of the result is the union of the
/// input focal sets.
pub fn average(sources: &[MassFunction]) -> Result<MassFunction> {
    require_sources(sources, 1)?;
    check_same_frame(sources)?;
    let share = 1.0 / sources.len() as f64;
    let mut out: BTreeMap<OrderedElement, f64> = BTreeMap::new();
    for m in sources {
        for (e, v) in m.focal() {
            *out.entry(*e).or_insert(0.0) += v * share;
        }
    }
    Ok(MassFunction::from_combination(
        sources[0].frame().clone(),
        out,
    ))
}

/// Mixed rule with the given delta policy: each focal product splits between
/// the intersection (share `delta2`) and the ordered union (share
/// `1 - delta2`).
pub fn mixed(m1: &MassFunction, m2: &MassFunction, policy: &DeltaPolicy) -> Result<MassFunction> {
    let n = m1.frame().len();
    mixed_with(m1, m2, |y1, y2| policy.delta2(n, y1, y2))
}

/// Mixed rule with an arbitrary per-pair weight function; the weight must
/// lie in [0, 1].
pub fn mixed_with<F>(m1: &MassFunction, m2: &MassFunction, delta2: F) -> Result<MassFunction>
where
    F: Fn(&OrderedElement, &OrderedElement) -> f64,
{
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    let mut out: BTreeMap<OrderedElement, f64> = BTreeMap::new();
    for (y1, v1) in m1.focal() {
        for (y2, v2) in m2.focal() {
            let d2 = delta2(y1, y2);
            if !(0.0..=1.0).contains(&d2) {
                return Err(Error::InvalidDelta(d2));
            }
            let product = v1 * v2;
            if d2 > 0.0 {
                *out.entry(y1.intersect(y2)).or_insert(0.0) += d2 * product;
            }
            if d2 < 1.0 {
                *out.entry(y1.ordered_union(y2)).or_insert(0.0) += (1.0 - d2) * product;
            }
        }
    }
    Ok(MassFunction::from_combination(m1.frame().clone(), out))
}

fn require_sources(sources: &[MassFunction], expected: usize) -> Result<()> {
    if sources.len() < expected {
        return Err(Error::TooFewSources {
            expected,
            got: sources.len(),
        });
    }
    Ok(())
}

/// Visits the cartesian product of the sources' focal sets with the product
/// of the matching masses.
fn for_each_focal_tuple<F>(sources: &[MassFunction], mut visit: F)
where
    F: FnMut(&[OrderedElement], f64),
{
    let focal: Vec<Vec<(OrderedElement, f64)>> = sources
        .iter()
        .map(|m| m.focal().map(|(e, v)| (*e, v)).collect())
        .collect();
    let mut index = vec![0usize; focal.len()];
    let mut elems = vec![OrderedElement::EMPTY; focal.len()];
    loop {
        let mut product = 1.0;
        for (k, &i) in index.iter().enumerate() {
            let (e, v) = focal[k][i];
            elems[k] = e;
            product *= v;
        }
        visit(&elems, product);

        let mut carry = true;
        for k in (0..index.len()).rev() {
            index[k] += 1;
            if index[k] < focal[k].len() {
                carry = false;
                break;
            }
            index[k] = 0;
        }
        if carry {
            return;
        }
    }
}
