//! Decision operators and the distance-scaled conflict measure.

use crate::error::{Error, Result};
use crate::frame::OrderedElement;
use crate::mass::MassFunction;
use crate::metric::{belief_distance, DissimilarityMatrix, MatrixKind};

/// Pointwise criteria decide on single states; `DistanceMin` decides on any
/// candidate element by nearness of the matching categorical mass.
#[derive(Debug, Clone, PartialEq)]
pub enum DecisionCriterion {
    Bel,
    Pl,
    BetP,
    DistanceMin {
        candidates: Vec<OrderedElement>,
        kind: MatrixKind,
    },
}

/// Criteria evaluated state by state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseCriterion {
    Bel,
    Pl,
    BetP,
}

/// State with the highest criterion value; ties go to the smallest ordinal,
/// so decisions are reproducible.
pub fn decide_pointwise(m: &MassFunction, criterion: PointwiseCriterion) -> Result<usize> {
    if m.empty_mass() >= 1.0 - crate::mass::NORMALIZATION_TOLERANCE {
        return Err(Error::TotalConflict);
    }
    let mut best = 1;
    let mut best_score = f64::NEG_INFINITY;
    for i in 1..=m.frame().len() {
        let score = pointwise_score(m, criterion, i)?;
        if score > best_score {
            best = i;
            best_score = score;
        }
    }
    Ok(best)
}

/// Criterion values for every state, in ordinal order.
pub fn pointwise_scores(m: &MassFunction, criterion: PointwiseCriterion) -> Result<Vec<f64>> {
    (1..=m.frame().len())
        .map(|i| pointwise_score(m, criterion, i))
        .collect()
}

fn pointwise_score(m: &MassFunction, criterion: PointwiseCriterion, i: usize) -> Result<f64> {
    let singleton = m.frame().singleton(i)?;
    Ok(match criterion {
        PointwiseCriterion::Bel => m.bel(&singleton),
        PointwiseCriterion::Pl => m.pl(&singleton),
        PointwiseCriterion::BetP => m.betp(i)?,
    })
}

/// Candidate whose categorical mass is nearest to `m` under the matrix
/// weighting. Unlike the pointwise criteria this can decide on imprecise
/// elements. Ties go to the lowest canonical enumeration index.
pub fn decide_distance(
    m: &MassFunction,
    candidates: &[OrderedElement],
    matrix: &DissimilarityMatrix,
) -> Result<OrderedElement> {
    Ok(decide_distance_scored(m, candidates, matrix)?.0)
}

/// Like [`decide_distance`] but also returns the distances per candidate, in
/// input order.
pub fn decide_distance_scored(
    m: &MassFunction,
    candidates: &[OrderedElement],
    matrix: &DissimilarityMatrix,
) -> Result<(OrderedElement, Vec<f64>)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let mut scores = Vec::with_capacity(candidates.len());
    let mut best: Option<(OrderedElement, f64)> = None;
    for x in candidates {
        let target = MassFunction::categorical(m.frame().clone(), *x)?;
        let d = belief_distance(m, &target, matrix)?;
        scores.push(d);
        let better = match best {
            None => true,
            Some((b, bd)) => {
                d < bd || (d == bd && x.canonical_index() < b.canonical_index())
            }
        };
        if better {
            best = Some((*x, d));
        }
    }
    Ok((best.expect("candidates are non-empty").0, scores))
}

/// Dispatch over [`DecisionCriterion`]; pointwise criteria return the chosen
/// state as a singleton element.
pub fn decide(m: &MassFunction, criterion: &DecisionCriterion) -> Result<OrderedElement> {
    match criterion {
        DecisionCriterion::Bel => {
            m.frame().singleton(decide_pointwise(m, PointwiseCriterion::Bel)?)
        }
        DecisionCriterion::Pl => {
            m.frame().singleton(decide_pointwise(m, PointwiseCriterion::Pl)?)
        }
        DecisionCriterion::BetP => {
            m.frame().singleton(decide_pointwise(m, PointwiseCriterion::BetP)?)
        }
        DecisionCriterion::DistanceMin { candidates, kind } => {
            let matrix = DissimilarityMatrix::cached(m.frame(), kind.clone())?;
            decide_distance(m, candidates, &matrix)
        }
    }
}

/// Degree of inclusion between two bodies of evidence: the share of focal
/// pairs `(X, Y)` with `X` a subset of `Y`, averaged over both focal sets,
/// symmetrized by taking the larger direction. Empty focal elements carry
/// conflict rather than evidence and are left out; a mass whose only focal
/// element is empty contributes 0.
pub fn inclusion_degree(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    Ok(directed_inclusion(m1, m2).max(directed_inclusion(m2, m1)))
}

fn directed_inclusion(from: &MassFunction, to: &MassFunction) -> f64 {
    let f: Vec<&OrderedElement> = from
        .focal()
        .map(|(e, _)| e)
        .filter(|e| !e.is_empty())
        .collect();
    let g: Vec<&OrderedElement> = to
        .focal()
        .map(|(e, _)| e)
        .filter(|e| !e.is_empty())
        .collect();
    if f.is_empty() || g.is_empty() {
        return 0.0;
    }
    let mut hits = 0usize;
    for x in &f {
        for y in &g {
            if x.subset(y) {
                hits += 1;
            }
        }
    }
    hits as f64 / (f.len() * g.len()) as f64
}

/// Conflict between two mass functions: the distance, scaled down by how
/// much one body of evidence is included in the other.
pub fn conflict(
    m1: &MassFunction,
    m2: &MassFunction,
    matrix: &DissimilarityMatrix,
) -> Result<f64> {
    let inclusion = inclusion_degree(m1, m2)?;
    let distance = belief_distance(m1, m2, matrix)?;
    Ok((1.0 - inclusion) * distance)
}

/// Mean pairwise conflict over two or more sources, all weighted by one
/// shared matrix.
pub fn conflict_multi(sources: &[MassFunction], matrix: &DissimilarityMatrix) -> Result<f64> {
    if sources.len() < 2 {
        return Err(Error::TooFewSources {
            expected: 2,
            got: sources.len(),
        });
    }
    let mut total = 0.0;
    let mut pairs = 0usize;
    for (i, a) in sources.iter().enumerate() {
        for b in &sources[i + 1..] {
            total += conflict(a, b, matrix)?;
            pairs += 1;
        }
    }
    Ok(total / pairs as f64)
}
