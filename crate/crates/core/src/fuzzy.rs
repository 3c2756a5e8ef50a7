//! Fuzzy membership over ordered elements and the fuzzy cardinality of
//! intersections.
//!
//! States remain exclusive; fuzziness enters only through the membership a
//! state gets in a nearby element, which in turn softens the cardinality of
//! intersections used by dissimilarities and the mixed rule.

use crate::error::{Error, Result};
use crate::frame::OrderedElement;
use crate::metric::{d_elem, ElementDistanceMode};

/// Parameters of the membership function: `alpha` scales the membership of
/// outside states, `gamma` drives the exponential decay with distance, and
/// `mode` selects the element distance used for the decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyParams {
    alpha: f64,
    gamma: f64,
    mode: ElementDistanceMode,
    extended_gamma: bool,
}

impl FuzzyParams {
    /// Validated construction: both `alpha` and `gamma` must lie in [0, 1].
    pub fn new(alpha: f64, gamma: f64, mode: ElementDistanceMode) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::ParamOutOfRange {
                name: "alpha",
                value: alpha,
            });
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::ParamOutOfRange {
                name: "gamma",
                value: gamma,
            });
        }
        Ok(FuzzyParams {
            alpha,
            gamma,
            mode,
            extended_gamma: false,
        })
    }

    /// Permits `gamma > 1` for experimentation. Such parameters are flagged,
    /// see [`has_extended_gamma`](Self::has_extended_gamma).
    pub fn with_extended_gamma(alpha: f64, gamma: f64, mode: ElementDistanceMode) -> Result<Self> {
        if gamma <= 1.0 {
            return Self::new(alpha, gamma, mode);
        }
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::ParamOutOfRange {
                name: "alpha",
                value: alpha,
            });
        }
        if !gamma.is_finite() {
            return Err(Error::ParamOutOfRange {
                name: "gamma",
                value: gamma,
            });
        }
        Ok(FuzzyParams {
            alpha,
            gamma,
            mode,
            extended_gamma: true,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mode(&self) -> ElementDistanceMode {
        self.mode
    }

    /// True when `gamma` was allowed outside the validated [0, 1] range.
    pub fn has_extended_gamma(&self) -> bool {
        self.extended_gamma
    }
}

impl Default for FuzzyParams {
    /// `alpha = 0`, `gamma = 0`: crisp membership.
    fn default() -> Self {
        FuzzyParams {
            alpha: 0.0,
            gamma: 0.0,
            mode: ElementDistanceMode::Average,
            extended_gamma: false,
        }
    }
}

/// Membership of the state `w_i` in the element `x` over a frame of `n`
/// states: 1 inside `x`, `alpha * exp(-gamma * d(w_i, x))` outside.
pub fn membership(n: usize, i: usize, x: &OrderedElement, params: &FuzzyParams) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptyElement);
    }
    if x.contains(i) {
        return Ok(1.0);
    }
    let d = d_elem(n, i, x, params.mode)?;
    Ok(params.alpha * (-params.gamma * d).exp())
}

/// Fuzzy cardinality of `x` intersected with `y`: the sum over the states of
/// the ordered union of the smaller of the two memberships. With `alpha = 0`
/// this is the crisp `|x intersect y|`.
pub fn fuzzy_intersection_cardinality(
    n: usize,
    x: &OrderedElement,
    y: &OrderedElement,
    params: &FuzzyParams,
) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyElement);
    }
    let support = x.ordered_union(y);
    let mut total = 0.0;
    for i in support.members() {
        let mx = membership(n, i, x, params)?;
        let my = membership(n, i, y, params)?;
        total += mx.min(my);
    }
    Ok(total)
}
