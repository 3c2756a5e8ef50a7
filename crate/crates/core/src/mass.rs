//! Mass functions on the ordered power set and the belief transforms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{OrderedElement, OrderedFrame};

/// Absolute tolerance on the mass total when validating normalization.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A normalized assignment of mass to elements of the ordered power set.
///
/// Zero-mass entries are dropped, so the stored key set is exactly the focal
/// set. Mass on the empty set is permitted (it is produced by unnormalized
/// conjunctive combination); the transforms account for it.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: OrderedFrame,
    masses: BTreeMap<OrderedElement, f64>,
}

impl MassFunction {
    /// Builds a mass function from `(element, mass)` entries. Duplicate
    /// elements are merged by summation, zero masses are dropped, and the
    /// total must be 1 within [`NORMALIZATION_TOLERANCE`].
    pub fn new<I>(frame: OrderedFrame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OrderedElement, f64)>,
    {
        let masses = Self::collect(&frame, entries)?;
        let sum: f64 = masses.values().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum });
        }
        Ok(MassFunction { frame, masses })
    }

    /// Like [`new`](Self::new) but rescales the entries so they sum to 1.
    /// Rescaling is always explicit, never implied by `new`.
    pub fn renormalized<I>(frame: OrderedFrame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OrderedElement, f64)>,
    {
        let mut masses = Self::collect(&frame, entries)?;
        let sum: f64 = masses.values().sum();
        if sum <= 0.0 {
            return Err(Error::NotNormalized { sum });
        }
        for v in masses.values_mut() {
            *v /= sum;
        }
        Ok(MassFunction { frame, masses })
    }

    fn collect<I>(frame: &OrderedFrame, entries: I) -> Result<BTreeMap<OrderedElement, f64>>
    where
        I: IntoIterator<Item = (OrderedElement, f64)>,
    {
        let mut masses = BTreeMap::new();
        for (element, mass) in entries {
            frame.check_element(&element)?;
            if mass < 0.0 {
                return Err(Error::NegativeMass {
                    element: element.to_string(),
                    mass,
                });
            }
            if mass > 0.0 {
                *masses.entry(element).or_insert(0.0) += mass;
            }
        }
        Ok(masses)
    }

    /// Output of a combination rule; the rules keep totals at 1 by
    /// construction, so only the element and sign checks of `new` apply.
    pub(crate) fn from_combination(
        frame: OrderedFrame,
        masses: BTreeMap<OrderedElement, f64>,
    ) -> Self {
        debug_assert!(
            (masses.values().sum::<f64>() - 1.0).abs() < 1e-6,
            "combination output drifted from total mass 1"
        );
        let masses = masses.into_iter().filter(|&(_, v)| v > 0.0).collect();
        MassFunction { frame, masses }
    }

    /// Categorical mass function `m_X`: all mass on the single non-empty
    /// element `x`.
    pub fn categorical(frame: OrderedFrame, x: OrderedElement) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::EmptyElement);
        }
        Self::new(frame, [(x, 1.0)])
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: OrderedFrame) -> Self {
        let full = frame.full();
        Self::new(frame, [(full, 1.0)]).expect("full element is always valid")
    }

    pub fn frame(&self) -> &OrderedFrame {
        &self.frame
    }

    /// Mass of one element (0 if not focal).
    pub fn mass(&self, e: &OrderedElement) -> f64 {
        self.masses.get(e).copied().unwrap_or(0.0)
    }

    pub fn empty_mass(&self) -> f64 {
        self.mass(&OrderedElement::EMPTY)
    }

    /// Focal elements with their masses, in canonical enumeration order.
    pub fn focal(&self) -> impl Iterator<Item = (&OrderedElement, f64)> {
        self.masses.iter().map(|(e, &v)| (e, v))
    }

    pub fn focal_count(&self) -> usize {
        self.masses.len()
    }

    /// Mass vector over the canonical enumeration of the ordered power set.
    pub fn to_vector(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.frame.ops_size()];
        for (e, mass) in self.focal() {
            v[e.canonical_index()] = mass;
        }
        v
    }

    /// Credibility: total mass of the non-empty subsets of `x`.
    pub fn bel(&self, x: &OrderedElement) -> f64 {
        self.focal()
            .filter(|(y, _)| !y.is_empty() && y.subset(x))
            .map(|(_, v)| v)
            .sum()
    }

    /// Plausibility: total mass of the elements meeting `x`. Computed by an
    /// intersection scan; on an ordered power set it is not the dual of the
    /// credibility because the complement of an interval is generally not an
    /// interval.
    pub fn pl(&self, x: &OrderedElement) -> f64 {
        self.focal()
            .filter(|(y, _)| !y.intersect(x).is_empty())
            .map(|(_, v)| v)
            .sum()
    }

    /// Pignistic probability of the state `w_i`: each focal mass is split
    /// uniformly over its members and the result is normalized by
    /// `1 - m(empty)`.
    pub fn betp(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.frame.len() {
            return Err(Error::OrdinalOutOfRange {
                ordinal: i,
                n: self.frame.len(),
            });
        }
        let conflict = self.empty_mass();
        if conflict >= 1.0 - NORMALIZATION_TOLERANCE {
            return Err(Error::TotalConflict);
        }
        let raw: f64 = self
            .focal()
            .filter(|(x, _)| x.contains(i))
            .map(|(x, v)| v / x.cardinality() as f64)
            .sum();
        Ok(raw / (1.0 - conflict))
    }

    /// Pignistic probabilities of all states.
    pub fn betp_all(&self) -> Result<Vec<f64>> {
        (1..=self.frame.len()).map(|i| self.betp(i)).collect()
    }

    /// Largest absolute mass difference over the ordered power set.
    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        let mut worst = 0.0f64;
        for e in self.frame.elements() {
            worst = worst.max((self.mass(&e) - other.mass(&e)).abs());
        }
        worst
    }
}
