//! Belief functions on ordered frames of discernment.
//!
//! When the states of a frame carry a natural order (graded questionnaire
//! answers, Likert scales, binned quantities), only disjunctions of
//! consecutive states are meaningful. This crate works on that restricted
//! power set — the empty set plus all intervals of consecutive states — and
//! provides:
//!
//! - the interval element algebra and its canonical enumeration ([`frame`]);
//! - mass functions with the bel / pl / BetP transforms ([`mass`]);
//! - combination rules that keep results inside the ordered power set,
//!   including an order-aware disjunctive rule, a Dubois-Prade variant and a
//!   per-pair mixed rule ([`combine`]);
//! - dissimilarity matrices and the quadratic-form distance between mass
//!   functions, with an order-aware and a fuzzy variant of the Jaccard
//!   weighting ([`metric`], [`fuzzy`]);
//! - pointwise and distance-based decision operators plus a distance-scaled
//!   conflict measure ([`decision`]).
//!
//! Everything is immutable after construction and all operations are pure
//! functions, so values can be shared and used from multiple threads freely.

pub mod combine;
pub mod decision;
pub mod error;
pub mod frame;
pub mod fuzzy;
pub mod mass;
pub mod metric;

pub use combine::{
    average, conjunctive, dempster, mixed, mixed_with, ordered_disjunctive,
    ordered_dubois_prade, ordered_dubois_prade_pairwise, yager, DeltaPolicy, RuleId,
};
pub use decision::{
    conflict, conflict_multi, decide, decide_distance, decide_distance_scored,
    decide_pointwise, inclusion_degree, pointwise_scores, DecisionCriterion,
    PointwiseCriterion,
};
pub use error::{Error, Result};
pub use frame::{ops_size, OrderedElement, OrderedFrame};
pub use fuzzy::{fuzzy_intersection_cardinality, membership, FuzzyParams};
pub use mass::{MassFunction, NORMALIZATION_TOLERANCE};
pub use metric::{
    belief_distance, d_elem, d_set, d_singleton, DissimilarityMatrix, ElementDistanceMode,
    MatrixKind,
};
