//! Distances between ordered elements, dissimilarity matrices over the
//! ordered power set, and the quadratic-form distance between mass
//! functions.
//!
//! The plain Jaccard matrix ignores the order: disjoint elements always get
//! dissimilarity 0, so e.g. the categorical masses on `w1` and `w2` end up as
//! far apart as those on `w1` and `wn`. The ordered variant adds a term in
//! `[0, 1/n]` on disjoint pairs that grows as the elements get closer in the
//! order; the fuzzy variant softens the intersection cardinality instead.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::frame::{OrderedElement, OrderedFrame};
use crate::fuzzy::{fuzzy_intersection_cardinality, FuzzyParams};
use crate::mass::MassFunction;

/// How the distance between a state and an element (and between two
/// elements) is aggregated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElementDistanceMode {
    Min,
    Max,
    #[default]
    Average,
}

fn check_ordinal(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::OrdinalOutOfRange { ordinal: i, n });
    }
    Ok(())
}

/// Distance between two states of an `n`-state frame: `|i - j| / (n - 1)`,
/// normalized so the first and last state are at distance 1. A one-state
/// frame carries no order information, so the distance is 0 there.
pub fn d_singleton(n: usize, i: usize, j: usize) -> Result<f64> {
    check_ordinal(n, i)?;
    check_ordinal(n, j)?;
    Ok(d_singleton_unchecked(n, i, j))
}

fn d_singleton_unchecked(n: usize, i: usize, j: usize) -> f64 {
    if n <= 1 {
        return 0.0;
    }
    i.abs_diff(j) as f64 / (n - 1) as f64
}

/// Distance between a state and a non-empty element. `Min` and `Max` look at
/// the element's endpoints; `Average` averages over all its states.
pub fn d_elem(n: usize, i: usize, x: &OrderedElement, mode: ElementDistanceMode) -> Result<f64> {
    check_ordinal(n, i)?;
    let (lo, hi) = x.bounds().ok_or(Error::EmptyElement)?;
    if hi > n {
        return Err(Error::ElementOutOfFrame {
            element: x.to_string(),
            n,
        });
    }
    Ok(match mode {
        ElementDistanceMode::Min => {
            d_singleton_unchecked(n, i, lo).min(d_singleton_unchecked(n, i, hi))
        }
        ElementDistanceMode::Max => {
            d_singleton_unchecked(n, i, lo).max(d_singleton_unchecked(n, i, hi))
        }
        ElementDistanceMode::Average => {
            let sum: f64 = x.members().map(|k| d_singleton_unchecked(n, i, k)).sum();
            sum / x.cardinality() as f64
        }
    })
}

/// Distance between two non-empty elements.
///
/// `Average` sums the state distances over all member pairs and divides by
/// `|x| * |y|`. `Min` and `Max` extend [`d_elem`] over the members of the
/// second element; the one-sided `Min` extension is not symmetric when one
/// element strictly contains the other, so both orientations are evaluated
/// and the smaller kept. `Max` is already orientation-independent.
pub fn d_set(
    n: usize,
    x: &OrderedElement,
    y: &OrderedElement,
    mode: ElementDistanceMode,
) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyElement);
    }
    let directed = |a: &OrderedElement, b: &OrderedElement| -> Result<f64> {
        let mut best = match mode {
            ElementDistanceMode::Min => f64::INFINITY,
            _ => f64::NEG_INFINITY,
        };
        for i in b.members() {
            let d = d_elem(n, i, a, mode)?;
            best = match mode {
                ElementDistanceMode::Min => best.min(d),
                _ => best.max(d),
            };
        }
        Ok(best)
    };
    Ok(match mode {
        ElementDistanceMode::Min => directed(x, y)?.min(directed(y, x)?),
        ElementDistanceMode::Max => directed(x, y)?,
        ElementDistanceMode::Average => {
            // Fixed summation order keeps the result bit-identical under
            // argument swap.
            let (a, b) = if x.canonical_index() <= y.canonical_index() {
                (x, y)
            } else {
                (y, x)
            };
            let mut sum = 0.0;
            for i in a.members() {
                for j in b.members() {
                    check_ordinal(n, i)?;
                    check_ordinal(n, j)?;
                    sum += d_singleton_unchecked(n, i, j);
                }
            }
            sum / (x.cardinality() * y.cardinality()) as f64
        }
    })
}

/// Which dissimilarity fills the matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixKind {
    /// Jaccard: `|A n B| / |A uo B|`.
    Plain,
    /// Jaccard plus an order-aware term `(1 - d(A,B)) / n` on disjoint pairs.
    Ordered(ElementDistanceMode),
    /// Jaccard with the fuzzy intersection cardinality in the numerator.
    Fuzzy(FuzzyParams),
}

/// A symmetric `(1 + n(n+1)/2)` square matrix of pairwise dissimilarities
/// over the canonical enumeration of the ordered power set, used as the
/// weighting of the quadratic-form distance between mass functions.
///
/// Conventions on the empty set: the `(empty, empty)` entry is 1 and entries
/// pairing the empty set with a non-empty element are 0, for every kind.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    dim: usize,
    kind: MatrixKind,
    entries: Vec<f64>,
}

impl DissimilarityMatrix {
    pub fn new(frame: &OrderedFrame, kind: MatrixKind) -> Result<Self> {
        let n = frame.len();
        let dim = frame.ops_size();
        let elements: Vec<OrderedElement> = frame.elements().collect();
        let mut entries = vec![0.0; dim * dim];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i) {
                let v = Self::entry_value(n, &kind, a, b)?;
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        Ok(DissimilarityMatrix {
            n,
            dim,
            kind,
            entries,
        })
    }

    fn entry_value(
        n: usize,
        kind: &MatrixKind,
        a: &OrderedElement,
        b: &OrderedElement,
    ) -> Result<f64> {
        match (a.is_empty(), b.is_empty()) {
            (true, true) => return Ok(1.0),
            (true, false) | (false, true) => return Ok(0.0),
            _ => {}
        }
        let union = a.ordered_union(b).cardinality() as f64;
        let inter = a.intersect(b);
        Ok(match kind {
            MatrixKind::Plain => inter.cardinality() as f64 / union,
            MatrixKind::Ordered(mode) => {
                let jaccard = inter.cardinality() as f64 / union;
                if inter.is_empty() {
                    jaccard + (1.0 - d_set(n, a, b, *mode)?) / n as f64
                } else {
                    jaccard
                }
            }
            MatrixKind::Fuzzy(params) => fuzzy_intersection_cardinality(n, a, b, params)? / union,
        })
    }

    /// Shared, lazily built matrix for `(frame size, kind)`. Entries depend
    /// only on the frame size, so frames with equal `n` reuse one matrix.
    pub fn cached(frame: &OrderedFrame, kind: MatrixKind) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<DissimilarityMatrix>>>> =
            OnceLock::new();
        let key = CacheKey::new(frame.len(), &kind);
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(found) = cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(found));
        }
        let built = Arc::new(Self::new(frame, kind)?);
        cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&built));
        Ok(built)
    }

    /// Frame size the matrix was built for.
    pub fn frame_size(&self) -> usize {
        self.n
    }

    /// Matrix dimension, `1 + n(n+1)/2`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &MatrixKind {
        &self.kind
    }

    /// Entry by canonical enumeration indices.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim, "matrix index out of range");
        self.entries[i * self.dim + j]
    }

    /// Entry by element pair.
    pub fn entry(&self, a: &OrderedElement, b: &OrderedElement) -> Result<f64> {
        let (i, j) = (a.canonical_index(), b.canonical_index());
        if i >= self.dim || j >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                size: self.dim,
            });
        }
        Ok(self.entries[i * self.dim + j])
    }

    pub fn row(&self, i: usize) -> &[f64] {
        assert!(i < self.dim, "matrix row out of range");
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }
}

/// Quadratic-form distance between two mass functions:
/// `sqrt(0.5 * (v1 - v2)^T M (v1 - v2))` over the canonical mass vectors.
///
/// Results within 1e-9 outside [0, 1] are clamped; a quadratic form below
/// -1e-9 signals a matrix that is not positive semi-definite and is
/// reported as an error.
pub fn belief_distance(
    m1: &MassFunction,
    m2: &MassFunction,
    matrix: &DissimilarityMatrix,
) -> Result<f64> {
    if m1.frame() != m2.frame() {
        return Err(Error::FrameMismatch);
    }
    if matrix.frame_size() != m1.frame().len() {
        return Err(Error::MatrixMismatch {
            matrix_n: matrix.frame_size(),
            frame_n: m1.frame().len(),
        });
    }
    let v1 = m1.to_vector();
    let v2 = m2.to_vector();
    let diff: Vec<f64> = v1.iter().zip(&v2).map(|(a, b)| a - b).collect();
    let mut quad = 0.0;
    for (i, &di) in diff.iter().enumerate() {
        if di == 0.0 {
            continue;
        }
        let row = matrix.row(i);
        for (j, &dj) in diff.iter().enumerate() {
            if dj != 0.0 {
                quad += di * dj * row[j];
            }
        }
    }
    quad *= 0.5;
    if quad < -1e-9 {
        return Err(Error::NegativeQuadraticForm(quad));
    }
    let d = quad.max(0.0).sqrt();
    if d > 1.0 && d <= 1.0 + 1e-9 {
        return Ok(1.0);
    }
    Ok(d)
}

#[derive(PartialEq, Eq, Hash)]
struct CacheKey {
    n: usize,
    tag: u8,
    mode: u8,
    alpha_bits: u64,
    gamma_bits: u64,
    extended: bool,
}

impl CacheKey {
    fn new(n: usize, kind: &MatrixKind) -> Self {
        let mode_tag = |m: ElementDistanceMode| match m {
            ElementDistanceMode::Min => 0u8,
            ElementDistanceMode::Max => 1,
            ElementDistanceMode::Average => 2,
        };
        match kind {
            MatrixKind::Plain => CacheKey {
                n,
                tag: 0,
                mode: 0,
                alpha_bits: 0,
                gamma_bits: 0,
                extended: false,
            },
            MatrixKind::Ordered(mode) => CacheKey {
                n,
                tag: 1,
                mode: mode_tag(*mode),
                alpha_bits: 0,
                gamma_bits: 0,
                extended: false,
            },
            MatrixKind::Fuzzy(p) => CacheKey {
                n,
                tag: 2,
                mode: mode_tag(p.mode()),
                alpha_bits: p.alpha().to_bits(),
                gamma_bits: p.gamma().to_bits(),
                extended: p.has_extended_gamma(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> OrderedElement {
        s.parse().unwrap()
    }

    fn frame(n: usize) -> OrderedFrame {
        OrderedFrame::with_default_labels(n).unwrap()
    }

    #[test]
    fn state_distance() {
        assert_eq!(d_singleton(3, 1, 2).unwrap(), 0.5);
        assert_eq!(d_singleton(3, 1, 3).unwrap(), 1.0);
        assert_eq!(d_singleton(3, 2, 2).unwrap(), 0.0);
        assert_eq!(d_singleton(1, 1, 1).unwrap(), 0.0);
        assert!(d_singleton(3, 0, 1).is_err());
        assert!(d_singleton(3, 1, 4).is_err());
    }

    #[test]
    fn state_to_element_distance() {
        use ElementDistanceMode::*;
        assert_eq!(d_elem(3, 1, &el("w2..w3"), Average).unwrap(), 0.75);
        assert_eq!(d_elem(3, 1, &el("w1..w2"), Min).unwrap(), 0.0);
        assert_eq!(d_elem(3, 1, &el("w2..w3"), Max).unwrap(), 1.0);
        assert!(d_elem(3, 1, &OrderedElement::EMPTY, Average).is_err());
    }

    #[test]
    fn element_distance() {
        use ElementDistanceMode::*;
        assert_eq!(d_set(3, &el("w1"), &el("w2..w3"), Average).unwrap(), 0.75);
        assert_eq!(d_set(3, &el("w1..w2"), &el("w1..w2"), Min).unwrap(), 0.0);
        assert_eq!(d_set(3, &el("w1"), &el("w3"), Max).unwrap(), 1.0);
        assert!(d_set(3, &el("w1"), &OrderedElement::EMPTY, Average).is_err());
    }

    #[test]
    fn element_distance_symmetry_under_containment() {
        use ElementDistanceMode::*;
        // The one-sided Min extension would give 0.5 in one orientation here.
        let a = el("w2");
        let b = el("w1..w3");
        for mode in [Min, Max, Average] {
            let xy = d_set(3, &a, &b, mode).unwrap();
            let yx = d_set(3, &b, &a, mode).unwrap();
            assert_eq!(xy, yx, "{mode:?}");
        }
        assert_eq!(d_set(3, &a, &b, Min).unwrap(), 0.0);
    }

    #[test]
    fn jaccard_entries() {
        let m = DissimilarityMatrix::new(&frame(3), MatrixKind::Plain).unwrap();
        assert_eq!(m.entry(&el("w1"), &el("w1")).unwrap(), 1.0);
        assert_eq!(m.entry(&el("w1"), &el("w1..w2")).unwrap(), 0.5);
        assert_eq!(m.entry(&el("w1"), &el("w2")).unwrap(), 0.0);
        assert_eq!(m.entry(&OrderedElement::EMPTY, &OrderedElement::EMPTY).unwrap(), 1.0);
        assert_eq!(m.entry(&OrderedElement::EMPTY, &el("w2")).unwrap(), 0.0);
    }

    #[test]
    fn ordered_entries() {
        let m = DissimilarityMatrix::new(
            &frame(3),
            MatrixKind::Ordered(ElementDistanceMode::Average),
        )
        .unwrap();
        assert!((m.entry(&el("w1"), &el("w2")).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(m.entry(&el("w1"), &el("w3")).unwrap(), 0.0);
        assert!((m.entry(&el("w3"), &el("w1..w2")).unwrap() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn fuzzy_entries() {
        let params = FuzzyParams::new(0.5, 1.0, ElementDistanceMode::Average).unwrap();
        let m = DissimilarityMatrix::new(&frame(3), MatrixKind::Fuzzy(params)).unwrap();
        let expected = (-0.5f64).exp() / 2.0;
        assert!((m.entry(&el("w1"), &el("w2")).unwrap() - expected).abs() < 1e-15);
        // Unit diagonal survives fuzzification.
        for e in frame(3).elements() {
            assert_eq!(m.entry(&e, &e).unwrap(), 1.0);
        }
    }

    #[test]
    fn fuzzy_matrix_degenerates_to_jaccard() {
        let params = FuzzyParams::new(0.0, 1.0, ElementDistanceMode::Average).unwrap();
        let fuzzy = DissimilarityMatrix::new(&frame(4), MatrixKind::Fuzzy(params)).unwrap();
        let plain = DissimilarityMatrix::new(&frame(4), MatrixKind::Plain).unwrap();
        for i in 0..plain.dim() {
            for j in 0..plain.dim() {
                assert_eq!(fuzzy.get(i, j), plain.get(i, j));
            }
        }
    }

    #[test]
    fn paper_style_distances() {
        let f = frame(3);
        let ordered =
            DissimilarityMatrix::new(&f, MatrixKind::Ordered(ElementDistanceMode::Average))
                .unwrap();
        let m1 = MassFunction::categorical(f.clone(), el("w1")).unwrap();
        let m2 = MassFunction::categorical(f.clone(), el("w2")).unwrap();
        let m3 = MassFunction::categorical(f.clone(), el("w3")).unwrap();

        let d12 = belief_distance(&m1, &m2, &ordered).unwrap();
        assert!((d12 - (5.0f64 / 6.0).sqrt()).abs() < 1e-12);
        let d13 = belief_distance(&m1, &m3, &ordered).unwrap();
        assert!((d13 - 1.0).abs() < 1e-12);
        assert_eq!(belief_distance(&m1, &m1, &ordered).unwrap(), 0.0);

        // The plain Jaccard weighting cannot tell the two pairs apart.
        let plain = DissimilarityMatrix::new(&f, MatrixKind::Plain).unwrap();
        assert!((belief_distance(&m1, &m2, &plain).unwrap() - 1.0).abs() < 1e-12);
        assert!((belief_distance(&m1, &m3, &plain).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distance_rejects_mismatches() {
        let f3 = frame(3);
        let f4 = frame(4);
        let matrix3 = DissimilarityMatrix::new(&f3, MatrixKind::Plain).unwrap();
        let a = MassFunction::vacuous(f3.clone());
        let b = MassFunction::vacuous(f4.clone());
        assert_eq!(belief_distance(&a, &b, &matrix3), Err(Error::FrameMismatch));
        let matrix4 = DissimilarityMatrix::new(&f4, MatrixKind::Plain).unwrap();
        assert!(matches!(
            belief_distance(&a, &a, &matrix4),
            Err(Error::MatrixMismatch { .. })
        ));
    }

    #[test]
    fn cache_returns_shared_matrices() {
        let f = frame(5);
        let a = DissimilarityMatrix::cached(&f, MatrixKind::Plain).unwrap();
        let b = DissimilarityMatrix::cached(&f, MatrixKind::Plain).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        let c = DissimilarityMatrix::cached(
            &f,
            MatrixKind::Ordered(ElementDistanceMode::Average),
        )
        .unwrap();
        assert!(!Arc::ptr_eq(&a, &c));
    }

    #[test]
    fn one_state_frame_degenerates() {
        let f = frame(1);
        for kind in [
            MatrixKind::Plain,
            MatrixKind::Ordered(ElementDistanceMode::Average),
        ] {
            let m = DissimilarityMatrix::new(&f, kind).unwrap();
            assert_eq!(m.dim(), 2);
            assert_eq!(m.get(0, 0), 1.0);
            assert_eq!(m.get(1, 1), 1.0);
            assert_eq!(m.get(0, 1), 0.0);
        }
    }
}
