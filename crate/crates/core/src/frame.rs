//! Ordered frames of discernment and the ordered power set.
//!
//! A frame holds `n` ordered, exclusive and exhaustive states `w1..wn`. The
//! ordered power set over it consists of the empty set plus every interval of
//! consecutive states, so its size is `1 + n(n+1)/2` instead of `2^n`. All
//! element algebra works on interval endpoints and is O(1).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of elements of the ordered power set over a frame of `n` states:
/// `1 + n(n+1)/2`.
pub fn ops_size(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyFrame);
    }
    Ok(1 + n * (n + 1) / 2)
}

/// An element of the ordered power set: the empty set or an interval
/// `{w_lo, ..., w_hi}` of consecutive states, encoded by its 1-based
/// endpoints.
///
/// The empty set is stored as `lo = hi = 0`; intervals keep
/// `1 <= lo <= hi`. Whether `hi` fits a particular frame is checked by the
/// frame-aware constructors and by [`OrderedFrame::contains_element`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderedElement {
    lo: usize,
    hi: usize,
}

impl OrderedElement {
    /// The empty set.
    pub const EMPTY: OrderedElement = OrderedElement { lo: 0, hi: 0 };

    /// Interval `{w_lo, ..., w_hi}`; requires `1 <= lo <= hi`.
    pub fn interval(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(OrderedElement { lo, hi })
    }

    /// Singleton `{w_i}`.
    pub fn singleton(i: usize) -> Result<Self> {
        Self::interval(i, i)
    }

    pub fn is_empty(&self) -> bool {
        self.lo == 0
    }

    /// Endpoints `(lo, hi)`, or `None` for the empty set.
    pub fn bounds(&self) -> Option<(usize, usize)> {
        if self.is_empty() {
            None
        } else {
            Some((self.lo, self.hi))
        }
    }

    /// Number of states in the element (0 for the empty set).
    pub fn cardinality(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        !self.is_empty() && self.lo <= i && i <= self.hi
    }

    /// Set inclusion; the empty set is a subset of everything.
    pub fn subset(&self, other: &OrderedElement) -> bool {
        if self.is_empty() {
            return true;
        }
        if other.is_empty() {
            return false;
        }
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Plain set intersection. Intervals are closed under it: the result is
    /// empty or the interval `{max(lo), ..., min(hi)}`.
    pub fn intersect(&self, other: &OrderedElement) -> OrderedElement {
        if self.is_empty() || other.is_empty() {
            return OrderedElement::EMPTY;
        }
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo > hi {
            OrderedElement::EMPTY
        } else {
            OrderedElement { lo, hi }
        }
    }

    /// Ordered union: the smallest interval covering both operands. For two
    /// intervals this is `{min(lo), ..., max(hi)}`; the empty set acts as a
    /// neutral element.
    pub fn ordered_union(&self, other: &OrderedElement) -> OrderedElement {
        if self.is_empty() {
            return *other;
        }
        if other.is_empty() {
            return *self;
        }
        OrderedElement {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Left fold of [`ordered_union`](Self::ordered_union) over a non-empty
    /// list.
    pub fn ordered_union_n<'a, I>(elems: I) -> Result<OrderedElement>
    where
        I: IntoIterator<Item = &'a OrderedElement>,
    {
        let mut iter = elems.into_iter();
        let first = *iter.next().ok_or(Error::EmptyElementList)?;
        Ok(iter.fold(first, |acc, e| acc.ordered_union(e)))
    }

    /// The states of the element, in ascending order.
    pub fn members(&self) -> impl Iterator<Item = usize> {
        if self.is_empty() {
            #[allow(clippy::reversed_empty_ranges)]
            {
                1..=0
            }
        } else {
            self.lo..=self.hi
        }
    }

    /// Position of the element in the canonical enumeration: the empty set
    /// first, then intervals sorted by `hi` ascending and `lo` descending.
    /// Independent of the frame size.
    pub fn canonical_index(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            1 + (self.hi - 1) * self.hi / 2 + (self.hi - self.lo)
        }
    }
}

// Matches the canonical enumeration, so ordered maps over elements iterate
// in enumeration order.
impl Ord for OrderedElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.hi.cmp(&other.hi).then(other.lo.cmp(&self.lo))
    }
}

impl PartialOrd for OrderedElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical text form: `empty`, `w2`, `w1..w3`.
impl fmt::Display for OrderedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.bounds() {
            None => write!(f, "empty"),
            Some((lo, hi)) if lo == hi => write!(f, "w{lo}"),
            Some((lo, hi)) => write!(f, "w{lo}..w{hi}"),
        }
    }
}

impl FromStr for OrderedElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn ordinal(part: &str, whole: &str) -> Result<usize> {
            let digits = part
                .strip_prefix('w')
                .ok_or_else(|| Error::ParseElement(whole.to_string()))?;
            digits
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .ok_or_else(|| Error::ParseElement(whole.to_string()))
        }

        let s = s.trim();
        if s == "empty" {
            return Ok(OrderedElement::EMPTY);
        }
        match s.split_once("..") {
            None => {
                let i = ordinal(s, s)?;
                OrderedElement::singleton(i)
            }
            Some((a, b)) => {
                let lo = ordinal(a, s)?;
                let hi = ordinal(b, s)?;
                OrderedElement::interval(lo, hi).map_err(|_| Error::ParseElement(s.to_string()))
            }
        }
    }
}

/// A frame of `n` ordered, exclusive and exhaustive states. The position of
/// a label in the list is its ordinal; labels themselves are display-only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedFrame {
    labels: Vec<String>,
}

impl OrderedFrame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        for (k, label) in labels.iter().enumerate() {
            if label.is_empty() || labels[..k].contains(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
        }
        Ok(OrderedFrame { labels })
    }

    /// Frame labelled `w1..wn`.
    pub fn with_default_labels(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyFrame);
        }
        Self::new((1..=n).map(|i| format!("w{i}")))
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// A frame always has at least one state.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Display label of state `i` (1-based).
    pub fn label(&self, i: usize) -> Result<&str> {
        self.labels
            .get(i.wrapping_sub(1))
            .map(String::as_str)
            .ok_or(Error::OrdinalOutOfRange {
                ordinal: i,
                n: self.len(),
            })
    }

    /// The whole frame as an element, `{w1, ..., wn}`.
    pub fn full(&self) -> OrderedElement {
        OrderedElement {
            lo: 1,
            hi: self.len(),
        }
    }

    /// Singleton `{w_i}` checked against the frame.
    pub fn singleton(&self, i: usize) -> Result<OrderedElement> {
        if i == 0 || i > self.len() {
            return Err(Error::OrdinalOutOfRange {
                ordinal: i,
                n: self.len(),
            });
        }
        OrderedElement::singleton(i)
    }

    /// Interval `{w_lo, ..., w_hi}` checked against the frame.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<OrderedElement> {
        let e = OrderedElement::interval(lo, hi)?;
        self.check_element(&e)?;
        Ok(e)
    }

    pub fn contains_element(&self, e: &OrderedElement) -> bool {
        e.is_empty() || e.hi <= self.len()
    }

    pub fn check_element(&self, e: &OrderedElement) -> Result<()> {
        if self.contains_element(e) {
            Ok(())
        } else {
            Err(Error::ElementOutOfFrame {
                element: e.to_string(),
                n: self.len(),
            })
        }
    }

    /// Size of the ordered power set, `1 + n(n+1)/2`.
    pub fn ops_size(&self) -> usize {
        ops_size(self.len()).expect("frame is non-empty")
    }

    /// Canonical enumeration of the ordered power set: the empty set first,
    /// then intervals sorted by upper endpoint ascending and lower endpoint
    /// descending, e.g. for n = 3:
    /// `[empty, w1, w2, w1..w2, w3, w2..w3, w1..w3]`.
    pub fn elements(&self) -> impl Iterator<Item = OrderedElement> + '_ {
        std::iter::once(OrderedElement::EMPTY).chain(
            (1..=self.len())
                .flat_map(|hi| (1..=hi).rev().map(move |lo| OrderedElement { lo, hi })),
        )
    }

    /// Element at position `k` of the canonical enumeration.
    pub fn element_at(&self, k: usize) -> Result<OrderedElement> {
        if k >= self.ops_size() {
            return Err(Error::IndexOutOfRange {
                index: k,
                size: self.ops_size(),
            });
        }
        if k == 0 {
            return Ok(OrderedElement::EMPTY);
        }
        for hi in 1..=self.len() {
            let base = 1 + (hi - 1) * hi / 2;
            if k < base + hi {
                return Ok(OrderedElement {
                    lo: hi - (k - base),
                    hi,
                });
            }
        }
        unreachable!("index bounds checked above")
    }

    /// Position of `e` in the canonical enumeration.
    pub fn index_of(&self, e: &OrderedElement) -> Result<usize> {
        self.check_element(e)?;
        Ok(e.canonical_index())
    }
}
