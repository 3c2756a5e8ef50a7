//! On-disk formats: mass-function documents and Likert response documents.
//!
//! A mass document is UTF-8 JSON. The `frame` list fixes the ordinal order
//! (labels are display-only), and each entry names a focal element in the
//! canonical grammar (`empty`, `w2`, `w1..w3`):
//!
//! ```json
//! {
//!   "frame": ["w1", "w2", "w3"],
//!   "masses": [
//!     { "focal": "w2", "mass": 0.4 },
//!     { "focal": "w1..w2", "mass": 0.6 }
//!   ]
//! }
//! ```

use serde::{Deserialize, Serialize};

use ordbel::{MassFunction, OrderedElement, OrderedFrame};

use crate::error::CliError;
use crate::render::round_sig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MassDocument {
    pub frame: Vec<String>,
    pub masses: Vec<MassEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MassEntry {
    pub focal: String,
    pub mass: f64,
}

impl MassDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    /// Validates the document into a mass function. Duplicate focal keys are
    /// summed; `renormalize` opts into rescaling an off-by-more-than-1e-9
    /// total instead of failing.
    pub fn to_mass(&self, origin: &str, renormalize: bool) -> Result<MassFunction, CliError> {
        let frame = OrderedFrame::new(self.frame.iter().cloned()).map_err(CliError::Core)?;
        let mut entries = Vec::with_capacity(self.masses.len());
        for entry in &self.masses {
            let element: OrderedElement =
                entry.focal.parse().map_err(|_| CliError::UnknownElement {
                    path: origin.to_string(),
                    element: entry.focal.clone(),
                })?;
            if !frame.contains_element(&element) {
                return Err(CliError::UnknownElement {
                    path: origin.to_string(),
                    element: entry.focal.clone(),
                });
            }
            entries.push((element, entry.mass));
        }
        let mass = if renormalize {
            MassFunction::renormalized(frame, entries)
        } else {
            MassFunction::new(frame, entries)
        };
        mass.map_err(CliError::Core)
    }

    /// Canonical emission: focal elements in enumeration order, masses
    /// rounded to 12 significant digits.
    pub fn from_mass(mass: &MassFunction) -> Self {
        MassDocument {
            frame: mass.frame().labels().to_vec(),
            masses: mass
                .focal()
                .map(|(e, v)| MassEntry {
                    focal: e.to_string(),
                    mass: round_sig(v),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

/// Counted Likert responses to one question, one entry per respondent group.
///
/// ```json
/// {
///   "frame": ["strongly disagree", "disagree", "neutral", "agree", "strongly agree"],
///   "groups": [
///     { "name": "students", "counts": [3, 5, 2, 0, 1] }
///   ]
/// }
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LikertDocument {
    pub frame: Vec<String>,
    pub groups: Vec<LikertGroup>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LikertGroup {
    #[serde(default)]
    pub name: Option<String>,
    pub counts: Vec<u32>,
}

impl LikertDocument {
    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn frame(&self) -> Result<OrderedFrame, CliError> {
        OrderedFrame::new(self.frame.iter().cloned()).map_err(CliError::Core)
    }

    /// One mass function per respondent of the group: categorical on the
    /// answered state, with mass `discount` moved to the whole frame.
    pub fn group_masses(
        &self,
        group: &LikertGroup,
        discount: f64,
        origin: &str,
    ) -> Result<Vec<MassFunction>, CliError> {
        let frame = self.frame()?;
        if group.counts.len() != frame.len() {
            return Err(CliError::Parse {
                path: origin.to_string(),
                message: format!(
                    "group has {} counts but the frame has {} states",
                    group.counts.len(),
                    frame.len()
                ),
            });
        }
        let mut masses = Vec::new();
        for (idx, &count) in group.counts.iter().enumerate() {
            let answer = frame.singleton(idx + 1).map_err(CliError::Core)?;
            for _ in 0..count {
                let m = if discount > 0.0 {
                    MassFunction::new(
                        frame.clone(),
                        [(answer, 1.0 - discount), (frame.full(), discount)],
                    )
                } else {
                    MassFunction::categorical(frame.clone(), answer)
                };
                masses.push(m.map_err(CliError::Core)?);
            }
        }
        Ok(masses)
    }
}
