//! Brute-force reference over the full power set 2^Omega.
//!
//! Elements are bitmasks (bit `i - 1` is state `w_i`); nothing here knows
//! about intervals or the canonical enumeration, so agreement with the
//! interval implementation is meaningful.

use std::collections::BTreeMap;

use ordbel::MassFunction;

#[derive(Debug, Clone)]
pub struct BitsetMass {
    pub n: usize,
    pub masses: BTreeMap<u32, f64>,
}

/// Bitmask of an interval element.
pub fn mask_of(e: &ordbel::OrderedElement) -> u32 {
    match e.bounds() {
        None => 0,
        Some((lo, hi)) => ((1u32 << hi) - 1) & !((1u32 << (lo - 1)) - 1),
    }
}

impl BitsetMass {
    pub fn from_mass(m: &MassFunction) -> Self {
        let mut masses = BTreeMap::new();
        for (e, v) in m.focal() {
            *masses.entry(mask_of(e)).or_insert(0.0) += v;
        }
        BitsetMass {
            n: m.frame().len(),
            masses,
        }
    }

    pub fn mass(&self, mask: u32) -> f64 {
        self.masses.get(&mask).copied().unwrap_or(0.0)
    }

    pub fn bel(&self, x: u32) -> f64 {
        self.masses
            .iter()
            .filter(|&(&y, _)| y != 0 && y & !x == 0)
            .map(|(_, &v)| v)
            .sum()
    }

    pub fn pl(&self, x: u32) -> f64 {
        self.masses
            .iter()
            .filter(|&(&y, _)| y & x != 0)
            .map(|(_, &v)| v)
            .sum()
    }

    pub fn betp(&self, i: usize) -> f64 {
        let conflict = self.mass(0);
        let bit = 1u32 << (i - 1);
        let raw: f64 = self
            .masses
            .iter()
            .filter(|&(&y, _)| y & bit != 0)
            .map(|(&y, &v)| v / y.count_ones() as f64)
            .sum();
        raw / (1.0 - conflict)
    }

    pub fn conjunctive(&self, other: &BitsetMass) -> BitsetMass {
        let mut out = BTreeMap::new();
        for (&y1, &v1) in &self.masses {
            for (&y2, &v2) in &other.masses {
                *out.entry(y1 & y2).or_insert(0.0) += v1 * v2;
            }
        }
        BitsetMass {
            n: self.n,
            masses: out,
        }
    }

    pub fn dempster(&self, other: &BitsetMass) -> Option<BitsetMass> {
        let pooled = self.conjunctive(other);
        let conflict = pooled.mass(0);
        if conflict >= 1.0 - 1e-12 {
            return None;
        }
        let masses = pooled
            .masses
            .iter()
            .filter(|&(&y, _)| y != 0)
            .map(|(&y, &v)| (y, v / (1.0 - conflict)))
            .collect();
        Some(BitsetMass {
            n: self.n,
            masses,
        })
    }

    pub fn yager(&self, other: &BitsetMass) -> BitsetMass {
        let pooled = self.conjunctive(other);
        let conflict = pooled.mass(0);
        let full = (1u32 << self.n) - 1;
        let mut masses: BTreeMap<u32, f64> = pooled
            .masses
            .iter()
            .filter(|&(&y, _)| y != 0)
            .map(|(&y, &v)| (y, v))
            .collect();
        if conflict > 0.0 {
            *masses.entry(full).or_insert(0.0) += conflict;
        }
        BitsetMass {
            n: self.n,
            masses,
        }
    }

    /// Largest absolute mass difference against an interval mass function.
    pub fn max_abs_diff(&self, m: &MassFunction) -> f64 {
        let other = BitsetMass::from_mass(m);
        let mut worst = 0.0f64;
        for mask in 0..(1u32 << self.n) {
            worst = worst.max((self.mass(mask) - other.mass(mask)).abs());
        }
        worst
    }
}
