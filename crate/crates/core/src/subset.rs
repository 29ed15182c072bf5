//! Subsets of a small ground set `{1, …, n}`, stored as bit masks.
//!
//! These are the universal currency of the crate: points and blocks of the
//! built structures are subsets, and so are the translation parameters of
//! the symmetry maps.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest ground-set size supported for full enumeration.
pub const MAX_GROUND: u8 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubsetError {
    #[error("ground set size {0} exceeds maximum {MAX_GROUND}")]
    GroundTooLarge(u8),
    #[error("element {element} outside ground set {{1, …, {ground}}}")]
    ElementOutOfRange { element: u8, ground: u8 },
    #[error("cannot parse {0:?} as a subset (expected e.g. \"{{}}\" or \"{{1,3}}\")")]
    Parse(String),
}

/// A subset of `{1, …, n}` as a bit set (element `e` ↔ bit `e-1`).
///
/// Binary operations require both operands to share the same ground size and
/// panic otherwise; this is a programming error akin to an index mismatch.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteSubset {
    n: u8,
    bits: u16,
}

impl FiniteSubset {
    pub fn empty(n: u8) -> Self {
        assert!(n <= MAX_GROUND, "ground set too large");
        FiniteSubset { n, bits: 0 }
    }

    pub fn full(n: u8) -> Self {
        assert!(n <= MAX_GROUND, "ground set too large");
        FiniteSubset {
            n,
            bits: if n == 16 { u16::MAX } else { (1u16 << n) - 1 },
        }
    }

    pub fn singleton(n: u8, element: u8) -> Self {
        Self::empty(n).with(element)
    }

    pub fn from_elems(n: u8, elems: &[u8]) -> Self {
        let mut s = Self::empty(n);
        for &e in elems {
            s = s.with(e);
        }
        s
    }

    /// Rebuild from a raw mask; bits outside the ground set are rejected.
    pub fn from_bits(n: u8, bits: u16) -> Result<Self, SubsetError> {
        if n > MAX_GROUND {
            return Err(SubsetError::GroundTooLarge(n));
        }
        let full = Self::full(n).bits;
        if bits & !full != 0 {
            return Err(SubsetError::ElementOutOfRange {
                element: (bits & !full).trailing_zeros() as u8 + 1,
                ground: n,
            });
        }
        Ok(FiniteSubset { n, bits })
    }

    pub fn bits(&self) -> u16 {
        self.bits
    }

    pub fn ground_size(&self) -> u8 {
        self.n
    }

    pub fn card(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_even(&self) -> bool {
        self.card().is_multiple_of(2)
    }

    pub fn contains(&self, element: u8) -> bool {
        element >= 1 && element <= self.n && self.bits & (1 << (element - 1)) != 0
    }

    pub fn with(&self, element: u8) -> Self {
        assert!(
            element >= 1 && element <= self.n,
            "element {element} outside ground set of size {}",
            self.n
        );
        FiniteSubset {
            n: self.n,
            bits: self.bits | (1 << (element - 1)),
        }
    }

    pub fn without(&self, element: u8) -> Self {
        assert!(
            element >= 1 && element <= self.n,
            "element {element} outside ground set of size {}",
            self.n
        );
        FiniteSubset {
            n: self.n,
            bits: self.bits & !(1 << (element - 1)),
        }
    }

    fn check_ground(&self, other: &Self) {
        assert_eq!(self.n, other.n, "subsets over different ground sets");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check_ground(other);
        FiniteSubset {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.check_ground(other);
        FiniteSubset {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.check_ground(other);
        FiniteSubset {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    /// Symmetric difference `(A \ B) ∪ (B \ A)`.
    pub fn sym_diff(&self, other: &Self) -> Self {
        self.check_ground(other);
        FiniteSubset {
            n: self.n,
            bits: self.bits ^ other.bits,
        }
    }

    pub fn complement(&self) -> Self {
        FiniteSubset {
            n: self.n,
            bits: Self::full(self.n).bits & !self.bits,
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check_ground(other);
        self.bits & !other.bits == 0
    }

    /// Direct successor: `self ≺ other` iff `self ⊂ other` and `|other| = |self| + 1`.
    pub fn covered_by(&self, other: &Self) -> bool {
        self.is_subset_of(other) && other.card() == self.card() + 1
    }

    pub fn covers(&self, other: &Self) -> bool {
        other.covered_by(self)
    }

    /// `self ≺ other` or `other ≺ self`: Hamming distance one.
    pub fn adjacent(&self, other: &Self) -> bool {
        self.check_ground(other);
        (self.bits ^ other.bits).count_ones() == 1
    }

    pub fn elems(&self) -> impl Iterator<Item = u8> + '_ {
        let n = self.n;
        (1..=n).filter(move |&e| self.contains(e))
    }

    /// All subsets of `{1, …, n}` in canonical (cardinality, bit value) order.
    pub fn all(n: u8) -> Vec<FiniteSubset> {
        assert!(n <= MAX_GROUND);
        let mut v: Vec<FiniteSubset> = (0..(1u32 << n))
            .map(|bits| FiniteSubset { n, bits: bits as u16 })
            .collect();
        v.sort();
        v
    }

    pub fn all_of_card(n: u8, k: u32) -> Vec<FiniteSubset> {
        Self::all(n).into_iter().filter(|s| s.card() == k).collect()
    }

    /// Parse `{}` or `{1,3,4}` against a given ground size.
    pub fn parse(n: u8, text: &str) -> Result<Self, SubsetError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| SubsetError::Parse(text.to_string()))?
            .trim();
        let mut s = Self::empty(n);
        if inner.is_empty() {
            return Ok(s);
        }
        for part in inner.split(',') {
            let e: u8 = part
                .trim()
                .parse()
                .map_err(|_| SubsetError::Parse(text.to_string()))?;
            if e < 1 || e > n {
                return Err(SubsetError::ElementOutOfRange { element: e, ground: n });
            }
            s = s.with(e);
        }
        Ok(s)
    }
}

impl Ord for FiniteSubset {
    /// Canonical order: by cardinality first, then numeric bit value.
    fn cmp(&self, other: &Self) -> Ordering {
        self.card()
            .cmp(&other.card())
            .then(self.bits.cmp(&other.bits))
            .then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for FiniteSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for e in self.elems() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn construction_and_membership() {
        let s = FiniteSubset::from_elems(5, &[1, 3]);
        assert!(s.contains(1));
        assert!(!s.contains(2));
        assert!(s.contains(3));
        assert_eq!(s.card(), 2);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(FiniteSubset::empty(4).to_string(), "{}");
    }

    #[test]
    fn successor_relation() {
        let a = FiniteSubset::from_elems(4, &[1]);
        let b = FiniteSubset::from_elems(4, &[1, 3]);
        assert!(a.covered_by(&b));
        assert!(b.covers(&a));
        assert!(a.adjacent(&b));
        assert!(!b.covered_by(&a));
        let c = FiniteSubset::from_elems(4, &[2]);
        assert!(!a.covered_by(&c));
    }

    #[test]
    fn canonical_order() {
        let all = FiniteSubset::all(3);
        let shown: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            shown,
            vec!["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
        );
    }

    #[test]
    fn parse_round_trip() {
        for s in FiniteSubset::all(6) {
            assert_eq!(FiniteSubset::parse(6, &s.to_string()).unwrap(), s);
        }
        assert!(FiniteSubset::parse(4, "{5}").is_err());
        assert!(FiniteSubset::parse(4, "1,2").is_err());
    }

    fn as_btree(s: &FiniteSubset) -> BTreeSet<u8> {
        s.elems().collect()
    }

    #[test]
    fn set_semantics_match_btreeset() {
        // exhaustive over a small ground set: bit ops agree with set ops
        for a in FiniteSubset::all(5) {
            for b in FiniteSubset::all(5) {
                let (sa, sb) = (as_btree(&a), as_btree(&b));
                assert_eq!(as_btree(&a.union(&b)), &sa | &sb);
                assert_eq!(as_btree(&a.intersect(&b)), &sa & &sb);
                assert_eq!(as_btree(&a.sym_diff(&b)), &sa ^ &sb);
                assert_eq!(a.is_subset_of(&b), sa.is_subset(&sb));
                assert_eq!(a.card() as usize, sa.len());
                assert_eq!(
                    a.covered_by(&b),
                    sa.is_subset(&sb) && sb.len() == sa.len() + 1
                );
            }
        }
    }
}
