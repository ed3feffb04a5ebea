//! Canonical vertex encoding shared by every model.
//!
//! Each model enumerates its element universe once (in a fixed order) and a
//! vertex of the flip graph is the set of ids of the elements it contains.
//! Universes are small at the ranks this crate targets, so a set is a single
//! `u128` bitmask. The ordering is lexicographic on the sorted id lists, which
//! is the canonical order used for vertex numbering and witness tie-breaking.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ElementId = u32;

/// Largest universe an [`ElementSet`] can address.
pub const MAX_ELEMENTS: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn from_ids<I: IntoIterator<Item = ElementId>>(ids: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for id in ids {
            s.insert(id);
        }
        s
    }

    /// Like [`ElementSet::from_ids`] but rejects ids outside `0..universe`.
    pub fn try_from_ids<I: IntoIterator<Item = ElementId>>(ids: I, universe: usize) -> Result<Self> {
        let mut s = ElementSet::EMPTY;
        for id in ids {
            if id as usize >= universe.min(MAX_ELEMENTS) {
                return Err(Error::Input(format!(
                    "element id {id} outside universe of size {universe}"
                )));
            }
            s.insert(id);
        }
        Ok(s)
    }

    pub fn singleton(id: ElementId) -> Self {
        ElementSet(1u128 << id)
    }

    pub fn insert(&mut self, id: ElementId) {
        debug_assert!((id as usize) < MAX_ELEMENTS);
        self.0 |= 1u128 << id;
    }

    pub fn remove(&mut self, id: ElementId) {
        self.0 &= !(1u128 << id);
    }

    pub fn with(mut self, id: ElementId) -> Self {
        self.insert(id);
        self
    }

    pub fn without(mut self, id: ElementId) -> Self {
        self.remove(id);
        self
    }

    pub fn contains(self, id: ElementId) -> bool {
        (id as usize) < MAX_ELEMENTS && self.0 >> id & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    /// Smallest id in the set.
    pub fn first(self) -> Option<ElementId> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_ids(self) -> Vec<ElementId> {
        self.iter().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = ElementId;

    fn next(&mut self) -> Option<ElementId> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(id)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElementSet {
    type Item = ElementId;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        ElementSet::from_ids(iter)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both sorted lists agree below the lowest differing id `e`. The list
        // holding `e` is smaller unless the other one stops right there.
        let e = diff.trailing_zeros();
        let above = if e == 127 { 0 } else { !0u128 << (e + 1) };
        let (has, lacks) = if self.0 >> e & 1 == 1 {
            (Ordering::Less, other.0)
        } else {
            (Ordering::Greater, self.0)
        };
        if lacks & above != 0 {
            has
        } else {
            has.reverse()
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ids = Vec::<ElementId>::deserialize(d)?;
        ElementSet::try_from_ids(ids, MAX_ELEMENTS).map_err(serde::de::Error::custom)
    }
}
