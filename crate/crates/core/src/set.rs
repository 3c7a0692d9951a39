use std::fmt;

use fixedbitset::FixedBitSet;

/// Index of a candidate inside a roster. Stable for the lifetime of the roster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl CandidateId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for CandidateId {
    fn from(i: usize) -> Self {
        CandidateId(i)
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subset of the candidates `0..universe`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet {
    bits: FixedBitSet,
}

impl CandidateSet {
    pub fn empty(universe: usize) -> Self {
        CandidateSet { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        CandidateSet { bits }
    }

    pub fn singleton(universe: usize, c: CandidateId) -> Self {
        let mut s = Self::empty(universe);
        s.insert(c);
        s
    }

    /// Panics if an id is outside the universe.
    pub fn from_ids<I: IntoIterator<Item = CandidateId>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for c in ids {
            s.insert(c);
        }
        s
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        CandidateSet { bits }
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.bits.contains(c.0)
    }

    pub fn insert(&mut self, c: CandidateId) {
        self.bits.insert(c.0);
    }

    pub fn remove(&mut self, c: CandidateId) {
        self.bits.set(c.0, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.bits.ones().map(CandidateId)
    }

    pub fn to_vec(&self) -> Vec<CandidateId> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &CandidateSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &CandidateSet) -> CandidateSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        CandidateSet { bits }
    }

    pub fn intersection(&self, other: &CandidateSet) -> CandidateSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        CandidateSet { bits }
    }

    pub fn difference(&self, other: &CandidateSet) -> CandidateSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        CandidateSet { bits }
    }

    pub fn complement(&self) -> CandidateSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        CandidateSet { bits }
    }

    pub fn first(&self) -> Option<CandidateId> {
        self.bits.minimum().map(CandidateId)
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}
