//! Tournaments: complete, asymmetric relations on an indexed candidate set.
//!
//! A [`Tournament`] is stored as a dense bit matrix; row `i` holds the
//! out-neighbourhood of candidate `i`. Values are immutable once built and
//! every operation returns a fresh tournament.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::Rng;
use thiserror::Error;

use crate::set::{CandidateId, CandidateSet};

/// Largest candidate count accepted on evaluation paths.
pub const MAX_CANDIDATES: usize = 10_000;

/// Largest candidate count whose arc code fits in a `u64` (11 * 10 / 2 = 55 bits).
/// Exhaustive enumeration is only meaningful far below this.
pub const MAX_CODE_CANDIDATES: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("candidate {0} is out of range for a tournament on {1} candidates")]
    OutOfRange(usize, usize),
    #[error("self-loop at candidate {0}")]
    SelfLoop(usize),
    #[error("arc ({0},{1}) is given more than once")]
    DuplicateArc(usize, usize),
    #[error("both orientations given for the pair ({0},{1})")]
    BothOrientations(usize, usize),
    #[error("no orientation given for the pair ({0},{1})")]
    MissingPair(usize, usize),
    #[error("cannot reverse the arc between a candidate and itself ({0})")]
    SameCandidate(usize),
    #[error("induced subtournament needs at least one candidate")]
    EmptySubset,
    #[error("a regular tournament on {0} candidates needs an odd count")]
    EvenRegular(usize),
    #[error("tournament needs between 1 and {max} candidates, got {got}")]
    BadSize { got: usize, max: usize },
    #[error("permutation is not a bijection on {0} candidates")]
    BadPermutation(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    rows: Vec<FixedBitSet>,
}

impl Tournament {
    fn check_size(m: usize, max: usize) -> Result<(), TournamentError> {
        if m == 0 || m > max {
            return Err(TournamentError::BadSize { got: m, max });
        }
        Ok(())
    }

    /// Builds a tournament from an orientation rule on pairs `i < j`:
    /// `upper(i, j)` is true iff `i` beats `j`.
    pub fn from_fn(m: usize, mut upper: impl FnMut(usize, usize) -> bool) -> Self {
        let mut rows = vec![FixedBitSet::with_capacity(m); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if upper(i, j) {
                    rows[i].insert(j);
                } else {
                    rows[j].insert(i);
                }
            }
        }
        Tournament { rows }
    }

    /// Builds a tournament from an explicit arc list `(winner, loser)`.
    ///
    /// Every unordered pair must appear exactly once, in one orientation.
    pub fn build<I>(m: usize, arcs: I) -> Result<Self, TournamentError>
    where
        I: IntoIterator<Item = (CandidateId, CandidateId)>,
    {
        Self::check_size(m, MAX_CANDIDATES)?;
        let mut rows = vec![FixedBitSet::with_capacity(m); m];
        for (a, b) in arcs {
            let (a, b) = (a.0, b.0);
            if a >= m {
                return Err(TournamentError::OutOfRange(a, m));
            }
            if b >= m {
                return Err(TournamentError::OutOfRange(b, m));
            }
            if a == b {
                return Err(TournamentError::SelfLoop(a));
            }
            if rows[a].contains(b) {
                return Err(TournamentError::DuplicateArc(a, b));
            }
            if rows[b].contains(a) {
                return Err(TournamentError::BothOrientations(a.min(b), a.max(b)));
            }
            rows[a].insert(b);
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if !rows[i].contains(j) && !rows[j].contains(i) {
                    return Err(TournamentError::MissingPair(i, j));
                }
            }
        }
        Ok(Tournament { rows })
    }

    /// Candidate `i` beats `j` iff `i < j`.
    pub fn transitive(m: usize) -> Self {
        Self::from_fn(m, |_, _| true)
    }

    /// `source` beats everyone; the rest is ordered by index.
    pub fn with_source(m: usize, source: CandidateId) -> Self {
        let s = source.0;
        assert!(s < m, "source out of range");
        Self::from_fn(m, |i, j| i == s || j != s)
    }

    /// Candidate `i` beats `i+1, ..., i+(m-1)/2` (mod m). Requires odd `m`.
    pub fn cyclic_regular(m: usize) -> Result<Self, TournamentError> {
        Self::check_size(m, MAX_CANDIDATES)?;
        if m % 2 == 0 {
            return Err(TournamentError::EvenRegular(m));
        }
        let half = (m - 1) / 2;
        Ok(Self::from_fn(m, |i, j| j - i <= half))
    }

    /// Regular for odd `m`; for even `m` the cyclic construction on `m-1`
    /// plus a last candidate that beats the even indices and loses to the odd ones.
    pub fn regular(m: usize) -> Result<Self, TournamentError> {
        if m % 2 == 1 {
            return Self::cyclic_regular(m);
        }
        Self::check_size(m, MAX_CANDIDATES)?;
        let base = Self::cyclic_regular(m - 1)?;
        let last = m - 1;
        Ok(Self::from_fn(m, |i, j| if j == last { i % 2 == 1 } else { base.beats_idx(i, j) }))
    }

    /// Tournament whose arc code is `code` (see [`Tournament::code`]).
    pub fn from_code(m: usize, code: u64) -> Self {
        assert!((1..=MAX_CODE_CANDIDATES).contains(&m), "code tournaments need 1..=11 candidates");
        let mut bit = 0;
        Self::from_fn(m, |_, _| {
            let flipped = code >> bit & 1 == 1;
            bit += 1;
            !flipped
        })
    }

    /// Arc code: pairs `(i, j)` with `i < j` in lexicographic order; bit set iff `j` beats `i`.
    /// Code 0 is the transitive tournament `0 > 1 > ... > m-1`.
    pub fn code(&self) -> u64 {
        let m = self.len();
        assert!(m <= MAX_CODE_CANDIDATES, "too many candidates for a u64 code");
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..m {
            for j in (i + 1)..m {
                if self.rows[j].contains(i) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Number of labeled tournaments on `m` candidates.
    pub fn count(m: usize) -> u64 {
        1u64 << pairs(m)
    }

    /// All labeled tournaments on `m` candidates in code order.
    pub fn all(m: usize) -> impl Iterator<Item = Tournament> {
        (0..Self::count(m)).map(move |code| Self::from_code(m, code))
    }

    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        Self::from_fn(m, |_, _| rng.gen_bool(0.5))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.len()).map(CandidateId)
    }

    fn check(&self, c: CandidateId) -> Result<(), TournamentError> {
        if c.0 >= self.len() {
            return Err(TournamentError::OutOfRange(c.0, self.len()));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn beats_idx(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// `a ≻ b`. Panics on out-of-range ids.
    #[inline]
    pub fn beats(&self, a: CandidateId, b: CandidateId) -> bool {
        self.rows[a.0].contains(b.0)
    }

    pub(crate) fn row(&self, c: usize) -> &FixedBitSet {
        &self.rows[c]
    }

    pub fn out_neighbors(&self, c: CandidateId) -> Result<CandidateSet, TournamentError> {
        self.check(c)?;
        Ok(CandidateSet::from_bits(self.rows[c.0].clone()))
    }

    pub fn in_neighbors(&self, c: CandidateId) -> Result<CandidateSet, TournamentError> {
        self.check(c)?;
        let mut bits = self.rows[c.0].clone();
        bits.toggle_range(..);
        bits.set(c.0, false);
        Ok(CandidateSet::from_bits(bits))
    }

    pub fn outdegree(&self, c: CandidateId) -> usize {
        self.rows[c.0].count_ones(..)
    }

    pub fn indegree(&self, c: CandidateId) -> usize {
        self.len() - 1 - self.outdegree(c)
    }

    pub fn outdegrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.count_ones(..)).collect()
    }

    /// Copy with the orientation between `a` and `b` flipped.
    pub fn reverse_arc(&self, a: CandidateId, b: CandidateId) -> Result<Tournament, TournamentError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(TournamentError::SameCandidate(a.0));
        }
        let mut t = self.clone();
        t.flip(a.0, b.0);
        Ok(t)
    }

    pub(crate) fn flip(&mut self, a: usize, b: usize) {
        if self.rows[a].contains(b) {
            self.rows[a].set(b, false);
            self.rows[b].insert(a);
        } else {
            self.rows[b].set(a, false);
            self.rows[a].insert(b);
        }
    }

    /// Makes `c` beat every candidate in `gains` (each must currently beat `c`).
    /// The relation among the other candidates is untouched.
    pub fn lift(&self, c: CandidateId, gains: &CandidateSet) -> Tournament {
        let mut t = self.clone();
        for x in gains.iter() {
            debug_assert!(t.beats(x, c), "lift must only add out-neighbours");
            t.flip(x.0, c.0);
        }
        t
    }

    /// Subtournament on `keep`. The second value maps new indices to old ones.
    pub fn induced(&self, keep: &CandidateSet) -> Result<(Tournament, Vec<CandidateId>), TournamentError> {
        if keep.is_empty() {
            return Err(TournamentError::EmptySubset);
        }
        if let Some(bad) = keep.iter().find(|c| c.0 >= self.len()) {
            return Err(TournamentError::OutOfRange(bad.0, self.len()));
        }
        let map: Vec<CandidateId> = keep.iter().collect();
        let t = Self::from_fn(map.len(), |i, j| self.beats(map[i], map[j]));
        Ok((t, map))
    }

    /// `π(T)`: candidate `perm[i]` takes the place of `i`.
    pub fn relabel(&self, perm: &[CandidateId]) -> Result<Tournament, TournamentError> {
        let m = self.len();
        let mut seen = vec![false; m];
        if perm.len() != m {
            return Err(TournamentError::BadPermutation(m));
        }
        for p in perm {
            if p.0 >= m || seen[p.0] {
                return Err(TournamentError::BadPermutation(m));
            }
            seen[p.0] = true;
        }
        let mut inv = vec![0; m];
        for (i, p) in perm.iter().enumerate() {
            inv[p.0] = i;
        }
        Ok(Self::from_fn(m, |i, j| self.beats_idx(inv[i], inv[j])))
    }

    /// The Condorcet winner, if any.
    pub fn source(&self) -> Option<CandidateId> {
        let m = self.len();
        self.rows.iter().position(|r| r.count_ones(..) + 1 == m).map(CandidateId)
    }

    pub fn is_regular(&self) -> bool {
        let m = self.len() as isize;
        self.rows.iter().all(|r| {
            let out = r.count_ones(..) as isize;
            (out - (m - 1 - out)).abs() <= 1
        })
    }

    /// Ordered strongly connected components.
    ///
    /// In a tournament every candidate of an earlier component has strictly
    /// larger outdegree than every candidate of a later one, so the components
    /// are the blocks of the outdegree-sorted order, cut wherever the first
    /// `k` candidates are closed: their outdegrees sum to `C(k,2) + k(m-k)`.
    pub fn condense(&self) -> Condensation {
        let m = self.len();
        let deg = self.outdegrees();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
        let mut components = Vec::new();
        let mut start = 0;
        let mut sum = 0;
        for k in 1..=m {
            sum += deg[order[k - 1]];
            if sum == k * (k - 1) / 2 + k * (m - k) {
                let mut comp: Vec<CandidateId> = order[start..k].iter().map(|&i| CandidateId(i)).collect();
                comp.sort();
                components.push(comp);
                start = k;
            }
        }
        Condensation { components }
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.condense().components.len() == 1
    }

    /// All arcs `(winner, loser)`.
    pub fn arcs(&self) -> impl Iterator<Item = (CandidateId, CandidateId)> + '_ {
        (0..self.len()).flat_map(move |i| self.rows[i].ones().map(move |j| (CandidateId(i), CandidateId(j))))
    }
}

/// Number of unordered pairs on `m` candidates.
pub fn pairs(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Position of the pair `{a, b}` in the arc code of an `m`-candidate tournament.
pub(crate) fn pair_index(m: usize, a: usize, b: usize) -> usize {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament[")?;
        for (k, (a, b)) in self.arcs().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}>{}", a.0, b.0)?;
        }
        write!(f, "]")
    }
}

/// Maximal strongly connected components, ordered so that every candidate of
/// `components[i]` beats every candidate of `components[j]` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensation {
    pub components: Vec<Vec<CandidateId>>,
}

impl Condensation {
    pub fn top(&self) -> &[CandidateId] {
        &self.components[0]
    }

    pub fn component_of(&self, c: CandidateId) -> Option<usize> {
        self.components.iter().position(|comp| comp.contains(&c))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}
