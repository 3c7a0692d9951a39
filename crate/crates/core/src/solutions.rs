//! Tournament solutions: Copeland set, top cycle, uncovered set.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::set::{CandidateId, CandidateSet};
use crate::tournament::Tournament;

/// A tournament solution, carried as a value so callers stay generic over it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionRule {
    TopCycle,
    Copeland,
    Uncovered,
}

impl SolutionRule {
    pub const ALL: [SolutionRule; 3] = [SolutionRule::TopCycle, SolutionRule::Copeland, SolutionRule::Uncovered];

    pub fn apply(self, t: &Tournament) -> CandidateSet {
        match self {
            SolutionRule::TopCycle => top_cycle(t),
            SolutionRule::Copeland => copeland_set(t),
            SolutionRule::Uncovered => uncovered_set(t),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            SolutionRule::TopCycle => "tc",
            SolutionRule::Copeland => "co",
            SolutionRule::Uncovered => "uc",
        }
    }
}

impl fmt::Display for SolutionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SolutionRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tc" | "top-cycle" => Ok(SolutionRule::TopCycle),
            "co" | "copeland" => Ok(SolutionRule::Copeland),
            "uc" | "uncovered" => Ok(SolutionRule::Uncovered),
            other => Err(format!("unknown tournament solution `{other}` (expected tc, co or uc)")),
        }
    }
}

/// Dispatches to the rule. Always nonempty.
pub fn apply(rule: SolutionRule, t: &Tournament) -> CandidateSet {
    rule.apply(t)
}

/// Candidates of maximum outdegree.
pub fn copeland_set(t: &Tournament) -> CandidateSet {
    let deg = t.outdegrees();
    let best = deg.iter().copied().max().unwrap_or(0);
    CandidateSet::from_ids(t.len(), deg.iter().enumerate().filter(|(_, &d)| d == best).map(|(i, _)| CandidateId(i)))
}

/// First component of the condensation.
pub fn top_cycle(t: &Tournament) -> CandidateSet {
    CandidateSet::from_ids(t.len(), t.condense().top().iter().copied())
}

/// Kings: candidates reaching everyone in at most two steps.
pub fn uncovered_set(t: &Tournament) -> CandidateSet {
    let m = t.len();
    let mut kings = CandidateSet::empty(m);
    for a in 0..m {
        let mut two: FixedBitSet = t.row(a).clone();
        for c in t.row(a).ones() {
            two.union_with(t.row(c));
        }
        two.insert(a);
        if two.count_ones(..) == m {
            kings.insert(CandidateId(a));
        }
    }
    kings
}

/// The source of the tournament, if one exists.
pub fn condorcet_winner(t: &Tournament) -> Option<CandidateId> {
    t.source()
}
