//! Elections whose votes are tournaments, and TS-Approval scoring.
//!
//! Every vote approves exactly the candidates its tournament solution selects;
//! a candidate's score is the number of votes approving it and the winners are
//! the full argmax (ties are never broken). Per-vote solution sets are memoized
//! per rule inside the [`Election`] value, so repeated queries are cheap.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::set::{CandidateId, CandidateSet};
use crate::solutions::SolutionRule;
use crate::tournament::{Tournament, TournamentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElectionError {
    #[error("an election needs at least one vote")]
    NoVotes,
    #[error("vote {vote} has {got} candidates but the roster has {expected}")]
    VoteSize { vote: usize, got: usize, expected: usize },
    #[error("candidate {0} is not in the roster")]
    UnknownCandidate(usize),
    #[error("unknown candidate name `{0}`")]
    UnknownName(String),
    #[error("candidate name `{0}` is used twice")]
    DuplicateName(String),
    #[error("candidate name `{0}` must be a nonempty ASCII token without whitespace")]
    BadName(String),
    #[error("the rosters differ")]
    RosterMismatch,
    #[error("vote index {0} is out of range")]
    VoteOutOfRange(usize),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Ordered candidate names; indices are positions in the list.
#[derive(Clone, PartialEq, Eq)]
pub struct Roster {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Roster {
    pub fn new<I, S>(names: I) -> Result<Self, ElectionError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.is_ascii() || n.chars().any(|ch| ch.is_ascii_whitespace() || ch.is_ascii_control()) {
                return Err(ElectionError::BadName(n.clone()));
            }
            if index.insert(n.clone(), i).is_some() {
                return Err(ElectionError::DuplicateName(n.clone()));
            }
        }
        Ok(Roster { names, index })
    }

    /// `a, b, c, ...` for up to 26 candidates, `c1, c2, ...` beyond.
    pub fn default_names(m: usize) -> Self {
        let names: Vec<String> = if m <= 26 {
            (0..m).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
        } else {
            (1..=m).map(|i| format!("c{i}")).collect()
        };
        Roster::new(names).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<CandidateId, ElectionError> {
        self.index.get(name).map(|&i| CandidateId(i)).ok_or_else(|| ElectionError::UnknownName(name.to_string()))
    }

    pub fn names_of(&self, set: &CandidateSet) -> Vec<&str> {
        set.iter().map(|c| self.name(c)).collect()
    }

    /// Roster restricted to `map` (new index -> old index).
    pub fn restrict(&self, map: &[CandidateId]) -> Roster {
        Roster::new(map.iter().map(|&c| self.names[c.0].clone())).expect("subset of a valid roster")
    }
}

impl fmt::Debug for Roster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// Whether winning means being the sole winner or being among the winners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WinnerModel {
    Unique,
    NonUnique,
}

impl WinnerModel {
    pub const ALL: [WinnerModel; 2] = [WinnerModel::Unique, WinnerModel::NonUnique];

    pub fn tag(self) -> &'static str {
        match self {
            WinnerModel::Unique => "unique",
            WinnerModel::NonUnique => "nonunique",
        }
    }
}

impl fmt::Display for WinnerModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for WinnerModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "unique" => Ok(WinnerModel::Unique),
            "nonunique" | "non-unique" | "cowinner" | "co-winner" => Ok(WinnerModel::NonUnique),
            other => Err(format!("unknown winner model `{other}` (expected unique or nonunique)")),
        }
    }
}

fn rule_slot(rule: SolutionRule) -> usize {
    match rule {
        SolutionRule::TopCycle => 0,
        SolutionRule::Copeland => 1,
        SolutionRule::Uncovered => 2,
    }
}

/// A roster plus a nonempty sequence of tournament votes over it.
#[derive(Clone)]
pub struct Election {
    roster: Roster,
    votes: Vec<Tournament>,
    approvals: [OnceLock<Vec<CandidateSet>>; 3],
}

impl PartialEq for Election {
    fn eq(&self, other: &Self) -> bool {
        self.roster == other.roster && self.votes == other.votes
    }
}

impl Eq for Election {}

impl fmt::Debug for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Election").field("roster", &self.roster).field("votes", &self.votes).finish()
    }
}

impl Election {
    pub fn new(roster: Roster, votes: Vec<Tournament>) -> Result<Self, ElectionError> {
        if votes.is_empty() {
            return Err(ElectionError::NoVotes);
        }
        for (i, v) in votes.iter().enumerate() {
            if v.len() != roster.len() {
                return Err(ElectionError::VoteSize { vote: i, got: v.len(), expected: roster.len() });
            }
        }
        Ok(Election { roster, votes, approvals: Default::default() })
    }

    /// Election over [`Roster::default_names`].
    pub fn from_votes(votes: Vec<Tournament>) -> Result<Self, ElectionError> {
        let m = votes.first().ok_or(ElectionError::NoVotes)?.len();
        Self::new(Roster::default_names(m), votes)
    }

    pub fn roster(&self) -> &Roster {
        &self.roster
    }

    pub fn votes(&self) -> &[Tournament] {
        &self.votes
    }

    pub fn num_candidates(&self) -> usize {
        self.roster.len()
    }

    pub fn num_votes(&self) -> usize {
        self.votes.len()
    }

    pub fn candidates(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.num_candidates()).map(CandidateId)
    }

    fn check(&self, c: CandidateId) -> Result<(), ElectionError> {
        if c.0 >= self.num_candidates() {
            return Err(ElectionError::UnknownCandidate(c.0));
        }
        Ok(())
    }

    /// Per-vote solution sets, computed once per rule.
    pub fn approvals(&self, rule: SolutionRule) -> &[CandidateSet] {
        self.approvals[rule_slot(rule)].get_or_init(|| self.votes.iter().map(|t| rule.apply(t)).collect())
    }

    pub fn scores(&self, rule: SolutionRule) -> Vec<usize> {
        let mut scores = vec![0; self.num_candidates()];
        for set in self.approvals(rule) {
            for c in set.iter() {
                scores[c.0] += 1;
            }
        }
        scores
    }

    pub fn ts_score(&self, rule: SolutionRule, c: CandidateId) -> Result<usize, ElectionError> {
        self.check(c)?;
        Ok(self.approvals(rule).iter().filter(|s| s.contains(c)).count())
    }

    pub fn winners(&self, rule: SolutionRule) -> CandidateSet {
        argmax(&self.scores(rule))
    }

    pub fn wins(&self, rule: SolutionRule, p: CandidateId, model: WinnerModel) -> Result<bool, ElectionError> {
        self.check(p)?;
        Ok(wins_in(&self.winners(rule), p, model))
    }

    pub fn dichotomize(&self, rule: SolutionRule) -> ApprovalProfile {
        ApprovalProfile { candidates: self.num_candidates(), ballots: self.approvals(rule).to_vec() }
    }

    /// Votes of `self` followed by those of `other`.
    pub fn concat(&self, other: &Election) -> Result<Election, ElectionError> {
        if self.roster != other.roster {
            return Err(ElectionError::RosterMismatch);
        }
        let mut votes = self.votes.clone();
        votes.extend(other.votes.iter().cloned());
        let e = Election::new(self.roster.clone(), votes)?;
        for rule in SolutionRule::ALL {
            let slot = rule_slot(rule);
            if let (Some(a), Some(b)) = (self.approvals[slot].get(), other.approvals[slot].get()) {
                let _ = e.approvals[slot].set(a.iter().chain(b).cloned().collect());
            }
        }
        Ok(e)
    }

    /// Every vote restricted to `active`; the map sends new indices to old ones.
    pub fn restrict(&self, active: &CandidateSet) -> Result<(Election, Vec<CandidateId>), ElectionError> {
        let mut votes = Vec::with_capacity(self.votes.len());
        let mut map = Vec::new();
        for v in &self.votes {
            let (t, m) = v.induced(active)?;
            votes.push(t);
            map = m;
        }
        let roster = self.roster.restrict(&map);
        Ok((Election::new(roster, votes)?, map))
    }

    /// Votes at the given indices, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<Election, ElectionError> {
        let mut votes = Vec::with_capacity(indices.len());
        for &i in indices {
            votes.push(self.votes.get(i).ok_or(ElectionError::VoteOutOfRange(i))?.clone());
        }
        Election::new(self.roster.clone(), votes)
    }

    pub fn with_votes(&self, votes: Vec<Tournament>) -> Result<Election, ElectionError> {
        Election::new(self.roster.clone(), votes)
    }

    /// Relabels every vote by `perm` (candidate `i` becomes `perm[i]`); names move with it.
    pub fn relabel(&self, perm: &[CandidateId]) -> Result<Election, ElectionError> {
        let votes = self.votes.iter().map(|t| t.relabel(perm)).collect::<Result<Vec<_>, _>>()?;
        let mut names = vec![String::new(); self.num_candidates()];
        for (i, p) in perm.iter().enumerate() {
            names[p.0] = self.roster.names[i].clone();
        }
        Election::new(Roster::new(names)?, votes)
    }
}

pub(crate) fn argmax(scores: &[usize]) -> CandidateSet {
    let best = scores.iter().copied().max().unwrap_or(0);
    CandidateSet::from_ids(scores.len(), scores.iter().enumerate().filter(|(_, &s)| s == best).map(|(i, _)| CandidateId(i)))
}

pub(crate) fn wins_in(winners: &CandidateSet, p: CandidateId, model: WinnerModel) -> bool {
    match model {
        WinnerModel::Unique => winners.len() == 1 && winners.contains(p),
        WinnerModel::NonUnique => winners.contains(p),
    }
}

/// Dichotomous ballots: per vote, the approved candidates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApprovalProfile {
    pub candidates: usize,
    pub ballots: Vec<CandidateSet>,
}

impl ApprovalProfile {
    pub fn scores(&self) -> Vec<usize> {
        (0..self.candidates).map(|c| self.ballots.iter().filter(|b| b.contains(CandidateId(c))).count()).collect()
    }

    pub fn winners(&self) -> CandidateSet {
        argmax(&self.scores())
    }
}

impl std::str::FromStr for Election {
    type Err = crate::format::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::format::parse_election(s)
    }
}

impl fmt::Display for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::print_election(self))
    }
}
