//! Control and bribery.
//!
//! Every problem has an exact brute-force solver that enumerates actions by
//! increasing cost, so the first hit is a minimum-cost witness and ties go to
//! the lexicographically least choice. DCAV and DCDV also have gap-counting
//! solvers in polynomial time; [`solve_control`] cross-checks them against the
//! brute force whenever the latter fits its bounds.
//!
//! Votes are always tournaments over the full candidate set. When candidates
//! are added or deleted, each vote is restricted to the active candidates with
//! [`Tournament::induced`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::election::{Election, ElectionError, WinnerModel};
use crate::format::{self, invalid, parse_num, Lines, ParseError};
use crate::properties::solution_masks;
use crate::set::{CandidateId, CandidateSet};
use crate::solutions::SolutionRule;
use crate::tournament::{pairs, Tournament, TournamentError};

/// Default cap on the number of actions a brute-force search may enumerate.
pub const MAX_CHOICES: u64 = 1_000_000;
/// Default cap on the bribery budget the brute force accepts.
pub const MAX_REVERSALS: usize = 4;

/// Largest candidate count served by cached solution tables.
const TABLE_MAX: usize = 6;
const CHUNK: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("{bound} bound exceeded: {count} > {limit} (use unbounded limits to override)")]
    BoundExceeded { bound: &'static str, count: u64, limit: u64 },
    #[error("this solver does not handle {0}")]
    WrongProblem(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("fast path and brute force disagree: {0}")]
    OracleDisagreement(String),
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Goal {
    /// Make `p` win.
    Constructive,
    /// Make `p` lose.
    Destructive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    AddVotes,
    DeleteVotes,
    AddCandidates,
    DeleteCandidates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ControlProblem {
    Ccav,
    Ccdv,
    Ccac,
    Ccdc,
    Dcav,
    Dcdv,
    Dcac,
    Dcdc,
}

impl ControlProblem {
    pub const ALL: [ControlProblem; 8] = [
        ControlProblem::Ccav,
        ControlProblem::Ccdv,
        ControlProblem::Ccac,
        ControlProblem::Ccdc,
        ControlProblem::Dcav,
        ControlProblem::Dcdv,
        ControlProblem::Dcac,
        ControlProblem::Dcdc,
    ];

    pub fn goal(self) -> Goal {
        use ControlProblem::*;
        match self {
            Ccav | Ccdv | Ccac | Ccdc => Goal::Constructive,
            Dcav | Dcdv | Dcac | Dcdc => Goal::Destructive,
        }
    }

    pub fn operation(self) -> Operation {
        use ControlProblem::*;
        match self {
            Ccav | Dcav => Operation::AddVotes,
            Ccdv | Dcdv => Operation::DeleteVotes,
            Ccac | Dcac => Operation::AddCandidates,
            Ccdc | Dcdc => Operation::DeleteCandidates,
        }
    }

    pub fn tag(self) -> &'static str {
        use ControlProblem::*;
        match self {
            Ccav => "ccav",
            Ccdv => "ccdv",
            Ccac => "ccac",
            Ccdc => "ccdc",
            Dcav => "dcav",
            Dcdv => "dcdv",
            Dcac => "dcac",
            Dcdc => "dcdc",
        }
    }
}

impl fmt::Display for ControlProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ControlProblem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        ControlProblem::ALL.into_iter().find(|p| p.tag() == s).ok_or_else(|| format!("unknown control problem `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BriberyProblem {
    Cbra,
    Dbra,
}

impl BriberyProblem {
    pub const ALL: [BriberyProblem; 2] = [BriberyProblem::Cbra, BriberyProblem::Dbra];

    pub fn goal(self) -> Goal {
        match self {
            BriberyProblem::Cbra => Goal::Constructive,
            BriberyProblem::Dbra => Goal::Destructive,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            BriberyProblem::Cbra => "cbra",
            BriberyProblem::Dbra => "dbra",
        }
    }
}

impl fmt::Display for BriberyProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BriberyProblem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        BriberyProblem::ALL.into_iter().find(|p| p.tag() == s).ok_or_else(|| format!("unknown bribery problem `{s}`"))
    }
}

/// One arc reversal: the orientation between `a` and `b` in vote `vote` is flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Reversal {
    pub vote: usize,
    pub a: CandidateId,
    pub b: CandidateId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// Indices into the unregistered votes.
    AddVotes(Vec<usize>),
    /// Indices into the registered votes.
    DeleteVotes(Vec<usize>),
    AddCandidates(Vec<CandidateId>),
    DeleteCandidates(Vec<CandidateId>),
    Reversals(Vec<Reversal>),
}

impl Action {
    pub fn cost(&self) -> usize {
        match self {
            Action::AddVotes(v) | Action::DeleteVotes(v) => v.len(),
            Action::AddCandidates(c) | Action::DeleteCandidates(c) => c.len(),
            Action::Reversals(r) => r.len(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Action::AddVotes(_) => "add-votes",
            Action::DeleteVotes(_) => "delete-votes",
            Action::AddCandidates(_) => "add-candidates",
            Action::DeleteCandidates(_) => "delete-candidates",
            Action::Reversals(_) => "reversals",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyOutcome {
    pub feasible: bool,
    pub action: Option<Action>,
    /// Cost of the witness; 0 when infeasible.
    pub cost: usize,
}

impl StrategyOutcome {
    pub fn infeasible() -> Self {
        StrategyOutcome { feasible: false, action: None, cost: 0 }
    }

    pub fn with(action: Action) -> Self {
        StrategyOutcome { feasible: true, cost: action.cost(), action: Some(action) }
    }
}

/// Size limits for the brute-force solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_choices: u64,
    pub max_reversals: usize,
    /// Ignore both caps.
    pub unbounded: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_choices: MAX_CHOICES, max_reversals: MAX_REVERSALS, unbounded: false }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits { unbounded: true, ..Limits::default() }
    }
}

/// Whether `e` satisfies the goal for `p`.
pub fn goal_holds(goal: Goal, rule: SolutionRule, model: WinnerModel, e: &Election, p: CandidateId) -> Result<bool, ElectionError> {
    let wins = e.wins(rule, p, model)?;
    Ok(wins == (goal == Goal::Constructive))
}

/// Goal check on a score vector; inactive candidates carry `None`.
fn goal_met(goal: Goal, model: WinnerModel, scores: &[Option<i64>], p: usize) -> bool {
    let best = scores.iter().flatten().copied().max().expect("p is active");
    let top = scores.iter().filter(|s| **s == Some(best)).count();
    let wins = scores[p] == Some(best) && (model == WinnerModel::NonUnique || top == 1);
    wins == (goal == Goal::Constructive)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
        if c > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    c as u64
}

/// Number of subsets of an `n`-set with at most `k` elements, saturating.
pub fn subsets_up_to(n: usize, k: usize) -> u64 {
    (0..=k.min(n)).fold(0u64, |acc, s| acc.saturating_add(binomial(n as u64, s as u64)))
}

fn check_choices(n: usize, k: usize, limits: &Limits) -> Result<(), StrategyError> {
    let count = subsets_up_to(n, k);
    if !limits.unbounded && count > limits.max_choices {
        return Err(StrategyError::BoundExceeded { bound: "choices", count, limit: limits.max_choices });
    }
    Ok(())
}

/// Lexicographically least subset of `0..n` of minimum size `<= max` passing `test`.
fn first_subset<F>(n: usize, max: usize, test: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    for size in 0..=max.min(n) {
        let mut combos = (0..n).combinations(size);
        loop {
            let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            if let Some(hit) = chunk.par_iter().find_first(|c| test(c)) {
                return Some(hit.clone());
            }
        }
    }
    None
}

fn distinct_in_range(items: &[usize], len: usize, what: &str) -> Result<(), StrategyError> {
    let mut seen = vec![false; len];
    for &i in items {
        if i >= len {
            return Err(StrategyError::InvalidAction(format!("{what} {i} is out of range")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(StrategyError::InvalidAction(format!("{what} {i} is listed twice")));
        }
    }
    Ok(())
}

fn table(rule: SolutionRule, m: usize) -> &'static [u32] {
    static TABLES: [[OnceLock<Vec<u32>>; TABLE_MAX + 1]; 3] = [const { [const { OnceLock::new() }; TABLE_MAX + 1] }; 3];
    let slot = SolutionRule::ALL.iter().position(|&r| r == rule).expect("known rule");
    TABLES[slot][m].get_or_init(|| solution_masks(rule, m))
}

fn base_scores(e: &Election, rule: SolutionRule) -> Vec<Option<i64>> {
    e.scores(rule).into_iter().map(|s| Some(s as i64)).collect()
}

/// An election-control instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlInstance {
    pub problem: ControlProblem,
    pub rule: SolutionRule,
    pub model: WinnerModel,
    /// Registered votes, over every candidate (registered or not).
    pub election: Election,
    pub p: CandidateId,
    pub k: usize,
    /// Votes the chair may add (AV problems only).
    pub unregistered_votes: Vec<Tournament>,
    /// Candidates the chair may add (AC problems only); never contains `p`.
    pub unregistered_candidates: CandidateSet,
}

impl ControlInstance {
    pub fn new(problem: ControlProblem, rule: SolutionRule, model: WinnerModel, election: Election, p: CandidateId, k: usize) -> Self {
        let m = election.num_candidates();
        ControlInstance {
            problem,
            rule,
            model,
            election,
            p,
            k,
            unregistered_votes: Vec::new(),
            unregistered_candidates: CandidateSet::empty(m),
        }
    }

    pub fn with_unregistered_votes(mut self, votes: Vec<Tournament>) -> Self {
        self.unregistered_votes = votes;
        self
    }

    pub fn with_unregistered_candidates(mut self, d: CandidateSet) -> Self {
        self.unregistered_candidates = d;
        self
    }

    pub fn goal(&self) -> Goal {
        self.problem.goal()
    }

    pub fn validate(&self) -> Result<(), StrategyError> {
        let bad = |msg: String| Err(StrategyError::InvalidInstance(msg));
        let m = self.election.num_candidates();
        let op = self.problem.operation();
        if self.k == 0 {
            return bad("the budget must be at least 1".into());
        }
        if self.p.0 >= m {
            return bad(format!("distinguished candidate {} is not in the roster", self.p));
        }
        if !self.unregistered_votes.is_empty() && op != Operation::AddVotes {
            return bad(format!("{} takes no unregistered votes", self.problem));
        }
        if let Some(i) = self.unregistered_votes.iter().position(|v| v.len() != m) {
            return bad(format!("unregistered vote {i} has {} candidates, expected {m}", self.unregistered_votes[i].len()));
        }
        if self.unregistered_candidates.universe() != m {
            return bad("unregistered candidate set has the wrong universe".into());
        }
        if !self.unregistered_candidates.is_empty() && op != Operation::AddCandidates {
            return bad(format!("{} takes no unregistered candidates", self.problem));
        }
        if self.unregistered_candidates.contains(self.p) {
            return bad("the distinguished candidate must be registered".into());
        }
        Ok(())
    }

    /// `C` minus the unregistered candidates.
    pub fn registered_candidates(&self) -> CandidateSet {
        self.unregistered_candidates.complement()
    }

    /// The items an action picks from, in enumeration order.
    fn options(&self) -> Vec<usize> {
        match self.problem.operation() {
            Operation::AddVotes => (0..self.unregistered_votes.len()).collect(),
            Operation::DeleteVotes => (0..self.election.num_votes()).collect(),
            Operation::AddCandidates => self.unregistered_candidates.iter().map(|c| c.0).collect(),
            Operation::DeleteCandidates => self.election.candidates().filter(|&c| c != self.p).map(|c| c.0).collect(),
        }
    }

    fn max_cost(&self) -> usize {
        let cap = self.k.min(self.options().len());
        match self.problem.operation() {
            Operation::DeleteVotes => cap.min(self.election.num_votes() - 1),
            _ => cap,
        }
    }

    fn action_of(&self, chosen: Vec<usize>) -> Action {
        match self.problem.operation() {
            Operation::AddVotes => Action::AddVotes(chosen),
            Operation::DeleteVotes => Action::DeleteVotes(chosen),
            Operation::AddCandidates => Action::AddCandidates(chosen.into_iter().map(CandidateId).collect()),
            Operation::DeleteCandidates => Action::DeleteCandidates(chosen.into_iter().map(CandidateId).collect()),
        }
    }

    /// The election after `action`, with `p`'s index in it.
    pub fn apply(&self, action: &Action) -> Result<(Election, CandidateId), StrategyError> {
        self.validate()?;
        let m = self.election.num_candidates();
        let n = self.election.num_votes();
        let registered = self.registered_candidates();
        let (e, active) = match (self.problem.operation(), action) {
            (Operation::AddVotes, Action::AddVotes(idx)) => {
                distinct_in_range(idx, self.unregistered_votes.len(), "unregistered vote")?;
                let mut votes = self.election.votes().to_vec();
                votes.extend(idx.iter().map(|&i| self.unregistered_votes[i].clone()));
                (self.election.with_votes(votes)?, registered)
            }
            (Operation::DeleteVotes, Action::DeleteVotes(idx)) => {
                distinct_in_range(idx, n, "vote")?;
                let keep: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
                if keep.is_empty() {
                    return Err(StrategyError::InvalidAction("deleting every vote leaves no election".into()));
                }
                (self.election.select(&keep)?, registered)
            }
            (Operation::AddCandidates, Action::AddCandidates(cs)) => {
                let raw: Vec<usize> = cs.iter().map(|c| c.0).collect();
                distinct_in_range(&raw, m, "candidate")?;
                if let Some(c) = cs.iter().find(|&&c| !self.unregistered_candidates.contains(c)) {
                    return Err(StrategyError::InvalidAction(format!("{c} is not an unregistered candidate")));
                }
                let mut active = registered;
                cs.iter().for_each(|&c| active.insert(c));
                (self.election.clone(), active)
            }
            (Operation::DeleteCandidates, Action::DeleteCandidates(cs)) => {
                let raw: Vec<usize> = cs.iter().map(|c| c.0).collect();
                distinct_in_range(&raw, m, "candidate")?;
                if cs.contains(&self.p) {
                    return Err(StrategyError::InvalidAction("the distinguished candidate cannot be deleted".into()));
                }
                let mut active = registered;
                cs.iter().for_each(|&c| active.remove(c));
                (self.election.clone(), active)
            }
            (_, a) => return Err(StrategyError::InvalidAction(format!("{} does not apply to {}", a.kind(), self.problem))),
        };
        let (e, map) = e.restrict(&active)?;
        let p = map.iter().position(|&c| c == self.p).expect("p stays active");
        Ok((e, CandidateId(p)))
    }

    /// Replays a feasible outcome; `Ok` iff its action is valid, within budget and reaches the goal.
    pub fn verify(&self, outcome: &StrategyOutcome) -> Result<(), StrategyError> {
        verify_with(outcome, self.k, |a| {
            let (e, p) = self.apply(a)?;
            Ok(goal_holds(self.goal(), self.rule, self.model, &e, p)?)
        })
    }

    fn active_scores(&self, active: &CandidateSet) -> Vec<Option<i64>> {
        let mut scores: Vec<Option<i64>> =
            (0..self.election.num_candidates()).map(|c| active.contains(CandidateId(c)).then_some(0)).collect();
        for v in self.election.votes() {
            let (t, map) = v.induced(active).expect("active set is nonempty");
            for c in self.rule.apply(&t).iter() {
                *scores[map[c.0].0].as_mut().expect("active") += 1;
            }
        }
        scores
    }

    /// Exact minimum-cost search over all actions within budget.
    pub fn bruteforce(&self, limits: &Limits) -> Result<StrategyOutcome, StrategyError> {
        self.validate()?;
        let options = self.options();
        let max = self.max_cost();
        check_choices(options.len(), max, limits)?;
        let (goal, model, p) = (self.goal(), self.model, self.p.0);
        let hit = match self.problem.operation() {
            Operation::AddVotes | Operation::DeleteVotes => {
                let base = base_scores(&self.election, self.rule);
                let adding = self.problem.operation() == Operation::AddVotes;
                let sets: Vec<CandidateSet> = if adding {
                    self.unregistered_votes.iter().map(|v| self.rule.apply(v)).collect()
                } else {
                    self.election.approvals(self.rule).to_vec()
                };
                let delta = if adding { 1 } else { -1 };
                first_subset(options.len(), max, |chosen| {
                    let mut scores = base.clone();
                    for &i in chosen {
                        for c in sets[i].iter() {
                            *scores[c.0].as_mut().expect("all active") += delta;
                        }
                    }
                    goal_met(goal, model, &scores, p)
                })
            }
            Operation::AddCandidates | Operation::DeleteCandidates => {
                let adding = self.problem.operation() == Operation::AddCandidates;
                let registered = self.registered_candidates();
                first_subset(options.len(), max, |chosen| {
                    let mut active = registered.clone();
                    for &i in chosen {
                        let c = CandidateId(options[i]);
                        if adding {
                            active.insert(c);
                        } else {
                            active.remove(c);
                        }
                    }
                    goal_met(goal, model, &self.active_scores(&active), p)
                })
            }
        };
        Ok(match hit {
            Some(chosen) => StrategyOutcome::with(self.action_of(chosen.into_iter().map(|i| options[i]).collect())),
            None => StrategyOutcome::infeasible(),
        })
    }
}

fn verify_with(
    outcome: &StrategyOutcome,
    k: usize,
    replay: impl FnOnce(&Action) -> Result<bool, StrategyError>,
) -> Result<(), StrategyError> {
    if !outcome.feasible {
        return Err(StrategyError::InvalidAction("an infeasible outcome has nothing to replay".into()));
    }
    let action = outcome.action.as_ref().ok_or_else(|| StrategyError::InvalidAction("feasible outcome without an action".into()))?;
    if action.cost() != outcome.cost {
        return Err(StrategyError::InvalidAction(format!("stated cost {} but the action costs {}", outcome.cost, action.cost())));
    }
    if outcome.cost > k {
        return Err(StrategyError::InvalidAction(format!("cost {} exceeds the budget {k}", outcome.cost)));
    }
    if !replay(action)? {
        return Err(StrategyError::InvalidAction("the goal does not hold after the action".into()));
    }
    Ok(())
}

/// A bribery instance: at most `k` arc reversals in total, over all votes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BriberyInstance {
    pub problem: BriberyProblem,
    pub rule: SolutionRule,
    pub model: WinnerModel,
    pub election: Election,
    pub p: CandidateId,
    pub k: usize,
}

impl BriberyInstance {
    pub fn goal(&self) -> Goal {
        self.problem.goal()
    }

    pub fn validate(&self) -> Result<(), StrategyError> {
        if self.k == 0 {
            return Err(StrategyError::InvalidInstance("the budget must be at least 1".into()));
        }
        if self.p.0 >= self.election.num_candidates() {
            return Err(StrategyError::InvalidInstance(format!("distinguished candidate {} is not in the roster", self.p)));
        }
        Ok(())
    }

    /// Reversal slots: every (vote, unordered pair), vote-major, pairs in lexicographic order.
    pub fn slots(&self) -> usize {
        self.election.num_votes() * pairs(self.election.num_candidates())
    }

    pub fn apply(&self, action: &Action) -> Result<Election, StrategyError> {
        self.validate()?;
        let Action::Reversals(rs) = action else {
            return Err(StrategyError::InvalidAction(format!("{} does not apply to {}", action.kind(), self.problem)));
        };
        let m = self.election.num_candidates();
        let mut votes = self.election.votes().to_vec();
        let mut seen = std::collections::HashSet::new();
        for r in rs {
            if r.vote >= votes.len() {
                return Err(StrategyError::InvalidAction(format!("vote {} is out of range", r.vote)));
            }
            if r.a.0 >= m || r.b.0 >= m || r.a == r.b {
                return Err(StrategyError::InvalidAction(format!("bad pair {} {}", r.a, r.b)));
            }
            if !seen.insert((r.vote, r.a.min(r.b), r.a.max(r.b))) {
                return Err(StrategyError::InvalidAction(format!("pair {} {} of vote {} is reversed twice", r.a, r.b, r.vote)));
            }
            votes[r.vote].flip(r.a.0, r.b.0);
        }
        Ok(self.election.with_votes(votes)?)
    }

    pub fn verify(&self, outcome: &StrategyOutcome) -> Result<(), StrategyError> {
        verify_with(outcome, self.k, |a| {
            let e = self.apply(a)?;
            Ok(goal_holds(self.goal(), self.rule, self.model, &e, self.p)?)
        })
    }

    pub fn bruteforce(&self, limits: &Limits) -> Result<StrategyOutcome, StrategyError> {
        self.validate()?;
        let m = self.election.num_candidates();
        let per_vote = pairs(m);
        let slots = self.slots();
        let max = self.k.min(slots);
        if !limits.unbounded && max > limits.max_reversals {
            return Err(StrategyError::BoundExceeded { bound: "reversals", count: max as u64, limit: limits.max_reversals as u64 });
        }
        check_choices(slots, max, limits)?;
        let pair_list: Vec<(usize, usize)> = (0..m).tuple_combinations().collect();
        let base = base_scores(&self.election, self.rule);
        let approvals = self.election.approvals(self.rule);
        let votes = self.election.votes();
        let codes: Option<(Vec<u64>, &[u32])> =
            (m <= TABLE_MAX).then(|| (votes.iter().map(Tournament::code).collect(), table(self.rule, m)));
        let (goal, model, p, rule) = (self.goal(), self.model, self.p.0, self.rule);
        let hit = first_subset(slots, max, |chosen| {
            let mut scores = base.clone();
            for group in chosen.chunk_by(|a, b| a / per_vote == b / per_vote) {
                let v = group[0] / per_vote;
                for c in approvals[v].iter() {
                    *scores[c.0].as_mut().expect("all active") -= 1;
                }
                let after: Vec<usize> = match &codes {
                    Some((codes, table)) => {
                        let code = group.iter().fold(codes[v], |acc, s| acc ^ 1 << (s % per_vote));
                        let mask = table[code as usize];
                        (0..m).filter(|i| mask >> i & 1 == 1).collect()
                    }
                    None => {
                        let mut t = votes[v].clone();
                        for s in group {
                            let (a, b) = pair_list[s % per_vote];
                            t.flip(a, b);
                        }
                        rule.apply(&t).iter().map(|c| c.0).collect()
                    }
                };
                for c in after {
                    *scores[c].as_mut().expect("all active") += 1;
                }
            }
            goal_met(goal, model, &scores, p)
        });
        Ok(match hit {
            Some(chosen) => StrategyOutcome::with(Action::Reversals(
                chosen
                    .into_iter()
                    .map(|s| {
                        let (a, b) = pair_list[s % per_vote];
                        Reversal { vote: s / per_vote, a: CandidateId(a), b: CandidateId(b) }
                    })
                    .collect(),
            )),
            None => StrategyOutcome::infeasible(),
        })
    }
}

/// Final-gap threshold a rival must reach against `p` to dethrone it.
fn destructive_threshold(model: WinnerModel) -> i64 {
    match model {
        WinnerModel::NonUnique => 1,
        WinnerModel::Unique => 0,
    }
}

/// Cheapest rival: the smallest `t = max(0, thr - gap(q))` with `t <= cap(q)`.
fn cheapest_rival(
    scores: &[usize],
    p: CandidateId,
    model: WinnerModel,
    mut helpers: impl FnMut(CandidateId) -> (Vec<usize>, usize),
) -> Option<(CandidateId, Vec<usize>)> {
    let thr = destructive_threshold(model);
    let mut best: Option<(usize, CandidateId, Vec<usize>)> = None;
    for q in (0..scores.len()).map(CandidateId).filter(|&q| q != p) {
        let gap = scores[q.0] as i64 - scores[p.0] as i64;
        let t = (thr - gap).max(0) as usize;
        let (h, cap) = helpers(q);
        if t <= cap && best.as_ref().is_none_or(|(bt, _, _)| t < *bt) {
            best = Some((t, q, h[..t].to_vec()));
        }
    }
    best.map(|(_, q, h)| (q, h))
}

fn expect_problem(inst: &ControlInstance, problem: ControlProblem) -> Result<(), StrategyError> {
    if inst.problem != problem {
        return Err(StrategyError::WrongProblem(inst.problem.to_string()));
    }
    inst.validate()
}

/// DCAV by gap counting: add the unregistered votes approving a rival `q` but not `p`.
pub fn solve_dcav_fast(inst: &ControlInstance) -> Result<StrategyOutcome, StrategyError> {
    expect_problem(inst, ControlProblem::Dcav)?;
    let sets: Vec<CandidateSet> = inst.unregistered_votes.iter().map(|v| inst.rule.apply(v)).collect();
    let scores = inst.election.scores(inst.rule);
    let found = cheapest_rival(&scores, inst.p, inst.model, |q| {
        let h: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].contains(q) && !sets[i].contains(inst.p)).collect();
        let cap = inst.k.min(h.len());
        (h, cap)
    });
    Ok(found.map_or_else(StrategyOutcome::infeasible, |(_, h)| StrategyOutcome::with(Action::AddVotes(h))))
}

/// DCDV by gap counting: delete registered votes approving `p` but not a rival `q`.
/// At least one vote always remains.
pub fn solve_dcdv_fast(inst: &ControlInstance) -> Result<StrategyOutcome, StrategyError> {
    expect_problem(inst, ControlProblem::Dcdv)?;
    let sets = inst.election.approvals(inst.rule);
    let n = inst.election.num_votes();
    let scores = inst.election.scores(inst.rule);
    let found = cheapest_rival(&scores, inst.p, inst.model, |q| {
        let h: Vec<usize> = (0..n).filter(|&i| sets[i].contains(inst.p) && !sets[i].contains(q)).collect();
        let cap = inst.k.min(h.len()).min(n - 1);
        (h, cap)
    });
    Ok(found.map_or_else(StrategyOutcome::infeasible, |(_, h)| StrategyOutcome::with(Action::DeleteVotes(h))))
}

/// Dispatcher with default limits.
pub fn solve_control(inst: &ControlInstance) -> Result<StrategyOutcome, StrategyError> {
    solve_control_with(inst, &Limits::default())
}

/// DCAV and DCDV take the fast path, checked against the brute force when it
/// fits `limits`; everything else is brute force.
pub fn solve_control_with(inst: &ControlInstance, limits: &Limits) -> Result<StrategyOutcome, StrategyError> {
    let fast = match inst.problem {
        ControlProblem::Dcav => solve_dcav_fast(inst)?,
        ControlProblem::Dcdv => solve_dcdv_fast(inst)?,
        _ => return inst.bruteforce(limits),
    };
    if fast.feasible {
        inst.verify(&fast).map_err(|e| StrategyError::OracleDisagreement(format!("fast witness does not replay: {e}")))?;
    }
    match inst.bruteforce(limits) {
        Ok(oracle) if (oracle.feasible, oracle.cost) != (fast.feasible, fast.cost) => Err(StrategyError::OracleDisagreement(format!(
            "fast path says feasible={} cost={}, brute force says feasible={} cost={}",
            fast.feasible, fast.cost, oracle.feasible, oracle.cost
        ))),
        Ok(_) | Err(StrategyError::BoundExceeded { .. }) => Ok(fast),
        Err(e) => Err(e),
    }
}

pub fn solve_bribery(inst: &BriberyInstance) -> Result<StrategyOutcome, StrategyError> {
    inst.bruteforce(&Limits::default())
}

/// The DBRA algorithm for the top cycle as published: for each rival `q`,
/// `k'` counts the votes whose top cycle misses `q`, and the instance is
/// declared feasible iff `score(q) + min(k, k')` reaches the model threshold
/// against `score(p)`. The witness reverses, in each chosen vote, the arc
/// between `q` and the least candidate of the top cycle.
///
/// The declaration assumes `p`'s score is unaffected, which need not hold;
/// compare against [`BriberyInstance::bruteforce`].
pub fn solve_dbra_tc_paper(inst: &BriberyInstance) -> Result<StrategyOutcome, StrategyError> {
    if inst.problem != BriberyProblem::Dbra || inst.rule != SolutionRule::TopCycle {
        return Err(StrategyError::WrongProblem(format!("{} with {}", inst.problem, inst.rule)));
    }
    inst.validate()?;
    let sets = inst.election.approvals(inst.rule);
    let scores = inst.election.scores(inst.rule);
    let found = cheapest_rival(&scores, inst.p, inst.model, |q| {
        let h: Vec<usize> = (0..sets.len()).filter(|&i| !sets[i].contains(q)).collect();
        let cap = inst.k.min(h.len());
        (h, cap)
    });
    Ok(match found {
        None => StrategyOutcome::infeasible(),
        Some((q, votes)) => StrategyOutcome::with(Action::Reversals(
            votes
                .into_iter()
                .map(|v| {
                    let top = *inst.election.votes()[v].condense().top().iter().min().expect("nonempty top cycle");
                    Reversal { vote: v, a: q, b: top }
                })
                .collect(),
        )),
    })
}

/// What a single reversal does to the top cycle when admitting `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TcEntry {
    /// 0 if `q` is already in the top cycle, else 1.
    pub entry_cost: usize,
    /// Whether every single reversal that admits `q` also admits `p`.
    /// False when `q` is already in or `p` is already in.
    pub p_joins: bool,
}

pub fn tc_entry_effects(t: &Tournament, p: CandidateId, q: CandidateId) -> TcEntry {
    let tc = SolutionRule::TopCycle.apply(t);
    if tc.contains(q) {
        return TcEntry { entry_cost: 0, p_joins: false };
    }
    let mut admitting = 0;
    let mut all_join = true;
    for (a, b) in (0..t.len()).tuple_combinations() {
        let mut u = t.clone();
        u.flip(a, b);
        let after = SolutionRule::TopCycle.apply(&u);
        if after.contains(q) {
            admitting += 1;
            all_join &= after.contains(p);
        }
    }
    TcEntry { entry_cost: 1, p_joins: !tc.contains(p) && admitting > 0 && all_join }
}

/// A control or bribery instance, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Control(ControlInstance),
    Bribery(BriberyInstance),
}

impl Instance {
    pub fn rule(&self) -> SolutionRule {
        match self {
            Instance::Control(c) => c.rule,
            Instance::Bribery(b) => b.rule,
        }
    }

    pub fn model(&self) -> WinnerModel {
        match self {
            Instance::Control(c) => c.model,
            Instance::Bribery(b) => b.model,
        }
    }

    pub fn problem_tag(&self) -> &'static str {
        match self {
            Instance::Control(c) => c.problem.tag(),
            Instance::Bribery(b) => b.problem.tag(),
        }
    }

    pub fn election(&self) -> &Election {
        match self {
            Instance::Control(c) => &c.election,
            Instance::Bribery(b) => &b.election,
        }
    }

    pub fn validate(&self) -> Result<(), StrategyError> {
        match self {
            Instance::Control(c) => c.validate(),
            Instance::Bribery(b) => b.validate(),
        }
    }

    pub fn solve(&self, limits: &Limits) -> Result<StrategyOutcome, StrategyError> {
        match self {
            Instance::Control(c) => solve_control_with(c, limits),
            Instance::Bribery(b) => b.bruteforce(limits),
        }
    }

    pub fn bruteforce(&self, limits: &Limits) -> Result<StrategyOutcome, StrategyError> {
        match self {
            Instance::Control(c) => c.bruteforce(limits),
            Instance::Bribery(b) => b.bruteforce(limits),
        }
    }

    pub fn verify(&self, outcome: &StrategyOutcome) -> Result<(), StrategyError> {
        match self {
            Instance::Control(c) => c.verify(outcome),
            Instance::Bribery(b) => b.verify(outcome),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        let e = self.election();
        let (kind, p, k) = match self {
            Instance::Control(c) => ("control", c.p, c.k),
            Instance::Bribery(b) => ("bribery", b.p, b.k),
        };
        out.push_str(&format!("instance {kind}\nproblem {}\n", self.problem_tag()));
        out.push_str(&format!("rule {}\nmodel {}\n", self.rule(), self.model().tag()));
        out.push_str(&format!("distinguished {}\nbudget {k}\n", e.roster().name(p)));
        if let Instance::Control(c) = self {
            if !c.unregistered_candidates.is_empty() {
                out.push_str(&format!("unregistered-candidates {}\n", e.roster().names_of(&c.unregistered_candidates).join(" ")));
            }
        }
        format::write_election(out, e);
        if let Instance::Control(c) = self {
            if !c.unregistered_votes.is_empty() {
                out.push_str(&format!("unregistered {}\n", c.unregistered_votes.len()));
                for v in &c.unregistered_votes {
                    format::write_matrix(out, v);
                }
            }
        }
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let inst = Self::read(&mut lines)?;
        lines.finish()?;
        Ok(inst)
    }

    fn read(lines: &mut Lines<'_>) -> Result<Self, ParseError> {
        let (hn, kind) = lines.keyed("instance")?;
        let control = match kind.as_slice() {
            ["control"] => true,
            ["bribery"] => false,
            _ => return Err(invalid(hn, "expected `instance control` or `instance bribery`")),
        };
        let single = |lines: &mut Lines<'_>, key: &str| -> Result<(usize, String), ParseError> {
            let (n, toks) = lines.keyed(key)?;
            match toks.as_slice() {
                [t] => Ok((n, t.to_string())),
                _ => Err(invalid(n, format!("expected `{key} <value>`"))),
            }
        };
        let (pn, problem) = single(lines, "problem")?;
        let (rn, rule) = single(lines, "rule")?;
        let rule: SolutionRule = rule.parse().map_err(|e| invalid(rn, e))?;
        let (mn, model) = single(lines, "model")?;
        let model: WinnerModel = model.parse().map_err(|e| invalid(mn, e))?;
        let (dn, p) = single(lines, "distinguished")?;
        let (bn, k) = single(lines, "budget")?;
        let k = parse_num(bn, &k)?;
        let mut unreg_cands = None;
        if lines.peek().is_some_and(|(_, l)| l.split_whitespace().next() == Some("unregistered-candidates")) {
            let (n, toks) = lines.keyed("unregistered-candidates")?;
            unreg_cands = Some((n, toks.into_iter().map(String::from).collect::<Vec<_>>()));
        }
        let election = format::read_election(lines)?;
        let p = format::resolve_candidate(election.roster(), &p).map_err(|e| invalid(dn, e))?;
        let m = election.num_candidates();
        let mut unreg_votes = Vec::new();
        if lines.peek().is_some_and(|(_, l)| l.split_whitespace().next() == Some("unregistered")) {
            let (n, toks) = lines.keyed("unregistered")?;
            let [count] = toks.as_slice() else {
                return Err(invalid(n, "expected `unregistered <count>`"));
            };
            for _ in 0..parse_num(n, count)? {
                unreg_votes.push(format::read_matrix(lines, m)?);
            }
        }
        let inst = if control {
            let problem: ControlProblem = problem.parse().map_err(|e| invalid(pn, e))?;
            let mut d = CandidateSet::empty(m);
            if let Some((n, names)) = unreg_cands {
                for name in names {
                    d.insert(format::resolve_candidate(election.roster(), &name).map_err(|e| invalid(n, e))?);
                }
            }
            Instance::Control(
                ControlInstance::new(problem, rule, model, election, p, k).with_unregistered_votes(unreg_votes).with_unregistered_candidates(d),
            )
        } else {
            let problem: BriberyProblem = problem.parse().map_err(|e| invalid(pn, e))?;
            if let Some((n, _)) = unreg_cands {
                return Err(invalid(n, "bribery instances take no unregistered candidates"));
            }
            if !unreg_votes.is_empty() {
                return Err(invalid(hn, "bribery instances take no unregistered votes"));
            }
            Instance::Bribery(BriberyInstance { problem, rule, model, election, p, k })
        };
        inst.validate().map_err(|e| invalid(hn, e))?;
        Ok(inst)
    }
}

impl FromStr for Instance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Instance::from_text(s)
    }
}

/// An instance with a claimed outcome; the file form of solver output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyWitness {
    pub instance: Instance,
    pub outcome: StrategyOutcome,
}

impl StrategyWitness {
    /// Feasible claims are replayed; infeasible claims are re-solved by brute force.
    pub fn verify(&self, limits: &Limits) -> Result<(), StrategyError> {
        if self.outcome.feasible {
            return self.instance.verify(&self.outcome);
        }
        let oracle = self.instance.bruteforce(limits)?;
        if oracle.feasible {
            return Err(StrategyError::OracleDisagreement(format!("claimed infeasible, but cost {} suffices", oracle.cost)));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = self.instance.to_text();
        let roster = self.instance.election().roster();
        if !self.outcome.feasible {
            out.push_str("outcome infeasible\n");
            return out;
        }
        out.push_str(&format!("outcome feasible\ncost {}\n", self.outcome.cost));
        let names = |cs: &[CandidateId]| cs.iter().map(|&c| format!(" {}", roster.name(c))).collect::<String>();
        let nums = |vs: &[usize]| vs.iter().map(|v| format!(" {v}")).collect::<String>();
        match &self.outcome.action {
            None => {}
            Some(Action::AddVotes(v)) => out.push_str(&format!("action add-votes{}\n", nums(v))),
            Some(Action::DeleteVotes(v)) => out.push_str(&format!("action delete-votes{}\n", nums(v))),
            Some(Action::AddCandidates(c)) => out.push_str(&format!("action add-candidates{}\n", names(c))),
            Some(Action::DeleteCandidates(c)) => out.push_str(&format!("action delete-candidates{}\n", names(c))),
            Some(Action::Reversals(rs)) => {
                out.push_str(&format!("action reversals {}\n", rs.len()));
                for r in rs {
                    out.push_str(&format!("reverse {} {} {}\n", r.vote, roster.name(r.a), roster.name(r.b)));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let instance = Instance::read(&mut lines)?;
        let roster = instance.election().roster().clone();
        let (on, toks) = lines.keyed("outcome")?;
        let outcome = match toks.as_slice() {
            ["infeasible"] => StrategyOutcome::infeasible(),
            ["feasible"] => {
                let (cn, toks) = lines.keyed("cost")?;
                let [cost] = toks.as_slice() else {
                    return Err(invalid(cn, "expected `cost <n>`"));
                };
                let cost = parse_num(cn, cost)?;
                let (an, toks) = lines.keyed("action")?;
                let Some((kind, args)) = toks.split_first() else {
                    return Err(invalid(an, "expected `action <kind> ...`"));
                };
                let nums = || args.iter().map(|t| parse_num(an, t)).collect::<Result<Vec<_>, _>>();
                let names = || {
                    args.iter().map(|t| format::resolve_candidate(&roster, t).map_err(|e| invalid(an, e))).collect::<Result<Vec<_>, _>>()
                };
                let action = match *kind {
                    "add-votes" => Action::AddVotes(nums()?),
                    "delete-votes" => Action::DeleteVotes(nums()?),
                    "add-candidates" => Action::AddCandidates(names()?),
                    "delete-candidates" => Action::DeleteCandidates(names()?),
                    "reversals" => {
                        let [count] = args else {
                            return Err(invalid(an, "expected `action reversals <count>`"));
                        };
                        let mut rs = Vec::new();
                        for _ in 0..parse_num(an, count)? {
                            let (rn, toks) = lines.keyed("reverse")?;
                            let [v, a, b] = toks.as_slice() else {
                                return Err(invalid(rn, "expected `reverse <vote> <a> <b>`"));
                            };
                            let cand = |t: &str| format::resolve_candidate(&roster, t).map_err(|e| invalid(rn, e));
                            rs.push(Reversal { vote: parse_num(rn, v)?, a: cand(a)?, b: cand(b)? });
                        }
                        Action::Reversals(rs)
                    }
                    other => return Err(invalid(an, format!("unknown action `{other}`"))),
                };
                StrategyOutcome { feasible: true, action: Some(action), cost }
            }
            _ => return Err(invalid(on, "expected `outcome feasible` or `outcome infeasible`")),
        };
        lines.finish()?;
        Ok(StrategyWitness { instance, outcome })
    }
}
