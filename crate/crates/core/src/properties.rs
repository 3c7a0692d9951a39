//! Axiom auditors.
//!
//! Tournament-solution criteria (exclusive monotonicity, ENM, TS-monotonicity)
//! are searched exhaustively over labeled tournaments up to six candidates, or
//! by seeded random sampling beyond that. Voting-correspondence axioms are
//! checked on a small exhaustive grid followed by seeded random elections.
//! Every witness stores only inputs, so [`TsCounterexample::verify`] and
//! [`VcCounterexample::verify`] re-derive the violation from scratch.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::election::{Election, ElectionError, Roster};
use crate::format::{self, invalid, Lines, ParseError};
use crate::set::{CandidateId, CandidateSet};
use crate::solutions::SolutionRule;
use crate::tournament::{pair_index, pairs, Tournament};

/// Largest candidate count for exhaustive tournament-solution audits.
pub const EXHAUSTIVE_TS_MAX: usize = 6;
/// Exhaustive election grid for voting-correspondence audits.
pub const EXHAUSTIVE_VC_MAX_CANDIDATES: usize = 4;
pub const EXHAUSTIVE_VC_MAX_VOTES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertiesError {
    #[error("exhaustive audits are limited to {EXHAUSTIVE_TS_MAX} candidates (asked for {0}); use random mode")]
    ExhaustiveBound(usize),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("audits need at least {min} {what}")]
    TooSmall { what: &'static str, min: usize },
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error("could not build a thread pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TsCriterion {
    ExclusiveMonotonicity,
    Enm,
    TsMonotonicity,
}

impl TsCriterion {
    pub const ALL: [TsCriterion; 3] = [TsCriterion::ExclusiveMonotonicity, TsCriterion::Enm, TsCriterion::TsMonotonicity];

    pub fn tag(self) -> &'static str {
        match self {
            TsCriterion::ExclusiveMonotonicity => "exclusive-monotonicity",
            TsCriterion::Enm => "enm",
            TsCriterion::TsMonotonicity => "ts-monotonicity",
        }
    }

    /// Whether the pair `(ts(T), ts(T'))` violates the criterion at `c`.
    fn violated(self, before: &CandidateSet, after: &CandidateSet, c: CandidateId) -> bool {
        match self {
            TsCriterion::ExclusiveMonotonicity => before.contains(c) && (!after.contains(c) || !after.is_subset(before)),
            TsCriterion::Enm => !before.contains(c) && !after.is_subset(before) && !after.contains(c),
            TsCriterion::TsMonotonicity => before.contains(c) && !after.contains(c),
        }
    }

    fn violated_mask(self, before: u32, after: u32, c: usize) -> bool {
        let has = |s: u32| s >> c & 1 == 1;
        let grows = after & !before != 0;
        match self {
            TsCriterion::ExclusiveMonotonicity => has(before) && (!has(after) || grows),
            TsCriterion::Enm => !has(before) && grows && !has(after),
            TsCriterion::TsMonotonicity => has(before) && !has(after),
        }
    }
}

impl fmt::Display for TsCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for TsCriterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exclusive-monotonicity" | "exclusive" | "em" => Ok(TsCriterion::ExclusiveMonotonicity),
            "enm" => Ok(TsCriterion::Enm),
            "ts-monotonicity" => Ok(TsCriterion::TsMonotonicity),
            other => Err(format!("unknown tournament-solution criterion `{other}`")),
        }
    }
}

/// `T`, a lift `T'` of `c`, and the criterion the pair violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TsCounterexample {
    pub rule: SolutionRule,
    pub criterion: TsCriterion,
    pub t: Tournament,
    pub t_prime: Tournament,
    pub c: CandidateId,
}

/// Checks that `after` is `before` with `c` strengthened: equal off `c`, and
/// `c`'s out-neighbourhood only grows.
pub fn is_monotone_lift(before: &Tournament, after: &Tournament, c: CandidateId) -> bool {
    if before.len() != after.len() || c.0 >= before.len() {
        return false;
    }
    for a in before.candidates() {
        for b in before.candidates() {
            if a == b {
                continue;
            }
            if a != c && b != c && before.beats(a, b) != after.beats(a, b) {
                return false;
            }
            if a == c && before.beats(c, b) && !after.beats(c, b) {
                return false;
            }
        }
    }
    true
}

impl TsCounterexample {
    pub fn verify(&self) -> Result<(), PropertiesError> {
        if !is_monotone_lift(&self.t, &self.t_prime, self.c) {
            return Err(PropertiesError::InvalidWitness("T' is not a monotone lift of T at c".into()));
        }
        let before = self.rule.apply(&self.t);
        let after = self.rule.apply(&self.t_prime);
        if !self.criterion.violated(&before, &after, self.c) {
            return Err(PropertiesError::InvalidWitness(format!(
                "{} holds here: ts(T) = {:?}, ts(T') = {:?}, c = {}",
                self.criterion, before, after, self.c
            )));
        }
        Ok(())
    }

    /// Candidates `c` now beats that beat it in `T`.
    pub fn gains(&self) -> CandidateSet {
        let m = self.t.len();
        CandidateSet::from_ids(m, self.t.candidates().filter(|&x| self.t.beats(x, self.c) && self.t_prime.beats(self.c, x)))
    }

    pub fn to_text(&self) -> String {
        let roster = Roster::default_names(self.t.len());
        let e = Election::new(roster, vec![self.t.clone(), self.t_prime.clone()]).expect("same size");
        let mut out = format!("ts-witness {} {} {}\n", self.criterion, self.rule, e.roster().name(self.c));
        format::write_election(&mut out, &e);
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let (n, toks) = lines.keyed("ts-witness")?;
        if toks.len() != 3 {
            return Err(invalid(n, "expected `ts-witness <criterion> <rule> <candidate>`"));
        }
        let criterion = toks[0].parse().map_err(|e| invalid(n, e))?;
        let rule = toks[1].parse().map_err(|e| invalid(n, e))?;
        let e = format::read_election(&mut lines)?;
        lines.finish()?;
        if e.num_votes() != 2 {
            return Err(invalid(n, "a tournament-solution witness holds exactly two tournaments"));
        }
        let c = format::resolve_candidate(e.roster(), toks[2]).map_err(|err| invalid(n, err))?;
        Ok(TsCounterexample { rule, criterion, t: e.votes()[0].clone(), t_prime: e.votes()[1].clone(), c })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditMode {
    Exhaustive,
    Random { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub witness: Option<TsCounterexample>,
    /// Tournaments examined (exhaustive) or sampled (random).
    pub tournaments: u64,
    /// `(T, c, T')` triples examined, identity lifts included.
    pub lifts: u64,
}

/// A tournament-solution audit.
#[derive(Clone, Debug)]
pub struct TsAudit {
    pub rule: SolutionRule,
    pub criterion: TsCriterion,
    pub m_max: usize,
    pub mode: AuditMode,
    pub jobs: usize,
}

/// Exhaustive audit up to `m_max` candidates; `Ok(None)` means no violation exists there.
pub fn audit_ts(rule: SolutionRule, criterion: TsCriterion, m_max: usize) -> Result<Option<TsCounterexample>, PropertiesError> {
    Ok(TsAudit::new(rule, criterion, m_max).run()?.witness)
}

impl TsAudit {
    pub fn new(rule: SolutionRule, criterion: TsCriterion, m_max: usize) -> Self {
        TsAudit { rule, criterion, m_max, mode: AuditMode::Exhaustive, jobs: 1 }
    }

    pub fn random(mut self, trials: u64, seed: u64) -> Self {
        self.mode = AuditMode::Random { trials, seed };
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn run(&self) -> Result<AuditReport, PropertiesError> {
        self.run_filtered(|_| true)
    }

    /// Like [`TsAudit::run`], but only witnesses accepted by `keep` end the search.
    pub fn run_filtered<F>(&self, keep: F) -> Result<AuditReport, PropertiesError>
    where
        F: Fn(&TsCounterexample) -> bool + Sync,
    {
        match self.mode {
            AuditMode::Exhaustive => {
                if self.m_max > EXHAUSTIVE_TS_MAX {
                    return Err(PropertiesError::ExhaustiveBound(self.m_max));
                }
                if self.jobs <= 1 {
                    Ok(self.exhaustive(&keep, false))
                } else {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(self.jobs)
                        .build()
                        .map_err(|e| PropertiesError::Pool(e.to_string()))?;
                    Ok(pool.install(|| self.exhaustive(&keep, true)))
                }
            }
            AuditMode::Random { trials, seed } => self.sampled(trials, seed, &keep),
        }
    }

    /// Order: candidate count, number of gained arcs, tournament code, `c`, gain mask.
    fn exhaustive<F>(&self, keep: &F, parallel: bool) -> AuditReport
    where
        F: Fn(&TsCounterexample) -> bool + Sync,
    {
        let mut report = AuditReport { witness: None, tournaments: 0, lifts: 0 };
        for m in 1..=self.m_max {
            let table = solution_masks(self.rule, m);
            let count = Tournament::count(m);
            report.tournaments += count;
            for r in 0..m {
                let scan = |code: u64| self.scan(m, &table, code, r, keep);
                let hit = if parallel {
                    (0..count).into_par_iter().find_map_first(scan)
                } else {
                    (0..count).find_map(scan)
                };
                if let Some(w) = hit {
                    report.witness = Some(w);
                    return report;
                }
            }
            report.lifts += lift_count(m);
        }
        report
    }

    fn scan<F>(&self, m: usize, table: &[u32], code: u64, r: usize, keep: &F) -> Option<TsCounterexample>
    where
        F: Fn(&TsCounterexample) -> bool,
    {
        let t = Tournament::from_code(m, code);
        let before = table[code as usize];
        for c in 0..m {
            let ins: Vec<usize> = (0..m).filter(|&x| x != c && t.beats_idx(x, c)).collect();
            if r > ins.len() {
                continue;
            }
            for mask in 0u32..(1 << ins.len()) {
                if mask.count_ones() as usize != r {
                    continue;
                }
                let mut code2 = code;
                for (b, &x) in ins.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        code2 ^= 1 << pair_index(m, c, x);
                    }
                }
                if self.criterion.violated_mask(before, table[code2 as usize], c) {
                    let w = TsCounterexample {
                        rule: self.rule,
                        criterion: self.criterion,
                        t: t.clone(),
                        t_prime: Tournament::from_code(m, code2),
                        c: CandidateId(c),
                    };
                    if keep(&w) {
                        return Some(w);
                    }
                }
            }
        }
        None
    }

    fn sampled<F>(&self, trials: u64, seed: u64, keep: &F) -> Result<AuditReport, PropertiesError>
    where
        F: Fn(&TsCounterexample) -> bool,
    {
        if self.m_max < 2 {
            return Err(PropertiesError::TooSmall { what: "candidates", min: 2 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = AuditReport { witness: None, tournaments: 0, lifts: 0 };
        for _ in 0..trials {
            let m = rng.gen_range(2..=self.m_max);
            let t = Tournament::random(m, &mut rng);
            let c = CandidateId(rng.gen_range(0..m));
            let ins = t.in_neighbors(c).expect("c in range");
            let gains = CandidateSet::from_ids(m, ins.iter().filter(|_| rng.gen_bool(0.5)));
            report.tournaments += 1;
            report.lifts += 1;
            let t_prime = t.lift(c, &gains);
            let w = TsCounterexample { rule: self.rule, criterion: self.criterion, t, t_prime, c };
            if self.criterion.violated(&self.rule.apply(&w.t), &self.rule.apply(&w.t_prime), c) && keep(&w) {
                report.witness = Some(w);
                break;
            }
        }
        Ok(report)
    }
}

/// `Σ_T Σ_c 2^indeg(c)` over all labeled tournaments on `m` candidates.
pub fn lift_count(m: usize) -> u64 {
    if m == 0 {
        return 0;
    }
    m as u64 * 3u64.pow(m as u32 - 1) * (1u64 << pairs(m - 1))
}

/// Solution of every code-`m` tournament, as a bitmask.
pub(crate) fn solution_masks(rule: SolutionRule, m: usize) -> Vec<u32> {
    (0..Tournament::count(m)).map(|code| mask_of(&rule.apply(&Tournament::from_code(m, code)))).collect()
}

pub(crate) fn mask_of(s: &CandidateSet) -> u32 {
    s.iter().fold(0, |acc, c| acc | 1 << c.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VcCriterion {
    Monotonicity,
    Pareto,
    Consistency,
    Majority,
    Anonymity,
    Neutrality,
}

impl VcCriterion {
    pub const ALL: [VcCriterion; 6] = [
        VcCriterion::Monotonicity,
        VcCriterion::Pareto,
        VcCriterion::Consistency,
        VcCriterion::Majority,
        VcCriterion::Anonymity,
        VcCriterion::Neutrality,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            VcCriterion::Monotonicity => "monotonicity",
            VcCriterion::Pareto => "pareto",
            VcCriterion::Consistency => "consistency",
            VcCriterion::Majority => "majority",
            VcCriterion::Anonymity => "anonymity",
            VcCriterion::Neutrality => "neutrality",
        }
    }
}

impl fmt::Display for VcCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for VcCriterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let l = s.to_ascii_lowercase();
        VcCriterion::ALL.into_iter().find(|c| c.tag() == l).ok_or_else(|| format!("unknown voting axiom `{s}`"))
    }
}

/// A replayable voting-correspondence violation.
///
/// `candidate` is the candidate the axiom is about: the dethroned winner
/// (monotonicity), the dominated winner `b` (Pareto, with `other` = `a`), the
/// majority source, or a candidate in the mismatch (the remaining axioms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcCounterexample {
    pub rule: SolutionRule,
    pub criterion: VcCriterion,
    pub election: Election,
    pub election_prime: Option<Election>,
    pub candidate: CandidateId,
    pub other: Option<CandidateId>,
    pub relabel: Option<Vec<CandidateId>>,
    pub seed: Option<u64>,
}

fn bad(msg: impl Into<String>) -> PropertiesError {
    PropertiesError::InvalidWitness(msg.into())
}

impl VcCounterexample {
    fn prime(&self) -> Result<&Election, PropertiesError> {
        self.election_prime.as_ref().ok_or_else(|| bad(format!("{} witnesses need a second election", self.criterion)))
    }

    pub fn verify(&self) -> Result<(), PropertiesError> {
        let e = &self.election;
        let rule = self.rule;
        let c = self.candidate;
        if c.0 >= e.num_candidates() {
            return Err(bad("candidate out of range"));
        }
        match self.criterion {
            VcCriterion::Monotonicity => {
                let ep = self.prime()?;
                if ep.num_votes() != e.num_votes() || ep.num_candidates() != e.num_candidates() {
                    return Err(bad("elections differ in shape"));
                }
                for (i, (a, b)) in e.votes().iter().zip(ep.votes()).enumerate() {
                    if !is_monotone_lift(a, b, c) {
                        return Err(bad(format!("vote {i} is not a monotone lift of the candidate")));
                    }
                }
                if !e.winners(rule).contains(c) {
                    return Err(bad("the candidate does not win the first election"));
                }
                if ep.winners(rule).contains(c) {
                    return Err(bad("the candidate still wins after the lift"));
                }
            }
            VcCriterion::Pareto => {
                let a = self.other.ok_or_else(|| bad("pareto witnesses name the dominating candidate"))?;
                if a.0 >= e.num_candidates() || a == c {
                    return Err(bad("bad dominating candidate"));
                }
                if !e.votes().iter().all(|t| t.beats(a, c)) {
                    return Err(bad("not every vote prefers the dominating candidate"));
                }
                let w = e.winners(rule);
                if !(w.contains(c) && !w.contains(a)) {
                    return Err(bad("the dominated candidate does not win alone over its dominator"));
                }
            }
            VcCriterion::Consistency => {
                let ep = self.prime()?;
                let common = e.winners(rule).intersection(&ep.winners(rule));
                if common.is_empty() {
                    return Err(bad("the winner sets are disjoint"));
                }
                if e.concat(ep)?.winners(rule) == common {
                    return Err(bad("the joint winners equal the intersection"));
                }
            }
            VcCriterion::Majority => {
                let sources = e.votes().iter().filter(|t| t.source() == Some(c)).count();
                if 2 * sources <= e.num_votes() {
                    return Err(bad("the candidate is not the source of a majority"));
                }
                if e.winners(rule).contains(c) {
                    return Err(bad("the majority candidate wins"));
                }
            }
            VcCriterion::Anonymity => {
                let ep = self.prime()?;
                let mut a: Vec<u64> = e.votes().iter().map(vote_key).collect();
                let mut b: Vec<u64> = ep.votes().iter().map(vote_key).collect();
                a.sort_unstable();
                b.sort_unstable();
                if a != b || e.roster() != ep.roster() {
                    return Err(bad("the second election is not a reordering of the first"));
                }
                if e.winners(rule) == ep.winners(rule) {
                    return Err(bad("reordering keeps the winners"));
                }
            }
            VcCriterion::Neutrality => {
                let perm = self.relabel.as_ref().ok_or_else(|| bad("neutrality witnesses carry the relabeling"))?;
                let ep = e.relabel(perm).map_err(|err| bad(err.to_string()))?;
                let mapped = CandidateSet::from_ids(e.num_candidates(), e.winners(rule).iter().map(|x| perm[x.0]));
                if ep.winners(rule) == mapped {
                    return Err(bad("relabeling commutes with the winners"));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let r = self.election.roster();
        let mut out = format!("vc-witness {} {}\ncandidate {}\n", self.criterion, self.rule, r.name(self.candidate));
        if let Some(a) = self.other {
            out.push_str(&format!("other {}\n", r.name(a)));
        }
        if let Some(p) = &self.relabel {
            let s: Vec<String> = p.iter().map(|x| x.0.to_string()).collect();
            out.push_str(&format!("relabel {}\n", s.join(" ")));
        }
        if let Some(s) = self.seed {
            out.push_str(&format!("seed {s}\n"));
        }
        format::write_election(&mut out, &self.election);
        if let Some(ep) = &self.election_prime {
            format::write_election(&mut out, ep);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let (n, toks) = lines.keyed("vc-witness")?;
        if toks.len() != 2 {
            return Err(invalid(n, "expected `vc-witness <criterion> <rule>`"));
        }
        let criterion: VcCriterion = toks[0].parse().map_err(|e| invalid(n, e))?;
        let rule: SolutionRule = toks[1].parse().map_err(|e| invalid(n, e))?;
        let (cn, cand) = lines.keyed("candidate")?;
        let mut other = None;
        let mut relabel = None;
        let mut seed = None;
        while let Some((ln, l)) = lines.peek() {
            let mut it = l.split_whitespace();
            match it.next() {
                Some("other") => other = Some((ln, it.next().unwrap_or("").to_string())),
                Some("relabel") => {
                    let v = it.map(|t| format::parse_num(ln, t).map(CandidateId)).collect::<Result<Vec<_>, _>>()?;
                    relabel = Some(v);
                }
                Some("seed") => {
                    let t = it.next().unwrap_or("");
                    seed = Some(t.parse::<u64>().map_err(|_| invalid(ln, format!("bad seed `{t}`")))?);
                }
                _ => break,
            }
            lines.next()?;
        }
        let election = format::read_election(&mut lines)?;
        let election_prime = if lines.peek().is_some() { Some(format::read_election(&mut lines)?) } else { None };
        lines.finish()?;
        let name = cand.first().copied().unwrap_or("");
        let candidate = format::resolve_candidate(election.roster(), name).map_err(|e| invalid(cn, e))?;
        let other = match other {
            Some((ln, a)) => Some(format::resolve_candidate(election.roster(), &a).map_err(|e| invalid(ln, e))?),
            None => None,
        };
        Ok(VcCounterexample { rule, criterion, election, election_prime, candidate, other, relabel, seed })
    }
}

fn vote_key(t: &Tournament) -> u64 {
    if t.len() <= crate::tournament::MAX_CODE_CANDIDATES {
        return t.code();
    }
    // Larger votes: a stable hash of the arc list is enough to compare multisets.
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    for (a, b) in t.arcs() {
        (a.0, b.0).hash(&mut h);
    }
    h.finish()
}

/// Turns a tournament-solution witness into an election
/// pair in which the winner `c` is dethroned by strengthening it.
pub fn build_monotonicity_counterexample(rule: SolutionRule, w: &TsCounterexample) -> Result<VcCounterexample, PropertiesError> {
    if w.rule != rule {
        return Err(bad(format!("witness is for {}, not {rule}", w.rule)));
    }
    w.verify()?;
    let m = w.t.len();
    let before = rule.apply(&w.t);
    let after = rule.apply(&w.t_prime);
    let c = w.c;
    let src = |x: CandidateId| Tournament::with_source(m, x);
    let (votes, votes_prime) = match w.criterion {
        TsCriterion::TsMonotonicity => (vec![w.t.clone()], vec![w.t_prime.clone()]),
        TsCriterion::ExclusiveMonotonicity if !after.contains(c) => (vec![w.t.clone()], vec![w.t_prime.clone()]),
        TsCriterion::ExclusiveMonotonicity => {
            let b = after.difference(&before).first().expect("ts(T') grows");
            let rest = vec![src(b), src(b), src(c)];
            (prepend(&w.t, &rest), prepend(&w.t_prime, &rest))
        }
        TsCriterion::Enm => {
            let b = after.difference(&before).first().expect("ts(T') grows");
            let rest = vec![src(b), src(c)];
            (prepend(&w.t, &rest), prepend(&w.t_prime, &rest))
        }
    };
    let roster = Roster::default_names(m);
    let out = VcCounterexample {
        rule,
        criterion: VcCriterion::Monotonicity,
        election: Election::new(roster.clone(), votes)?,
        election_prime: Some(Election::new(roster, votes_prime)?),
        candidate: c,
        other: None,
        relabel: None,
        seed: None,
    };
    out.verify()?;
    Ok(out)
}

fn prepend(first: &Tournament, rest: &[Tournament]) -> Vec<Tournament> {
    let mut v = vec![first.clone()];
    v.extend_from_slice(rest);
    v
}

/// Outcome of a voting-correspondence audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcAuditReport {
    pub witness: Option<VcCounterexample>,
    /// Elections (or election pairs) covered by the exhaustive grid.
    pub exhaustive: u64,
    pub trials: u64,
    /// Random trials whose premise held (e.g. a nonempty winner intersection).
    pub informative: u64,
}

#[derive(Clone, Copy, Debug)]
struct Grid {
    m_max: usize,
    n_max: usize,
}

fn check_params(m_max: usize, n_max: usize) -> Result<(), PropertiesError> {
    if m_max < 2 {
        return Err(PropertiesError::TooSmall { what: "candidates", min: 2 });
    }
    if n_max < 1 {
        return Err(PropertiesError::TooSmall { what: "votes", min: 1 });
    }
    Ok(())
}

/// Random election: each vote is a random tournament or, with probability 1/3,
/// a tournament with a random source (sources make ties and thin margins common).
fn random_votes(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Vec<Tournament> {
    (0..n)
        .map(|_| {
            if rng.gen_ratio(1, 3) {
                Tournament::with_source(m, CandidateId(rng.gen_range(0..m)))
            } else {
                Tournament::random(m, rng)
            }
        })
        .collect()
}

/// Every vote tuple over code tournaments with `m` candidates and `n` votes.
fn code_tuples(m: usize, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let base = Tournament::count(m);
    let total = base.pow(n as u32);
    (0..total).map(move |mut i| {
        let mut v = vec![0; n];
        for slot in v.iter_mut().rev() {
            *slot = i % base;
            i /= base;
        }
        v
    })
}

fn scores_of(table: &[u32], codes: &[u64], m: usize) -> Vec<usize> {
    let mut s = vec![0; m];
    for &code in codes {
        let mask = table[code as usize];
        for (c, x) in s.iter_mut().enumerate() {
            *x += (mask >> c & 1) as usize;
        }
    }
    s
}

fn winner_mask(scores: &[usize]) -> u32 {
    let best = scores.iter().copied().max().unwrap_or(0);
    scores.iter().enumerate().filter(|(_, &s)| s == best).fold(0, |acc, (i, _)| acc | 1 << i)
}

fn election_of(m: usize, codes: &[u64]) -> Election {
    Election::from_votes(codes.iter().map(|&c| Tournament::from_code(m, c)).collect()).expect("nonempty grid election")
}

fn trial_rngs(seed: u64, trials: u64) -> impl Iterator<Item = (u64, ChaCha8Rng)> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(move |_| {
        let s = master.next_u64();
        (s, ChaCha8Rng::seed_from_u64(s))
    })
}

fn witness(rule: SolutionRule, criterion: VcCriterion, election: Election, candidate: CandidateId) -> VcCounterexample {
    VcCounterexample { rule, criterion, election, election_prime: None, candidate, other: None, relabel: None, seed: None }
}

/// Monotonicity of the voting correspondence: strengthen a winner in every vote.
pub fn audit_vc_monotonicity(rule: SolutionRule, m_max: usize, n_max: usize, trials: u64, seed: u64) -> Result<VcAuditReport, PropertiesError> {
    check_params(m_max, n_max)?;
    let mut report = VcAuditReport { witness: None, exhaustive: 0, trials: 0, informative: 0 };
    // Grid: m ≤ 3 with n ≤ 3, and m = 4 with n ≤ 2, every winner, every lift combination.
    let grid: Vec<(usize, usize)> = (2..=m_max.min(4))
        .flat_map(|m| (1..=n_max.min(if m <= 3 { 3 } else { 2 })).map(move |n| (m, n)))
        .collect();
    for (m, n) in grid {
        let table = solution_masks(rule, m);
        for codes in code_tuples(m, n) {
            report.exhaustive += 1;
            let w = winner_mask(&scores_of(&table, &codes, m));
            for c in (0..m).filter(|&c| w >> c & 1 == 1) {
                let options: Vec<Vec<u64>> = codes.iter().map(|&code| lifted_codes(m, code, c)).collect();
                let mut idx = vec![0usize; n];
                loop {
                    let lifted: Vec<u64> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
                    let w2 = winner_mask(&scores_of(&table, &lifted, m));
                    if w2 >> c & 1 == 0 {
                        let mut x = witness(rule, VcCriterion::Monotonicity, election_of(m, &codes), CandidateId(c));
                        x.election_prime = Some(election_of(m, &lifted));
                        report.witness = Some(x);
                        return Ok(report);
                    }
                    if !odometer(&mut idx, &options) {
                        break;
                    }
                }
            }
        }
    }
    for (s, mut rng) in trial_rngs(seed, trials) {
        report.trials += 1;
        let m = rng.gen_range(2..=m_max);
        let n = rng.gen_range(1..=n_max);
        let e = Election::from_votes(random_votes(&mut rng, m, n))?;
        let winners = e.winners(rule).to_vec();
        let c = *winners.choose(&mut rng).expect("winners are nonempty");
        let lifted: Vec<Tournament> = e
            .votes()
            .iter()
            .map(|t| {
                let ins = t.in_neighbors(c).expect("in range");
                let gains = CandidateSet::from_ids(m, ins.iter().filter(|_| rng.gen_bool(0.5)));
                t.lift(c, &gains)
            })
            .collect();
        report.informative += 1;
        let ep = e.with_votes(lifted)?;
        if !ep.winners(rule).contains(c) {
            let mut x = witness(rule, VcCriterion::Monotonicity, e, c);
            x.election_prime = Some(ep);
            x.seed = Some(s);
            report.witness = Some(x);
            break;
        }
    }
    Ok(report)
}

/// Codes of every lift of `c` in the code-`code` tournament, identity first.
fn lifted_codes(m: usize, code: u64, c: usize) -> Vec<u64> {
    let t = Tournament::from_code(m, code);
    let ins: Vec<usize> = (0..m).filter(|&x| x != c && t.beats_idx(x, c)).collect();
    (0u32..(1 << ins.len()))
        .map(|mask| {
            ins.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).fold(code, |acc, (_, &x)| acc ^ 1 << pair_index(m, c, x))
        })
        .collect()
}

fn odometer<T>(idx: &mut [usize], options: &[Vec<T>]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < options[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Pareto optimality: if every vote prefers `a` to `b`, `b` wins only if `a` does.
pub fn check_pareto(e: &Election, rule: SolutionRule) -> Option<(CandidateId, CandidateId)> {
    let w = e.winners(rule);
    for b in w.iter() {
        for a in e.candidates() {
            if a != b && !w.contains(a) && e.votes().iter().all(|t| t.beats(a, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn audit_pareto(rule: SolutionRule, m_max: usize, n_max: usize, trials: u64, seed: u64) -> Result<VcAuditReport, PropertiesError> {
    check_params(m_max, n_max)?;
    let mut report = VcAuditReport { witness: None, exhaustive: 0, trials: 0, informative: 0 };
    let g = Grid { m_max: m_max.min(EXHAUSTIVE_VC_MAX_CANDIDATES), n_max: n_max.min(EXHAUSTIVE_VC_MAX_VOTES) };
    for m in 2..=g.m_max {
        let table = solution_masks(rule, m);
        for n in 1..=g.n_max {
            for codes in code_tuples(m, n) {
                report.exhaustive += 1;
                let w = winner_mask(&scores_of(&table, &codes, m));
                let votes: Vec<Tournament> = codes.iter().map(|&c| Tournament::from_code(m, c)).collect();
                for b in (0..m).filter(|&b| w >> b & 1 == 1) {
                    for a in (0..m).filter(|&a| a != b && w >> a & 1 == 0) {
                        if votes.iter().all(|t| t.beats_idx(a, b)) {
                            let mut x = witness(rule, VcCriterion::Pareto, election_of(m, &codes), CandidateId(b));
                            x.other = Some(CandidateId(a));
                            report.witness = Some(x);
                            return Ok(report);
                        }
                    }
                }
            }
        }
    }
    for (s, mut rng) in trial_rngs(seed, trials) {
        report.trials += 1;
        let m = rng.gen_range(2..=m_max);
        let n = rng.gen_range(1..=n_max);
        let a = rng.gen_range(0..m);
        let b = (a + rng.gen_range(1..m)) % m;
        let votes: Vec<Tournament> = random_votes(&mut rng, m, n)
            .into_iter()
            .map(|mut t| {
                if t.beats_idx(b, a) {
                    t.flip(a, b);
                }
                t
            })
            .collect();
        report.informative += 1;
        let e = Election::from_votes(votes)?;
        if let Some((a, b)) = check_pareto(&e, rule) {
            let mut x = witness(rule, VcCriterion::Pareto, e, b);
            x.other = Some(a);
            x.seed = Some(s);
            report.witness = Some(x);
            break;
        }
    }
    Ok(report)
}

/// `Some(c)` for a candidate in the mismatch when the winners of the joint
/// election differ from a nonempty intersection; `None` otherwise.
pub fn check_consistency(e1: &Election, e2: &Election, rule: SolutionRule) -> Result<Option<CandidateId>, PropertiesError> {
    let common = e1.winners(rule).intersection(&e2.winners(rule));
    if common.is_empty() {
        return Ok(None);
    }
    let joint = e1.concat(e2)?.winners(rule);
    if joint == common {
        return Ok(None);
    }
    let diff = joint.difference(&common).union(&common.difference(&joint));
    Ok(diff.first())
}

pub fn audit_consistency(rule: SolutionRule, m_max: usize, n_max: usize, trials: u64, seed: u64) -> Result<VcAuditReport, PropertiesError> {
    check_params(m_max, n_max)?;
    let mut report = VcAuditReport { witness: None, exhaustive: 0, trials: 0, informative: 0 };
    // Grid: pairs of elections with m ≤ 3 and n ≤ 2 each, plus single-vote pairs at m = 4.
    for m in 2..=m_max.min(4) {
        let table = solution_masks(rule, m);
        let nn = if m <= 3 { n_max.min(2) } else { 1 };
        let singles: Vec<Vec<u64>> = (1..=nn).flat_map(|n| code_tuples(m, n)).collect();
        for x in &singles {
            let wx = winner_mask(&scores_of(&table, x, m));
            for y in &singles {
                report.exhaustive += 1;
                let common = wx & winner_mask(&scores_of(&table, y, m));
                if common == 0 {
                    continue;
                }
                let joint: Vec<u64> = x.iter().chain(y).copied().collect();
                let wj = winner_mask(&scores_of(&table, &joint, m));
                if wj != common {
                    let c = CandidateId((wj ^ common).trailing_zeros() as usize);
                    let mut w = witness(rule, VcCriterion::Consistency, election_of(m, x), c);
                    w.election_prime = Some(election_of(m, y));
                    report.witness = Some(w);
                    return Ok(report);
                }
            }
        }
    }
    for (s, mut rng) in trial_rngs(seed, trials) {
        report.trials += 1;
        let m = rng.gen_range(2..=m_max);
        let (n1, n2) = (rng.gen_range(1..=n_max), rng.gen_range(1..=n_max));
        let e1 = Election::from_votes(random_votes(&mut rng, m, n1))?;
        let mut v2 = random_votes(&mut rng, m, n2);
        // Half the time, pad the second election with source votes for one of
        // the first election's winners until it wins there too.
        if rng.gen_bool(0.5) {
            let w1 = e1.winners(rule).to_vec();
            let target = *w1.choose(&mut rng).expect("nonempty");
            while !Election::from_votes(v2.clone())?.winners(rule).contains(target) {
                v2.push(Tournament::with_source(m, target));
            }
        }
        let e2 = Election::from_votes(v2)?;
        if !e1.winners(rule).intersection(&e2.winners(rule)).is_empty() {
            report.informative += 1;
        }
        if let Some(c) = check_consistency(&e1, &e2, rule)? {
            let mut w = witness(rule, VcCriterion::Consistency, e1, c);
            w.election_prime = Some(e2);
            w.seed = Some(s);
            report.witness = Some(w);
            break;
        }
    }
    Ok(report)
}

/// A strict-majority source that fails to win, if any.
pub fn check_majority(e: &Election, rule: SolutionRule) -> Option<CandidateId> {
    let mut counts = vec![0usize; e.num_candidates()];
    for t in e.votes() {
        if let Some(s) = t.source() {
            counts[s.0] += 1;
        }
    }
    let c = counts.iter().position(|&k| 2 * k > e.num_votes()).map(CandidateId)?;
    (!e.winners(rule).contains(c)).then_some(c)
}

pub fn audit_majority(rule: SolutionRule, m_max: usize, n_max: usize, trials: u64, seed: u64) -> Result<VcAuditReport, PropertiesError> {
    check_params(m_max, n_max)?;
    let mut report = VcAuditReport { witness: None, exhaustive: 0, trials: 0, informative: 0 };
    let g = Grid { m_max: m_max.min(EXHAUSTIVE_VC_MAX_CANDIDATES), n_max: n_max.min(EXHAUSTIVE_VC_MAX_VOTES) };
    for m in 2..=g.m_max {
        let table = solution_masks(rule, m);
        let sources: Vec<Option<usize>> = (0..Tournament::count(m)).map(|c| Tournament::from_code(m, c).source().map(|s| s.0)).collect();
        for n in 1..=g.n_max {
            for codes in code_tuples(m, n) {
                report.exhaustive += 1;
                let mut counts = vec![0usize; m];
                for &code in &codes {
                    if let Some(s) = sources[code as usize] {
                        counts[s] += 1;
                    }
                }
                if let Some(c) = counts.iter().position(|&k| 2 * k > n) {
                    if winner_mask(&scores_of(&table, &codes, m)) >> c & 1 == 0 {
                        report.witness = Some(witness(rule, VcCriterion::Majority, election_of(m, &codes), CandidateId(c)));
                        return Ok(report);
                    }
                }
            }
        }
    }
    for (s, mut rng) in trial_rngs(seed, trials) {
        report.trials += 1;
        let m = rng.gen_range(2..=m_max);
        let n = rng.gen_range(1..=n_max);
        let c = CandidateId(rng.gen_range(0..m));
        let mut votes = random_votes(&mut rng, m, n);
        for v in votes.iter_mut().take(n / 2 + 1) {
            *v = Tournament::from_fn(m, |_, _| rng.gen_bool(0.5));
            let lift = v.in_neighbors(c).expect("in range");
            *v = v.lift(c, &lift);
        }
        votes.shuffle(&mut rng);
        report.informative += 1;
        let e = Election::from_votes(votes)?;
        if let Some(c) = check_majority(&e, rule) {
            let mut w = witness(rule, VcCriterion::Majority, e, c);
            w.seed = Some(s);
            report.witness = Some(w);
            break;
        }
    }
    Ok(report)
}

/// Anonymity: swapping the first two votes and rotating the vote list
/// generate every reordering, so the grid checks those two on every election.
pub fn audit_anonymity(rule: SolutionRule, m_max: usize, n_max: usize, trials: u64, seed: u64) -> Result<VcAuditReport, PropertiesError> {
    check_params(m_max, n_max)?;
    let mut report = VcAuditReport { witness: None, exhaustive: 0, trials: 0, informative: 0 };
    let g = Grid { m_max: m_max.min(EXHAUSTIVE_VC_MAX_CANDIDATES), n_max: n_max.min(EXHAUSTIVE_VC_MAX_VOTES) };
    for m in 2..=g.m_max {
        let table = solution_masks(rule, m);
        for n in 2..=g.n_max {
            for codes in code_tuples(m, n) {
                report.exhaustive += 1;
                let w = winner_mask(&scores_of(&table, &codes, m));
                let mut swapped = codes.clone();
                swapped.swap(0, 1);
                let mut rotated = codes.clone();
                rotated.rotate_left(1);
                for other in [swapped, rotated] {
                    let w2 = winner_mask(&scores_of(&table, &other, m));
                    if w2 != w {
                        let mut x = witness(rule, VcCriterion::Anonymity, election_of(m, &codes), CandidateId((w ^ w2).trailing_zeros() as usize));
                        x.election_prime = Some(election_of(m, &other));
                        report.witness = Some(x);
                        return Ok(report);
                    }
                }
            }
        }
    }
    for (s, mut rng) in trial_rngs(seed, trials) {
        report.trials += 1;
        let m = rng.gen_range(2..=m_max);
        let n = rng.gen_range(1..=n_max);
        let e = Election::from_votes(random_votes(&mut rng, m, n))?;
        let mut votes = e.votes().to_vec();
        votes.shuffle(&mut rng);
        let ep = e.with_votes(votes)?;
        report.informative += 1;
        let (w, w2) = (e.winners(rule), ep.winners(rule));
        if w != w2 {
            let c = w.difference(&w2).union(&w2.difference(&w)).first().expect("sets differ");
            let mut x = witness(rule, VcCriterion::Anonymity, e, c);
            x.election_prime = Some(ep);
            x.seed = Some(s);
            report.witness = Some(x);
            break;
        }
    }
    Ok(report)
}

/// Neutrality: a transposition and a cycle generate every relabeling, so the
/// grid checks those two on every election.
pub fn audit_neutrality(rule: SolutionRule, m_max: usize, n_max: usize, trials: u64, seed: u64) -> Result<VcAuditReport, PropertiesError> {
    check_params(m_max, n_max)?;
    let mut report = VcAuditReport { witness: None, exhaustive: 0, trials: 0, informative: 0 };
    let g = Grid { m_max: m_max.min(EXHAUSTIVE_VC_MAX_CANDIDATES), n_max: n_max.min(EXHAUSTIVE_VC_MAX_VOTES) };
    for m in 2..=g.m_max {
        let table = solution_masks(rule, m);
        let swap: Vec<CandidateId> = (0..m).map(|i| CandidateId(if i < 2 { 1 - i } else { i })).collect();
        let cycle: Vec<CandidateId> = (0..m).map(|i| CandidateId((i + 1) % m)).collect();
        for perm in [swap, cycle] {
            let image: Vec<u64> =
                (0..Tournament::count(m)).map(|c| Tournament::from_code(m, c).relabel(&perm).expect("valid permutation").code()).collect();
            for n in 1..=g.n_max {
                for codes in code_tuples(m, n) {
                    report.exhaustive += 1;
                    let w = winner_mask(&scores_of(&table, &codes, m));
                    let moved: Vec<u64> = codes.iter().map(|&c| image[c as usize]).collect();
                    let w2 = winner_mask(&scores_of(&table, &moved, m));
                    let mapped = (0..m).filter(|&i| w >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << perm[i].0);
                    if w2 != mapped {
                        let mut x = witness(rule, VcCriterion::Neutrality, election_of(m, &codes), CandidateId((w2 ^ mapped).trailing_zeros() as usize));
                        x.relabel = Some(perm.clone());
                        report.witness = Some(x);
                        return Ok(report);
                    }
                }
            }
        }
    }
    for (s, mut rng) in trial_rngs(seed, trials) {
        report.trials += 1;
        let m = rng.gen_range(2..=m_max);
        let n = rng.gen_range(1..=n_max);
        let e = Election::from_votes(random_votes(&mut rng, m, n))?;
        let mut perm: Vec<CandidateId> = e.candidates().collect();
        perm.shuffle(&mut rng);
        let ep = e.relabel(&perm)?;
        report.informative += 1;
        let mapped = CandidateSet::from_ids(m, e.winners(rule).iter().map(|x| perm[x.0]));
        let w2 = ep.winners(rule);
        if w2 != mapped {
            let c = w2.difference(&mapped).union(&mapped.difference(&w2)).first().expect("sets differ");
            let mut x = witness(rule, VcCriterion::Neutrality, e, c);
            x.relabel = Some(perm);
            x.seed = Some(s);
            report.witness = Some(x);
            break;
        }
    }
    Ok(report)
}

/// Dispatches to the auditor for `criterion`.
pub fn audit_vc(
    criterion: VcCriterion,
    rule: SolutionRule,
    m_max: usize,
    n_max: usize,
    trials: u64,
    seed: u64,
) -> Result<VcAuditReport, PropertiesError> {
    let f = match criterion {
        VcCriterion::Monotonicity => audit_vc_monotonicity,
        VcCriterion::Pareto => audit_pareto,
        VcCriterion::Consistency => audit_consistency,
        VcCriterion::Majority => audit_majority,
        VcCriterion::Anonymity => audit_anonymity,
        VcCriterion::Neutrality => audit_neutrality,
    };
    f(rule, m_max, n_max, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: usize) -> CandidateId {
        CandidateId(i)
    }

    fn four_cycle() -> Tournament {
        Tournament::build(4, [(0, 1), (1, 2), (1, 3), (2, 0), (2, 3), (3, 0)].map(|(a, b)| (c(a), c(b)))).unwrap()
    }

    /// Counts lifts by brute force: every (T, c, T') with T' a monotone lift.
    fn lifts_brute(m: usize) -> u64 {
        let mut n = 0;
        for t in Tournament::all(m) {
            for x in t.candidates() {
                n += 1u64 << t.indegree(x);
            }
        }
        n
    }

    #[test]
    fn lift_count_formula() {
        for m in 1..=5 {
            assert_eq!(lift_count(m), lifts_brute(m), "m = {m}");
        }
    }

    #[test]
    fn ts_audits_tc_clean() {
        for crit in TsCriterion::ALL {
            let r = TsAudit::new(SolutionRule::TopCycle, crit, 5).run().unwrap();
            assert!(r.witness.is_none(), "{crit}");
            assert_eq!(r.tournaments, (1..=5).map(Tournament::count).sum::<u64>());
            assert_eq!(r.lifts, (1..=5).map(lift_count).sum::<u64>());
        }
    }

    #[test]
    fn ts_monotonicity_holds_for_all_rules() {
        for rule in SolutionRule::ALL {
            assert!(audit_ts(rule, TsCriterion::TsMonotonicity, 5).unwrap().is_none(), "{rule}");
        }
    }

    #[test]
    fn enm_fails_for_co_and_uc() {
        for rule in [SolutionRule::Copeland, SolutionRule::Uncovered] {
            let w = audit_ts(rule, TsCriterion::Enm, 5).unwrap().expect("witness");
            w.verify().unwrap();
            assert!(w.t.len() <= 5);
            let back = TsCounterexample::from_text(&w.to_text()).unwrap();
            assert_eq!(back, w);
        }
    }

    #[test]
    fn parallel_matches_serial() {
        for rule in SolutionRule::ALL {
            let serial = TsAudit::new(rule, TsCriterion::Enm, 5).run().unwrap();
            let parallel = TsAudit::new(rule, TsCriterion::Enm, 5).jobs(4).run().unwrap();
            assert_eq!(serial, parallel);
        }
    }

    #[test]
    fn exhaustive_bound() {
        assert_eq!(audit_ts(SolutionRule::TopCycle, TsCriterion::Enm, 7), Err(PropertiesError::ExhaustiveBound(7)));
        let r = TsAudit::new(SolutionRule::TopCycle, TsCriterion::Enm, 9).random(300, 1).run().unwrap();
        assert!(r.witness.is_none());
        assert_eq!(r.tournaments, 300);
    }

    #[test]
    fn random_mode_finds_copeland_enm() {
        let r = TsAudit::new(SolutionRule::Copeland, TsCriterion::Enm, 6).random(20_000, 5).run().unwrap();
        r.witness.expect("random search finds a witness").verify().unwrap();
    }

    #[test]
    fn bogus_witness_rejected() {
        let t = four_cycle();
        let w = TsCounterexample { rule: SolutionRule::TopCycle, criterion: TsCriterion::Enm, t: t.clone(), t_prime: t.clone(), c: c(3) };
        assert!(w.verify().is_err());
        assert!(build_monotonicity_counterexample(SolutionRule::TopCycle, &w).is_err());
        // Not a lift: the arc a-b is flipped and neither endpoint is c.
        let w = TsCounterexample { t_prime: t.reverse_arc(c(0), c(1)).unwrap(), ..w };
        assert!(w.verify().is_err());
    }

    #[test]
    fn lift_construction_both_branches() {
        for rule in [SolutionRule::Copeland, SolutionRule::Uncovered] {
            let w = audit_ts(rule, TsCriterion::Enm, 5).unwrap().unwrap();
            let x = build_monotonicity_counterexample(rule, &w).unwrap();
            assert_eq!(x.election.num_votes(), 3);
            x.verify().unwrap();
            if let Some(w) = audit_ts(rule, TsCriterion::ExclusiveMonotonicity, 5).unwrap() {
                let x = build_monotonicity_counterexample(rule, &w).unwrap();
                assert!(x.election.num_votes() == 1 || x.election.num_votes() == 4);
                x.verify().unwrap();
            }
        }
    }

    #[test]
    fn pareto_on_four_cycle() {
        let e = Election::from_votes(vec![four_cycle()]).unwrap();
        // CO: a beats b in the only vote, b wins and a does not.
        assert_eq!(check_pareto(&e, SolutionRule::Copeland), Some((c(0), c(1))));
        // UC: d beats a, a wins and d does not.
        assert_eq!(check_pareto(&e, SolutionRule::Uncovered), Some((c(3), c(0))));
        assert_eq!(check_pareto(&e, SolutionRule::TopCycle), None);
    }

    #[test]
    fn vc_audits() {
        assert!(audit_pareto(SolutionRule::TopCycle, 5, 4, 500, 1).unwrap().witness.is_none());
        for rule in [SolutionRule::Copeland, SolutionRule::Uncovered] {
            let w = audit_pareto(rule, 5, 4, 500, 1).unwrap().witness.expect("pareto fails");
            w.verify().unwrap();
            let m = audit_vc_monotonicity(rule, 5, 5, 2000, 2).unwrap().witness.expect("monotonicity fails");
            m.verify().unwrap();
            assert_eq!(VcCounterexample::from_text(&m.to_text()).unwrap(), m);
        }
        for rule in SolutionRule::ALL {
            for crit in [VcCriterion::Consistency, VcCriterion::Majority, VcCriterion::Anonymity, VcCriterion::Neutrality] {
                let r = audit_vc(crit, rule, 5, 4, 300, 3).unwrap();
                assert!(r.witness.is_none(), "{crit} {rule}");
                assert!(r.exhaustive > 0);
            }
        }
        assert!(audit_vc_monotonicity(SolutionRule::TopCycle, 4, 3, 300, 4).unwrap().witness.is_none());
    }

    #[test]
    fn vc_witness_text_round_trip() {
        let e = Election::from_votes(vec![four_cycle()]).unwrap();
        let w = VcCounterexample {
            rule: SolutionRule::Uncovered,
            criterion: VcCriterion::Pareto,
            election: e.clone(),
            election_prime: None,
            candidate: c(0),
            other: Some(c(3)),
            relabel: None,
            seed: Some(42),
        };
        w.verify().unwrap();
        assert_eq!(VcCounterexample::from_text(&w.to_text()).unwrap(), w);
        let n = VcCounterexample { criterion: VcCriterion::Neutrality, other: None, relabel: Some(vec![c(1), c(0), c(2), c(3)]), ..w };
        assert!(n.verify().is_err());
        assert_eq!(VcCounterexample::from_text(&n.to_text()).unwrap(), n);
    }
}
