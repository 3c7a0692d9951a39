//! Hardness gadgets and small source-problem oracles.
//!
//! The generators turn X3C instances into CCAV, CCDV and CBRA (Copeland)
//! instances, and tournament dominating set instances into DBRA (uncovered
//! set) instances. Each generator checks the structural facts the hardness argument
//! relies on before returning, so a wrong gadget fails loudly instead of
//! producing a misleading instance.
//!
//! Arcs the constructions leave open are filled canonically: the smaller
//! index beats the larger. Generation is therefore deterministic.

use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::election::{Election, ElectionError, Roster, WinnerModel};
use crate::format::{self, invalid, parse_num, Lines, ParseError};
use crate::set::{CandidateId, CandidateSet};
use crate::solutions::{uncovered_set, SolutionRule};
use crate::strategy::{
    subsets_up_to, Action, BriberyInstance, BriberyProblem, ControlInstance, ControlProblem, Reversal, MAX_CHOICES,
};
use crate::tournament::{Tournament, TournamentError};

/// Largest κ the X3C oracle accepts.
pub const X3C_ORACLE_MAX_KAPPA: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid X3C instance: {0}")]
    InvalidX3c(String),
    #[error("invalid TDS instance: {0}")]
    InvalidTds(String),
    #[error("oracle bound exceeded: {0}")]
    OracleBound(String),
    #[error("{0} (pass relaxed mode to generate it for validation only)")]
    Unsupported(String),
    #[error("generated gadget fails a structural check: {0}")]
    StructuralCheck(String),
    #[error(transparent)]
    Election(#[from] ElectionError),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

/// Whether a generator insists on the parameter range the construction assumes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GadgetMode {
    #[default]
    Strict,
    /// Small parameters for oracle validation; the backward direction of the
    /// reduction is not guaranteed here.
    Relaxed,
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), ReductionError> {
    if ok {
        Ok(())
    } else {
        Err(ReductionError::StructuralCheck(msg()))
    }
}

/// Exact cover by 3-sets over the elements `0..3κ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X3cInstance {
    pub kappa: usize,
    pub sets: Vec<[usize; 3]>,
}

impl X3cInstance {
    pub fn new(kappa: usize, sets: Vec<[usize; 3]>) -> Result<Self, ReductionError> {
        let inst = X3cInstance { kappa, sets };
        inst.validate()?;
        Ok(inst)
    }

    pub fn universe(&self) -> usize {
        3 * self.kappa
    }

    /// κ ≥ 1, 3κ sets of three distinct elements, every element in exactly three sets.
    pub fn validate(&self) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidX3c(m));
        if self.kappa == 0 {
            return bad("κ must be at least 1".into());
        }
        let u = self.universe();
        if self.sets.len() != u {
            return bad(format!("expected {u} sets, found {}", self.sets.len()));
        }
        let mut count = vec![0; u];
        for (i, s) in self.sets.iter().enumerate() {
            if s.iter().any(|&x| x >= u) || s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                return bad(format!("set {} is not a 3-subset of the universe", i + 1));
            }
            s.iter().for_each(|&x| count[x] += 1);
        }
        if let Some(x) = count.iter().position(|&c| c != 3) {
            return bad(format!("element c{} occurs in {} sets, expected 3", x + 1, count[x]));
        }
        Ok(())
    }

    /// A uniformly shuffled 3-regular instance; retries until every set has distinct elements.
    pub fn random<R: Rng + ?Sized>(kappa: usize, rng: &mut R) -> Result<Self, ReductionError> {
        if kappa == 0 {
            return Err(ReductionError::InvalidX3c("κ must be at least 1".into()));
        }
        let u = 3 * kappa;
        loop {
            let mut pool: Vec<usize> = (0..u).flat_map(|x| [x; 3]).collect();
            pool.shuffle(rng);
            let sets: Vec<[usize; 3]> = pool
                .chunks(3)
                .map(|c| {
                    let mut s = [c[0], c[1], c[2]];
                    s.sort_unstable();
                    s
                })
                .collect();
            if let Ok(inst) = X3cInstance::new(kappa, sets) {
                return Ok(inst);
            }
        }
    }

    /// Whether the sets at `indices` partition the universe.
    pub fn is_cover(&self, indices: &[usize]) -> bool {
        let mut seen = vec![false; self.universe()];
        indices.len() == self.kappa
            && indices.iter().all(|&i| {
                i < self.sets.len() && self.sets[i].iter().all(|&x| !std::mem::replace(&mut seen[x], true))
            })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("x3c {}\n", self.kappa);
        for s in &self.sets {
            out.push_str(&format!("c{} c{} c{}\n", s[0] + 1, s[1] + 1, s[2] + 1));
        }
        out
    }

    /// Elements are written `c1`..`c3κ` (a bare `1`..`3κ` is accepted too).
    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let (hn, toks) = lines.keyed("x3c")?;
        let [kappa] = toks.as_slice() else {
            return Err(invalid(hn, "expected `x3c <kappa>`"));
        };
        let kappa = parse_num(hn, kappa)?;
        let mut sets = Vec::new();
        for _ in 0..3 * kappa {
            let (n, l) = lines.next()?;
            let elems: Vec<&str> = l.split_whitespace().collect();
            if elems.len() != 3 {
                return Err(invalid(n, "a set line holds exactly three elements"));
            }
            let mut s = [0; 3];
            for (slot, tok) in s.iter_mut().zip(&elems) {
                let x = parse_num(n, tok.strip_prefix('c').unwrap_or(tok))?;
                if x == 0 {
                    return Err(invalid(n, "elements are numbered from 1"));
                }
                *slot = x - 1;
            }
            sets.push(s);
        }
        lines.finish()?;
        X3cInstance::new(kappa, sets).map_err(|e| invalid(hn, e))
    }
}

impl fmt::Display for X3cInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The lexicographically least exact cover, as set indices.
pub fn x3c_oracle(inst: &X3cInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    inst.validate()?;
    if inst.kappa > X3C_ORACLE_MAX_KAPPA {
        return Err(ReductionError::OracleBound(format!("X3C oracle handles κ ≤ {X3C_ORACLE_MAX_KAPPA}, got {}", inst.kappa)));
    }
    Ok((0..inst.sets.len()).combinations(inst.kappa).find(|c| inst.is_cover(c)))
}

/// A tournament dominating set instance with a designated non-king.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdsInstance {
    pub t: Tournament,
    pub roster: Roster,
    pub k: usize,
    pub non_king: CandidateId,
}

impl TdsInstance {
    pub fn new(t: Tournament, k: usize, non_king: CandidateId) -> Result<Self, ReductionError> {
        let roster = Roster::default_names(t.len());
        let inst = TdsInstance { t, roster, k, non_king };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::InvalidTds(m));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.roster.len() != self.t.len() {
            return bad("roster and tournament sizes differ".into());
        }
        if self.non_king.0 >= self.t.len() {
            return bad(format!("non-king {} is out of range", self.non_king));
        }
        if uncovered_set(&self.t).contains(self.non_king) {
            return bad(format!("{} is a king", self.roster.name(self.non_king)));
        }
        Ok(())
    }

    /// Vertex count the DBRA gadget needs: `(k+1)(2k+4)`.
    pub fn padded_size(&self) -> usize {
        (self.k + 1) * (2 * self.k + 4)
    }

    /// Adds vertices beaten by every original vertex until there are
    /// `(k+1)(2k+4)`. Dominating sets of the original are preserved.
    pub fn padded(&self) -> TdsInstance {
        let n = self.t.len();
        let target = self.padded_size().max(n);
        let t = Tournament::from_fn(target, |i, j| if j < n { self.t.beats_idx(i, j) } else { true });
        let mut names: Vec<String> = self.roster.names().to_vec();
        let mut next = 1;
        while names.len() < target {
            let name = format!("pad{next}");
            next += 1;
            if self.roster.id(&name).is_err() {
                names.push(name);
            }
        }
        let roster = Roster::new(names).expect("fresh names");
        TdsInstance { t, roster, k: self.k, non_king: self.non_king }
    }

    pub fn dominates(&self, d: &[CandidateId]) -> bool {
        self.t.candidates().all(|v| d.contains(&v) || d.iter().any(|&u| self.t.beats(u, v)))
    }

    /// File form: `tds <k> <non-king>` followed by a one-vote election block.
    pub fn to_text(&self) -> String {
        let mut out = format!("tds {} {}\n", self.k, self.roster.name(self.non_king));
        let e = Election::new(self.roster.clone(), vec![self.t.clone()]).expect("sizes match");
        format::write_election(&mut out, &e);
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ParseError> {
        let mut lines = Lines::new(text);
        let (hn, toks) = lines.keyed("tds")?;
        let [k, w] = toks.as_slice() else {
            return Err(invalid(hn, "expected `tds <k> <non-king>`"));
        };
        let k = parse_num(hn, k)?;
        let e = format::read_election(&mut lines)?;
        lines.finish()?;
        if e.num_votes() != 1 {
            return Err(invalid(hn, "a TDS file holds exactly one tournament"));
        }
        let non_king = format::resolve_candidate(e.roster(), w).map_err(|err| invalid(hn, err))?;
        let inst = TdsInstance { t: e.votes()[0].clone(), roster: e.roster().clone(), k, non_king };
        inst.validate().map_err(|err| invalid(hn, err))?;
        Ok(inst)
    }
}

/// The lexicographically least smallest dominating set of size at most `k`.
pub fn tds_oracle(inst: &TdsInstance) -> Result<Option<Vec<CandidateId>>, ReductionError> {
    let m = inst.t.len();
    let count = subsets_up_to(m, inst.k);
    if count > MAX_CHOICES {
        return Err(ReductionError::OracleBound(format!("{count} candidate sets exceed {MAX_CHOICES}")));
    }
    for size in 1..=inst.k.min(m) {
        if let Some(d) = (0..m).map(CandidateId).combinations(size).find(|d| inst.dominates(d)) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// `block` (listed in order) induces `inner` and beats everyone else; other arcs are canonical.
fn dominant_block(m: usize, block: &[usize], inner: &Tournament) -> Tournament {
    let pos = |x: usize| block.iter().position(|&b| b == x);
    Tournament::from_fn(m, |i, j| match (pos(i), pos(j)) {
        (Some(a), Some(b)) => inner.beats_idx(a, b),
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => true,
    })
}

/// `s` beats everyone; the rest follows `rest` on the remaining candidates in index order.
fn source_over(m: usize, s: usize, rest: &Tournament) -> Tournament {
    let idx = |x: usize| if x < s { x } else { x - 1 };
    Tournament::from_fn(m, |i, j| {
        if i == s {
            true
        } else if j == s {
            false
        } else {
            rest.beats_idx(idx(i), idx(j))
        }
    })
}

fn element_names(kappa: usize) -> Vec<String> {
    (1..=3 * kappa).map(|i| format!("c{i}")).collect()
}

fn sorted(s: &[usize; 3]) -> [usize; 3] {
    let mut s = *s;
    s.sort_unstable();
    s
}

/// CCAV gadget. Candidates `c1..c3κ`, then `p`, then `q`. One unregistered
/// vote per set, in set order, with budget `κ`.
pub fn x3c_to_ccav(inst: &X3cInstance, model: WinnerModel, rule: SolutionRule) -> Result<ControlInstance, ReductionError> {
    inst.validate()?;
    let kappa = inst.kappa;
    let u = inst.universe();
    let (p, q, m) = (u, u + 1, u + 2);
    let mut names = element_names(kappa);
    names.extend(["p".to_string(), "q".to_string()]);
    let per_element = match model {
        WinnerModel::Unique => kappa - 1,
        WinnerModel::NonUnique => kappa,
    };
    let mut votes: Vec<Tournament> = (0..u).flat_map(|x| std::iter::repeat_n(Tournament::with_source(m, CandidateId(x)), per_element)).collect();
    votes.push(Tournament::with_source(m, CandidateId(p)));
    let five = Tournament::cyclic_regular(5)?;
    let unregistered: Vec<Tournament> = inst
        .sets
        .iter()
        .map(|s| {
            let s = sorted(s);
            dominant_block(m, &[s[0], s[1], s[2], p, q], &five)
        })
        .collect();
    let election = Election::new(Roster::new(names)?, votes)?;
    for (i, (v, s)) in unregistered.iter().zip(&inst.sets).enumerate() {
        let block = CandidateSet::from_ids(m, [s[0], s[1], s[2], p, q].map(CandidateId));
        for r in SolutionRule::ALL {
            check(r.apply(v) == block, || format!("{r} of unregistered vote {i} is not its five-candidate block"))?;
        }
    }
    let scores = election.scores(rule);
    check(scores[..u].iter().all(|&s| s == per_element), || format!("element scores {:?} should all be {per_element}", &scores[..u]))?;
    check(scores[p] == 1 && scores[q] == 0, || format!("p and q score {} and {}, expected 1 and 0", scores[p], scores[q]))?;
    Ok(ControlInstance::new(ControlProblem::Ccav, rule, model, election, CandidateId(p), kappa).with_unregistered_votes(unregistered))
}

/// CCDV gadget. Candidates `c1..c3κ` then `p`; the first `3κ` votes are the
/// set votes in set order, followed by the `p`-source votes.
pub fn x3c_to_ccdv(inst: &X3cInstance, model: WinnerModel, rule: SolutionRule) -> Result<ControlInstance, ReductionError> {
    inst.validate()?;
    let u = inst.universe();
    let (p, m) = (u, u + 1);
    let mut names = element_names(inst.kappa);
    names.push("p".into());
    let triangle = Tournament::cyclic_regular(3)?;
    let mut votes: Vec<Tournament> = inst.sets.iter().map(|s| dominant_block(m, &sorted(s), &triangle)).collect();
    let p_votes = match model {
        WinnerModel::Unique => 3,
        WinnerModel::NonUnique => 2,
    };
    votes.extend(std::iter::repeat_n(Tournament::with_source(m, CandidateId(p)), p_votes));
    let election = Election::new(Roster::new(names)?, votes)?;
    for (i, s) in inst.sets.iter().enumerate() {
        let tri = CandidateSet::from_ids(m, s.map(CandidateId));
        for r in SolutionRule::ALL {
            check(r.apply(&election.votes()[i]) == tri, || format!("{r} of set vote {i} is not its triangle"))?;
        }
    }
    let scores = election.scores(rule);
    check(scores[..u].iter().all(|&s| s == 3) && scores[p] == p_votes, || {
        format!("scores {scores:?}: elements should score 3 and p {p_votes}")
    })?;
    Ok(ControlInstance::new(ControlProblem::Ccdv, rule, model, election, CandidateId(p), inst.kappa))
}

/// Candidate layout of the CBRA gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CbraLayout {
    /// `a(c_x)` is candidate `x`; `a(s_i)` is `3κ + i`; `p` is `6κ`.
    pub p: CandidateId,
    /// Per set vote: the two candidates that beat `a(s_i)`.
    pub spoilers: Vec<[CandidateId; 2]>,
}

/// CBRA gadget for Copeland. Votes: the set votes `A` (one per set, in
/// order), then `B` (`p` as source), then `C` (`κ` votes per element).
/// Strict mode requires `κ ≥ 4`.
pub fn x3c_to_cbra_co(inst: &X3cInstance, model: WinnerModel, mode: GadgetMode) -> Result<(BriberyInstance, CbraLayout), ReductionError> {
    inst.validate()?;
    let k = inst.kappa;
    if mode == GadgetMode::Strict && k < 4 {
        return Err(ReductionError::Unsupported(format!("the CBRA gadget assumes κ ≥ 4, got {k}")));
    }
    let u = inst.universe();
    let (p, m) = (2 * u, 2 * u + 1);
    let mut names = element_names(k);
    names.extend((1..=u).map(|i| format!("s{i}")));
    names.push("p".into());
    let rest_regular = Tournament::regular(m - 4)?;
    let mut votes = Vec::new();
    let mut spoilers = Vec::new();
    for (i, set) in inst.sets.iter().enumerate() {
        let s = u + i;
        let [x, y, z] = sorted(set);
        let trio = [x, y, z];
        let rest: Vec<usize> = (0..m).filter(|&c| c != s && !trio.contains(&c)).collect();
        let beat_s: Vec<usize> = rest.iter().copied().filter(|&c| c != p).take(2).collect();
        let pos = |c: usize| rest.iter().position(|&r| r == c);
        let t = Tournament::from_fn(m, |a, b| {
            let in_trio = |c: usize| trio.contains(&c);
            match (a, b) {
                _ if in_trio(a) && in_trio(b) => (a == x && b == y) || (a == y && b == z),
                _ if a == s && in_trio(b) => true,
                _ if in_trio(a) && b == s => false,
                _ if in_trio(a) => true,
                _ if in_trio(b) => false,
                _ if a == s => !beat_s.contains(&b),
                _ if b == s => beat_s.contains(&a),
                _ => rest_regular.beats_idx(pos(a).expect("rest"), pos(b).expect("rest")),
            }
        });
        votes.push(t);
        spoilers.push([CandidateId(beat_s[0]), CandidateId(beat_s[1])]);
    }
    let others = Tournament::regular(m - 1)?;
    let b_votes = match model {
        WinnerModel::NonUnique => k + 2,
        WinnerModel::Unique => k + 3,
    };
    votes.extend(std::iter::repeat_n(source_over(m, p, &others), b_votes));
    for x in 0..u {
        votes.extend(std::iter::repeat_n(source_over(m, x, &others), k));
    }
    let election = Election::new(Roster::new(names)?, votes)?;
    check_cbra(inst, &election, model, &spoilers)?;
    let bribery = BriberyInstance {
        problem: BriberyProblem::Cbra,
        rule: SolutionRule::Copeland,
        model,
        election,
        p: CandidateId(p),
        k,
    };
    Ok((bribery, CbraLayout { p: CandidateId(p), spoilers }))
}

fn check_cbra(inst: &X3cInstance, e: &Election, model: WinnerModel, spoilers: &[[CandidateId; 2]]) -> Result<(), ReductionError> {
    let k = inst.kappa;
    let u = inst.universe();
    let (p, m) = (2 * u, 2 * u + 1);
    let votes = e.votes();
    for (i, set) in inst.sets.iter().enumerate() {
        let t = &votes[i];
        let s = u + i;
        let special: Vec<usize> = vec![s, set[0], set[1], set[2]];
        for &c in &special {
            let d = t.outdegree(CandidateId(c));
            check(d == 6 * k - 2, || format!("set vote {i}: {} has Copeland score {d}, expected {}", e.roster().name(CandidateId(c)), 6 * k - 2))?;
        }
        let co = SolutionRule::Copeland.apply(t);
        check(co == CandidateSet::from_ids(m, special.iter().map(|&c| CandidateId(c))), || format!("set vote {i}: Copeland set {co:?}"))?;
        let tri = [set[0], set[1], set[2]].map(CandidateId);
        check(tri.iter().all(|&a| tri.iter().filter(|&&b| t.beats(a, b)).count() == 1), || format!("set vote {i}: elements do not form a triangle"))?;
        check(spoilers[i].iter().all(|&c| c.0 != p && t.beats(c, CandidateId(s))), || format!("set vote {i}: bad spoilers"))?;
        let (rest, _) = t.induced(&CandidateSet::from_ids(m, special.iter().map(|&c| CandidateId(c))).complement())?;
        check(rest.is_regular(), || format!("set vote {i}: remainder is not regular"))?;
    }
    let b_votes = match model {
        WinnerModel::NonUnique => k + 2,
        WinnerModel::Unique => k + 3,
    };
    let tail = &votes[u..];
    check(tail.len() == b_votes + u * k, || "wrong number of B and C votes".into())?;
    for (j, t) in tail.iter().enumerate() {
        let src = if j < b_votes { p } else { (j - b_votes) / k };
        check(t.source() == Some(CandidateId(src)), || format!("vote {} should have source {src}", u + j))?;
        let (rest, _) = t.induced(&CandidateSet::singleton(m, CandidateId(src)).complement())?;
        check(rest.is_regular(), || format!("vote {}: remainder is not regular", u + j))?;
    }
    let scores = e.scores(SolutionRule::Copeland);
    check(scores[p] == b_votes, || format!("p scores {}, expected {b_votes}", scores[p]))?;
    check(scores[..u].iter().all(|&s| s == k + 3), || format!("element scores {:?}, expected {}", &scores[..u], k + 3))?;
    check(scores[u..p].iter().all(|&s| s == 1), || "set candidates should score 1".into())?;
    Ok(())
}

/// Forward witness of the CBRA gadget: in each cover set's vote, `a(s_i)` now beats its first spoiler.
pub fn cbra_co_witness(layout: &CbraLayout, inst: &X3cInstance, cover: &[usize]) -> Action {
    let u = inst.universe();
    Action::Reversals(cover.iter().map(|&i| Reversal { vote: i, a: CandidateId(u + i), b: layout.spoilers[i][0] }).collect())
}

/// Candidate layout of the DBRA gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DbraLayout {
    /// The padded TDS instance; vertex `v` is candidate `v`.
    pub padded: TdsInstance,
    pub p: CandidateId,
    pub q: CandidateId,
    /// The blocks `A_0, ..., A_{2k+2}`; position `t` of `A_i` maps to position `t` of `A_{i+1}`.
    pub blocks: Vec<Vec<CandidateId>>,
}

/// DBRA gadget for the uncovered set. Votes: `T_1`, then the `q`-source
/// votes, then `H_0, ..., H_{2k+2}`. Strict mode requires `k ≥ 2`, since a
/// two-candidate block always has a source. Relaxed mode accepts `k = 1` and
/// places non-kings of `T` at the block sources, which keeps every rival of
/// `p` and `q` at score 2 or less.
pub fn tds_to_dbra_uc(inst: &TdsInstance, model: WinnerModel, mode: GadgetMode) -> Result<(BriberyInstance, DbraLayout), ReductionError> {
    inst.validate()?;
    let k = inst.k;
    if k == 1 && mode == GadgetMode::Strict {
        return Err(ReductionError::Unsupported("k = 1 gives blocks of two candidates, which always contain a source".into()));
    }
    let padded = inst.padded();
    let n = padded.t.len();
    let (p, q, m) = (padded.non_king.0, n, n + 1);
    let rounds = 2 * k + 3;
    let size = k + 1;
    let pool: Vec<usize> = (0..n).filter(|&v| v != p).collect();
    let lead: Vec<usize> = if k == 1 {
        let kings = uncovered_set(&padded.t);
        let lead: Vec<usize> = pool.iter().copied().filter(|&v| !kings.contains(CandidateId(v))).take(rounds).collect();
        if lead.len() < rounds {
            return Err(ReductionError::InvalidTds(format!("k = 1 needs {rounds} non-kings besides the distinguished one")));
        }
        lead
    } else {
        Vec::new()
    };
    let inner = Tournament::regular(size)?;
    let mut rest = pool.iter().copied().filter(|v| !lead.contains(v));
    let blocks: Vec<Vec<usize>> = (0..rounds)
        .map(|i| {
            let mut b: Vec<usize> = rest.by_ref().take(size - lead.len().min(1)).collect();
            if let (Some(&x), Some(s)) = (lead.get(i), inner.source()) {
                b.insert(s.0, x);
            }
            b
        })
        .collect();

    let mut names: Vec<String> = padded.roster.names().to_vec();
    let mut qname = "q".to_string();
    while names.contains(&qname) {
        qname.push('\'');
    }
    names.push(qname);

    let t1 = Tournament::from_fn(m, |i, j| j == q || (i != q && padded.t.beats_idx(i, j)));
    let q_votes = match model {
        WinnerModel::NonUnique => rounds,
        WinnerModel::Unique => rounds - 1,
    };
    let mut votes = vec![t1];
    votes.extend(std::iter::repeat_n(Tournament::with_source(m, CandidateId(q)), q_votes));
    for i in 0..rounds {
        let (a, b) = (&blocks[i], &blocks[(i + 1) % rounds]);
        let pos = |blk: &[usize], x: usize| blk.iter().position(|&y| y == x);
        votes.push(Tournament::from_fn(m, |x, y| {
            // Orientation of x against y, for x < y.
            let beats = |x: usize, y: usize| -> Option<bool> {
                if y == q {
                    return Some(x != q);
                }
                if x == q {
                    return Some(false);
                }
                match (pos(a, x), pos(a, y), pos(b, x), pos(b, y)) {
                    (Some(i), Some(j), _, _) => Some(inner.beats_idx(i, j)),
                    (_, _, Some(i), Some(j)) => Some(inner.beats_idx(i, j)),
                    (Some(i), _, _, Some(j)) => Some(i != j),
                    (_, Some(j), Some(i), _) => Some(i == j),
                    (Some(_), _, _, _) => Some(true),
                    (_, Some(_), _, _) => Some(false),
                    _ if x == p => Some(true),
                    _ if y == p => Some(false),
                    _ => None,
                }
            };
            beats(x, y).or_else(|| beats(y, x).map(|r| !r)).unwrap_or(true)
        }));
    }
    let election = Election::new(Roster::new(names)?, votes)?;
    let ids = |v: &[usize]| v.iter().map(|&x| CandidateId(x)).collect::<Vec<_>>();
    let layout = DbraLayout { padded, p: CandidateId(p), q: CandidateId(q), blocks: blocks.iter().map(|b| ids(b)).collect() };
    check_dbra(&layout, &election, model)?;
    let bribery = BriberyInstance { problem: BriberyProblem::Dbra, rule: SolutionRule::Uncovered, model, election, p: CandidateId(p), k };
    Ok((bribery, layout))
}

fn check_dbra(layout: &DbraLayout, e: &Election, model: WinnerModel) -> Result<(), ReductionError> {
    let k = layout.padded.k;
    let rounds = 2 * k + 3;
    let m = e.num_candidates();
    let (p, q) = (layout.p, layout.q);
    let votes = e.votes();
    check(votes[0].candidates().all(|c| c == q || votes[0].beats(c, q)), || "T1: q must be beaten by everyone".into())?;
    let q_votes = votes.len() - 1 - rounds;
    for (j, t) in votes[1..=q_votes].iter().enumerate() {
        check(t.source() == Some(q), || format!("vote {}: q must be the source", j + 1))?;
    }
    for (i, h) in votes[1 + q_votes..].iter().enumerate() {
        let a = &layout.blocks[i];
        let b = &layout.blocks[(i + 1) % rounds];
        let ha = Tournament::from_fn(a.len(), |x, y| h.beats(a[x], a[y]));
        let hb = Tournament::from_fn(b.len(), |x, y| h.beats(b[x], b[y]));
        check(ha == hb, || format!("H_{i}: the two blocks are not isomorphic under f_{i}"))?;
        for (s, &x) in a.iter().enumerate() {
            for (t, &y) in b.iter().enumerate() {
                check(h.beats(y, x) == (s == t), || format!("H_{i}: block arcs do not follow f_{i}"))?;
            }
        }
        let mut expected = CandidateSet::from_ids(m, a.iter().copied());
        expected.insert(p);
        if k >= 2 {
            check(ha.source().is_none(), || format!("H_{i}: block has a source"))?;
        } else {
            // The image of the block's source is a king as well.
            expected.insert(b[ha.source().expect("two-candidate block").0]);
        }
        let uc = uncovered_set(h);
        check(uc == expected, || format!("H_{i}: uncovered set {uc:?}, expected {expected:?}"))?;
    }
    let scores = e.scores(SolutionRule::Uncovered);
    let top = 2 * k + 3;
    let q_expected = match model {
        WinnerModel::NonUnique => top,
        WinnerModel::Unique => top - 1,
    };
    check(scores[p.0] == top && scores[q.0] == q_expected, || {
        format!("p and q score {} and {}, expected {top} and {q_expected}", scores[p.0], scores[q.0])
    })?;
    let worst = e.candidates().filter(|&c| c != p && c != q).map(|c| scores[c.0]).max().unwrap_or(0);
    check(worst <= 2, || format!("a rival of p and q scores {worst}"))?;
    Ok(())
}

/// Forward witness of the DBRA gadget: in `T_1`, `q` now beats every vertex of `d`.
pub fn dbra_uc_witness(layout: &DbraLayout, d: &[CandidateId]) -> Action {
    Action::Reversals(d.iter().map(|&v| Reversal { vote: 0, a: v, b: layout.q }).collect())
}
