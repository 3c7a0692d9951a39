//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run alone with `cargo test -p ts-approval --test acceptance`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ts_approval::properties::{
    audit_ts, audit_vc, build_monotonicity_counterexample, is_monotone_lift, TsAudit, TsCounterexample, TsCriterion, VcCriterion,
};
use ts_approval::reductions::{
    cbra_co_witness, dbra_uc_witness, tds_oracle, tds_to_dbra_uc, x3c_oracle, x3c_to_cbra_co, x3c_to_ccav, x3c_to_ccdv,
    GadgetMode, TdsInstance, X3cInstance,
};
use ts_approval::strategy::{
    goal_holds, solve_dbra_tc_paper, solve_dcav_fast, solve_dcdv_fast, BriberyInstance, BriberyProblem, ControlInstance,
    ControlProblem, Goal, Instance, Limits, StrategyOutcome, StrategyWitness,
};
use ts_approval::{CandidateId, CandidateSet, Election, Roster, SolutionRule, Tournament, WinnerModel};

use SolutionRule::{Copeland, TopCycle, Uncovered};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c(i: usize) -> CandidateId {
    CandidateId(i)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

// Independent solution oracles, written from the definitions.

fn oracle_co(t: &Tournament) -> BTreeSet<usize> {
    let deg: Vec<usize> = t.candidates().map(|a| t.candidates().filter(|&b| a != b && t.beats(a, b)).count()).collect();
    let best = deg.iter().copied().max().unwrap_or(0);
    (0..t.len()).filter(|&a| deg[a] == best).collect()
}

fn reaches_all(t: &Tournament, a: usize) -> bool {
    let m = t.len();
    let mut seen = vec![false; m];
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(x) = stack.pop() {
        for y in 0..m {
            if !seen[y] && t.beats(c(x), c(y)) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn oracle_tc(t: &Tournament) -> BTreeSet<usize> {
    (0..t.len()).filter(|&a| reaches_all(t, a)).collect()
}

fn oracle_uc(t: &Tournament) -> BTreeSet<usize> {
    let m = t.len();
    let covers = |b: usize, a: usize| t.beats(c(b), c(a)) && (0..m).all(|x| x == a || x == b || !t.beats(c(a), c(x)) || t.beats(c(b), c(x)));
    (0..m).filter(|&a| !(0..m).any(|b| b != a && covers(b, a))).collect()
}

fn oracle(rule: SolutionRule, t: &Tournament) -> BTreeSet<usize> {
    match rule {
        TopCycle => oracle_tc(t),
        Copeland => oracle_co(t),
        Uncovered => oracle_uc(t),
    }
}

fn ids(s: &CandidateSet) -> BTreeSet<usize> {
    s.iter().map(|c| c.0).collect()
}

fn oracle_winners(rule: SolutionRule, e: &Election) -> BTreeSet<usize> {
    let m = e.num_candidates();
    let mut score = vec![0usize; m];
    for v in e.votes() {
        for a in oracle(rule, v) {
            score[a] += 1;
        }
    }
    let best = score.iter().copied().max().unwrap_or(0);
    (0..m).filter(|&a| score[a] == best).collect()
}

fn arcs_differing(a: &Tournament, b: &Tournament) -> usize {
    let m = a.len();
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| a.beats(c(i), c(j)) != b.beats(c(i), c(j))).count()
}

fn four_cycle() -> Election {
    // a ≻ b, b ≻ c, b ≻ d, c ≻ a, c ≻ d, d ≻ a.
    let t = Tournament::from_fn(4, |i, j| matches!((i, j), (0, 1) | (1, 2) | (1, 3) | (2, 3)));
    Election::new(Roster::new(["a", "b", "c", "d"]).unwrap(), vec![t]).unwrap()
}

fn criterion_1() -> Outcome {
    let e = four_cycle();
    let names = |s: &CandidateSet| e.roster().names_of(s).join(",");
    let co = e.winners(Copeland);
    let uc = e.winners(Uncovered);
    ensure!(names(&co) == "b,c", "CO winners {}", names(&co));
    ensure!(names(&uc) == "a,b,c", "UC winners {}", names(&uc));
    ensure!(ids(&co) == oracle_winners(Copeland, &e) && ids(&uc) == oracle_winners(Uncovered, &e), "oracle disagrees");
    Ok("CO={b,c} UC={a,b,c}".into())
}

fn criterion_2() -> Outcome {
    let mut total = 0u64;
    for m in 1..=6 {
        for t in Tournament::all(m) {
            total += 1;
            let tc = ids(&TopCycle.apply(&t));
            let co = ids(&Copeland.apply(&t));
            let uc = ids(&Uncovered.apply(&t));
            ensure!(tc == oracle_tc(&t) && co == oracle_co(&t) && uc == oracle_uc(&t), "oracle mismatch at m={m} code={}", t.code());
            ensure!(co.is_subset(&tc) && uc.is_subset(&tc), "containment fails at m={m} code={}", t.code());
            ensure!(!uc.is_empty(), "empty UC at m={m} code={}", t.code());
            if let Some(w) = t.source() {
                let single = BTreeSet::from([w.0]);
                ensure!(tc == single && co == single && uc == single, "not Condorcet consistent at m={m} code={}", t.code());
            }
        }
    }
    Ok(format!("{total} labeled tournaments, m ≤ 6"))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for crit in [TsCriterion::ExclusiveMonotonicity, TsCriterion::Enm] {
        let report = TsAudit::new(TopCycle, crit, 6).jobs(jobs()).run().map_err(|e| e.to_string())?;
        ensure!(report.witness.is_none(), "TC violates {crit}: {:?}", report.witness);
        parts.push(format!("{crit}: {} lifts clean", report.lifts));
    }
    Ok(parts.join("; "))
}

fn fig_witnesses() -> Result<(TsCounterexample, TsCounterexample), String> {
    let co = audit_ts(Copeland, TsCriterion::Enm, 5).map_err(|e| e.to_string())?.ok_or("no CO ENM witness")?;
    let uc = audit_ts(Uncovered, TsCriterion::Enm, 5).map_err(|e| e.to_string())?.ok_or("no UC ENM witness")?;
    Ok((co, uc))
}

fn criterion_4() -> Outcome {
    let (co, uc) = fig_witnesses()?;
    for w in [&co, &uc] {
        w.verify().map_err(|e| e.to_string())?;
        ensure!(is_monotone_lift(&w.t, &w.t_prime, w.c), "not a lift of c");
        let (before, after) = (oracle(w.rule, &w.t), oracle(w.rule, &w.t_prime));
        ensure!(!before.contains(&w.c.0) && !after.contains(&w.c.0), "{}: c should stay out", w.rule);
        ensure!(!after.is_subset(&before), "{}: the set should gain a candidate", w.rule);
        let back = TsCounterexample::from_text(&w.to_text()).map_err(|e| e.to_string())?;
        ensure!(&back == w, "witness text does not round trip");
    }
    let (before, after) = (oracle_uc(&uc.t), oracle_uc(&uc.t_prime));
    ensure!(before.len() == 3 && after.len() == 4, "UC grows from {} to {}", before.len(), after.len());
    ensure!(before.is_subset(&after), "UC should only gain");
    ensure!(arcs_differing(&uc.t, &uc.t_prime) == 1, "UC witness differs in {} arcs", arcs_differing(&uc.t, &uc.t_prime));
    Ok(format!(
        "CO m={} {:?}→{:?}; UC m={} {:?}→{:?} by one reversal",
        co.t.len(),
        oracle_co(&co.t),
        oracle_co(&co.t_prime),
        uc.t.len(),
        before,
        after
    ))
}

fn criterion_5() -> Outcome {
    let (co, uc) = fig_witnesses()?;
    for w in [&co, &uc] {
        let vc = build_monotonicity_counterexample(w.rule, w).map_err(|e| e.to_string())?;
        let e = &vc.election;
        let e2 = vc.election_prime.as_ref().ok_or("no lifted election")?;
        let cand = vc.candidate.0;
        ensure!(oracle_winners(w.rule, e).contains(&cand), "{}: c does not win before", w.rule);
        ensure!(!oracle_winners(w.rule, e2).contains(&cand), "{}: c still wins after", w.rule);
        ensure!(e.num_votes() == e2.num_votes(), "vote counts differ");
        for (a, b) in e.votes().iter().zip(e2.votes()) {
            ensure!(is_monotone_lift(a, b, vc.candidate), "{}: a vote is not a lift of c", w.rule);
        }
    }
    let seed = 20_240_601;
    let report = audit_vc(VcCriterion::Monotonicity, TopCycle, 5, 5, 10_000, seed).map_err(|e| e.to_string())?;
    ensure!(report.witness.is_none(), "TC monotonicity violated: {:?}", report.witness);
    ensure!(report.trials >= 10_000, "only {} trials", report.trials);
    Ok(format!("CO and UC dethroned; TC clean on {} trials (seed {seed})", report.trials))
}

fn criterion_6() -> Outcome {
    let seed = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut informative = [0u64; 3];
    let mut draws = 0u64;
    while informative.iter().any(|&n| n < 10_000) {
        draws += 1;
        ensure!(draws < 2_000_000, "too few informative pairs: {informative:?}");
        let m = rng.gen_range(2..=5);
        let roster = Roster::default_names(m);
        let election = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(1..=5);
            Election::new(roster.clone(), (0..n).map(|_| Tournament::random(m, rng)).collect()).unwrap()
        };
        let (e1, e2) = (election(&mut rng), election(&mut rng));
        let joint = e1.concat(&e2).map_err(|e| e.to_string())?;
        for (i, rule) in SolutionRule::ALL.into_iter().enumerate() {
            let common: BTreeSet<usize> = oracle_winners(rule, &e1).intersection(&oracle_winners(rule, &e2)).copied().collect();
            if common.is_empty() {
                continue;
            }
            informative[i] += 1;
            let got = ids(&joint.winners(rule));
            ensure!(got == common, "{rule}: joint winners {got:?} ≠ intersection {common:?} (draw {draws})");
        }
    }
    for rule in SolutionRule::ALL {
        let report = audit_vc(VcCriterion::Consistency, rule, 5, 5, 10_000, seed).map_err(|e| e.to_string())?;
        ensure!(report.witness.is_none(), "{rule}: library audit found {:?}", report.witness);
    }
    Ok(format!("informative pairs TC/CO/UC = {informative:?} from {draws} draws (seed {seed})"))
}

fn random_election(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Election {
    Election::new(Roster::default_names(m), (0..n).map(|_| Tournament::random(m, rng)).collect()).unwrap()
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/dbra_tc")
}

fn criterion_7() -> Outcome {
    let seed = 7;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = Limits::default();
    let (mut checked, mut greedy_runs, mut greedy_agree) = (0u64, 0u64, 0u64);
    let mut archived = Vec::new();
    let mut index = String::from("trial\tmodel\tm\tn\tk\tpublished\tbrute_force\tagree\n");
    let verdict = |o: &StrategyOutcome| if o.feasible { format!("feasible:{}", o.cost) } else { "infeasible".to_string() };
    for trial in 0..1200 {
        let rule = SolutionRule::ALL[trial % 3];
        let model = WinnerModel::ALL[(trial / 3) % 2];
        let m = rng.gen_range(2..=5);
        let n = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=3);
        let p = c(rng.gen_range(0..m));
        let e = random_election(&mut rng, m, n);
        let extra: Vec<Tournament> = (0..rng.gen_range(0..=6)).map(|_| Tournament::random(m, &mut rng)).collect();

        let dcav = ControlInstance::new(ControlProblem::Dcav, rule, model, e.clone(), p, k).with_unregistered_votes(extra);
        let dcdv = ControlInstance::new(ControlProblem::Dcdv, rule, model, e.clone(), p, k);
        for (inst, fast) in [(&dcav, solve_dcav_fast(&dcav)), (&dcdv, solve_dcdv_fast(&dcdv))] {
            let fast = fast.map_err(|e| e.to_string())?;
            let brute = inst.bruteforce(&limits).map_err(|e| e.to_string())?;
            ensure!(
                (fast.feasible, fast.cost) == (brute.feasible, brute.cost),
                "trial {trial} {}: fast {:?} vs brute {:?}",
                inst.problem,
                (fast.feasible, fast.cost),
                (brute.feasible, brute.cost)
            );
            if fast.feasible {
                inst.verify(&fast).map_err(|e| format!("trial {trial}: fast witness fails: {e}"))?;
            }
            checked += 1;
        }

        let dbra = BriberyInstance { problem: BriberyProblem::Dbra, rule: TopCycle, model, election: e, p, k };
        let brute = dbra.bruteforce(&limits).map_err(|e| e.to_string())?;
        let greedy = solve_dbra_tc_paper(&dbra).map_err(|e| e.to_string())?;
        let replays = !greedy.feasible || dbra.verify(&greedy).is_ok();
        greedy_runs += 1;
        let agree = greedy.feasible == brute.feasible && replays;
        index.push_str(&format!(
            "{trial}\t{}\t{m}\t{n}\t{k}\t{}{}\t{}\t{agree}\n",
            model.tag(),
            verdict(&greedy),
            if replays { "" } else { ":no-replay" },
            verdict(&brute)
        ));
        if agree {
            greedy_agree += 1;
        } else {
            archived.push((trial, dbra, greedy, brute, replays));
        }
    }
    ensure!(checked >= 1000, "only {checked} fast-path instances");

    let dir = fixture_dir();
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|x| x == "txt") {
            std::fs::remove_file(path).map_err(|e| e.to_string())?;
        }
    }
    std::fs::write(dir.join("index.tsv"), index).map_err(|e| e.to_string())?;
    for (trial, inst, greedy, brute, replays) in &archived {
        let header = format!(
            "# seed {seed} trial {trial}\n# published algorithm: {}{}\n# brute force (authoritative): {}\n",
            if greedy.feasible { "feasible" } else { "infeasible" },
            if greedy.feasible && !replays { ", witness does not replay" } else { "" },
            if brute.feasible { format!("feasible at cost {}", brute.cost) } else { "infeasible".into() },
        );
        let text = StrategyWitness { instance: Instance::Bribery(inst.clone()), outcome: brute.clone() }.to_text();
        std::fs::write(dir.join(format!("trial_{trial:04}.txt")), header + &text).map_err(|e| e.to_string())?;
    }
    Ok(format!(
        "{checked} DCAV/DCDV instances agree; DBRA-TC published algorithm agrees on {greedy_agree}/{greedy_runs} ({:.1}%), {} archived",
        100.0 * greedy_agree as f64 / greedy_runs as f64,
        archived.len()
    ))
}

fn toy() -> X3cInstance {
    X3cInstance::new(1, vec![[0, 1, 2]; 3]).unwrap()
}

fn yes2() -> X3cInstance {
    X3cInstance::new(2, vec![[0, 1, 2], [3, 4, 5], [0, 1, 3], [2, 4, 5], [0, 1, 4], [2, 3, 5]]).unwrap()
}

fn no2() -> X3cInstance {
    X3cInstance::new(2, vec![[0, 1, 4], [0, 2, 5], [0, 3, 4], [1, 2, 3], [1, 3, 5], [2, 4, 5]]).unwrap()
}

fn criterion_8() -> Outcome {
    let mut cases = vec![toy(), yes2(), no2()];
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    cases.extend((0..6).map(|_| X3cInstance::random(2, &mut rng).unwrap()));
    let (mut yes, mut no) = (0, 0);
    for x in &cases {
        let has_cover = x3c_oracle(x).map_err(|e| e.to_string())?.is_some();
        if has_cover {
            yes += 1;
        } else {
            no += 1;
        }
        let u = x.universe();
        for rule in SolutionRule::ALL {
            for model in WinnerModel::ALL {
                let av = x3c_to_ccav(x, model, rule).map_err(|e| e.to_string())?;
                let s = av.election.scores(rule);
                let per = if model == WinnerModel::Unique { x.kappa - 1 } else { x.kappa };
                ensure!(s[..u].iter().all(|&v| v == per) && s[u] == 1 && s[u + 1] == 0, "CCAV scores {s:?}");
                for v in &av.unregistered_votes {
                    ensure!(oracle(rule, v).len() == 5, "an unregistered vote does not select five candidates");
                }
                let dv = x3c_to_ccdv(x, model, rule).map_err(|e| e.to_string())?;
                let s = dv.election.scores(rule);
                let pv = if model == WinnerModel::Unique { 3 } else { 2 };
                ensure!(s[..u].iter().all(|&v| v == 3) && s[u] == pv, "CCDV scores {s:?}");
                for inst in [&av, &dv] {
                    let out = inst.bruteforce(&Limits::default()).map_err(|e| e.to_string())?;
                    ensure!(
                        out.feasible == has_cover,
                        "{} {rule} {model:?} κ={}: feasible={} but cover={has_cover}",
                        inst.problem,
                        x.kappa,
                        out.feasible
                    );
                    if out.feasible {
                        inst.verify(&out).map_err(|e| e.to_string())?;
                    }
                }
            }
        }
    }
    ensure!(no > 0, "no no-instance in the corpus");
    Ok(format!("{yes} yes and {no} no X3C instances (κ ≤ 2), 3 rules × 2 models × 2 problems each"))
}

fn tds_k1_cases() -> Vec<TdsInstance> {
    let mut cases = vec![TdsInstance::new(Tournament::transitive(5), 1, c(4)).unwrap()];
    // A 3-cycle above a beaten vertex: no single vertex dominates.
    let t = Tournament::from_fn(4, |i, j| matches!((i, j), (0, 1) | (1, 2)) || j == 3);
    cases.push(TdsInstance::new(t, 1, c(3)).unwrap());
    // A random five-vertex top with a sink.
    let r = Tournament::random(5, &mut ChaCha8Rng::seed_from_u64(9));
    let t = Tournament::from_fn(6, |i, j| j == 5 || r.beats(c(i), c(j)));
    cases.push(TdsInstance::new(t, 1, c(5)).unwrap());
    cases
}

fn criterion_9() -> Outcome {
    let k = 1;
    let (mut with_d, mut without_d) = (0, 0);
    for tds in tds_k1_cases() {
        for model in WinnerModel::ALL {
            let (b, layout) = tds_to_dbra_uc(&tds, model, GadgetMode::Relaxed).map_err(|e| e.to_string())?;
            let s = b.election.scores(Uncovered);
            let (p, q) = (layout.p.0, layout.q.0);
            let q_want = if model == WinnerModel::Unique { 2 * k + 2 } else { 2 * k + 3 };
            ensure!(s[p] == 2 * k + 3, "score(p) = {}", s[p]);
            ensure!(s[q] == q_want, "score(q) = {} under {model:?}", s[q]);
            let rival = (0..s.len()).filter(|&x| x != p && x != q).map(|x| s[x]).max().unwrap_or(0);
            ensure!(rival <= 2, "a rival scores {rival}");
            match tds_oracle(&layout.padded).map_err(|e| e.to_string())? {
                Some(d) => {
                    with_d += 1;
                    let after = b.apply(&dbra_uc_witness(&layout, &d)).map_err(|e| e.to_string())?;
                    ensure!(goal_holds(Goal::Destructive, Uncovered, model, &after, b.p).map_err(|e| e.to_string())?, "witness fails");
                    let out = b.bruteforce(&Limits::default()).map_err(|e| e.to_string())?;
                    ensure!(out.feasible && out.cost <= k, "brute force: {:?}", (out.feasible, out.cost));
                }
                None => without_d += 1,
            }
        }
    }
    ensure!(with_d > 0, "no case had a dominating set");
    Ok(format!("k=1: {with_d} gadgets with a dominating set replay, {without_d} without"))
}

fn x3c_kappa4() -> X3cInstance {
    X3cInstance::new(
        4,
        vec![
            [0, 1, 2],
            [3, 4, 5],
            [6, 7, 8],
            [9, 10, 11],
            [0, 3, 6],
            [1, 4, 9],
            [2, 7, 10],
            [5, 8, 11],
            [0, 4, 11],
            [1, 5, 6],
            [2, 3, 8],
            [7, 9, 10],
        ],
    )
    .unwrap()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let cases = [x3c_kappa4(), X3cInstance::random(4, &mut rng).unwrap(), X3cInstance::random(4, &mut rng).unwrap()];
    let mut replayed = 0;
    for x in &cases {
        let k = x.kappa;
        let u = x.universe();
        for model in WinnerModel::ALL {
            let (b, layout) = x3c_to_cbra_co(x, model, GadgetMode::Strict).map_err(|e| e.to_string())?;
            let e = &b.election;
            let m = e.num_candidates();
            for (i, set) in x.sets.iter().enumerate() {
                let v = &e.votes()[i];
                let four: BTreeSet<usize> = set.iter().copied().chain([u + i]).collect();
                for a in 0..m {
                    let deg = v.outdegree(c(a));
                    if four.contains(&a) {
                        ensure!(deg == 6 * k - 2, "A-vote {i}: candidate {a} has outdegree {deg}");
                    } else {
                        ensure!(deg < 6 * k - 2, "A-vote {i}: candidate {a} ties the top");
                    }
                }
                ensure!(oracle_co(v) == four, "A-vote {i}: CO set is not its four candidates");
                let rest = CandidateSet::from_ids(m, (0..m).filter(|a| !four.contains(a)).map(c));
                ensure!(v.induced(&rest).map_err(|e| e.to_string())?.0.is_regular(), "A-vote {i}: remainder not regular");
            }
            for (j, v) in e.votes().iter().enumerate().skip(x.sets.len()) {
                let s = v.source().ok_or(format!("B/C vote {j} has no source"))?;
                let rest = CandidateSet::singleton(m, s).complement();
                ensure!(v.induced(&rest).map_err(|e| e.to_string())?.0.is_regular(), "B/C vote {j}: remainder not regular");
            }
            let s = e.scores(Copeland);
            let p_want = if model == WinnerModel::Unique { k + 3 } else { k + 2 };
            ensure!(s[layout.p.0] == p_want, "score(p) = {} under {model:?}", s[layout.p.0]);
            ensure!(s[..u].iter().all(|&v| v == k + 3), "element scores {:?}", &s[..u]);
            let cover = x3c_oracle(x).map_err(|e| e.to_string())?;
            if let Some(cover) = cover {
                b.verify(&StrategyOutcome::with(cbra_co_witness(&layout, x, &cover))).map_err(|e| e.to_string())?;
                replayed += 1;
            }
        }
    }
    Ok(format!("three κ=4 instances: A-vote tops at 6κ−2, remainders regular, p = κ+2 (κ+3 unique), elements κ+3; {replayed} cover witnesses replay"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 Pareto fixture winners", criterion_1, Duration::from_secs(1)),
        ("2 exhaustive containment", criterion_2, Duration::from_secs(30)),
        ("3 TC monotonicity certification", criterion_3, Duration::from_secs(600)),
        ("4 ENM witnesses", criterion_4, Duration::from_secs(60)),
        ("5 monotonicity pipeline", criterion_5, Duration::from_secs(600)),
        ("6 consistency", criterion_6, Duration::from_secs(600)),
        ("7 fast paths vs oracle", criterion_7, Duration::from_secs(600)),
        ("8 X3C control gadgets", criterion_8, Duration::from_secs(600)),
        ("9 DBRA-UC gadget", criterion_9, Duration::from_secs(600)),
        ("10 CBRA-CO gadget", criterion_10, Duration::from_secs(600)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|w| name.contains(w.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > budget => Err(format!("took {took:.2?}, budget {budget:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS  criterion {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name} ({took:.2?}): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
