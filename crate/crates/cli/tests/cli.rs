use std::path::{Path, PathBuf};

use tempfile::TempDir;
use ts_approval_cli::{run, RunReport};

const FOUR_CYCLE: &str = "election 4 1\na b c d\n0100\n0011\n1001\n1000\n";

fn tsa(args: &[&str]) -> RunReport {
    run(std::iter::once("tsa").chain(args.iter().copied()))
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn winners_per_rule() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "t.elect", FOUR_CYCLE);
    for (rule, want) in [("tc", "a b c d"), ("co", "b c"), ("uc", "a b c")] {
        let r = tsa(&["winners", "--rule", rule, "--election", s(&e)]);
        assert_eq!(r.exit_code, 0, "{}", r.output);
        assert_eq!(r.output.trim(), want);
        assert_eq!(r.get("winners"), Some(want));
        assert_eq!(r.rule.as_deref(), Some(rule));
    }
}

#[test]
fn single_candidate_score() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "t.elect", FOUR_CYCLE);
    let r = tsa(&["score", "--rule", "co", "--election", s(&e), "--candidate", "d"]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.output, "d 0\n");
}

#[test]
fn control_flags_and_witness() {
    let dir = TempDir::new().unwrap();
    // Two votes where a is the source; deleting either leaves a sole winner,
    // so destructive control against a needs both-deleted (not allowed), i.e. infeasible.
    let e = file(&dir, "src.elect", "election 3 2\na b c\n011\n001\n000\n011\n001\n000\n");
    let out = dir.path().join("w.txt");
    let r = tsa(&[
        "control", "--problem", "dcdv", "--rule", "tc", "--model", "unique", "--distinguished", "a", "--budget", "1",
        "--election", s(&e), "--out", s(&out),
    ]);
    assert_eq!(r.exit_code, 1, "{}", r.output);
    assert_eq!(r.get("feasible"), Some("false"));
    let v = tsa(&["verify", "--witness", s(&out)]);
    assert_eq!(v.exit_code, 0, "{}", v.output);

    let r = tsa(&[
        "control", "--problem", "dcdv", "--rule", "tc", "--model", "unique", "--distinguished", "b", "--budget", "1",
        "--election", s(&e), "--out", s(&out),
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.output);
    assert_eq!(r.get("cost"), Some("0"));
    assert_eq!(tsa(&["verify", "--witness", s(&out)]).exit_code, 0);
}

#[test]
fn unregistered_votes_only_for_add_problems() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "t.elect", FOUR_CYCLE);
    let r = tsa(&[
        "control", "--problem", "ccdv", "--rule", "co", "--model", "unique", "--distinguished", "a", "--budget", "1",
        "--election", s(&e), "--unregistered", s(&e),
    ]);
    assert_eq!(r.exit_code, 2);
    let r = tsa(&[
        "control", "--problem", "ccav", "--rule", "co", "--model", "nonunique", "--distinguished", "a", "--budget", "1",
        "--election", s(&e), "--unregistered", s(&e),
    ]);
    assert!(r.exit_code <= 1, "{}", r.output);
}

#[test]
fn audit_finds_copeland_enm_and_witness_verifies() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("enm.txt");
    let r = tsa(&["audit", "--property", "enm", "--rule", "co", "--max-candidates", "5", "--exhaustive", "--out", s(&out)]);
    assert_eq!(r.exit_code, 1, "{}", r.output);
    assert_eq!(r.get("violation"), Some("true"));
    let v = tsa(&["verify", "--witness", s(&out)]);
    assert_eq!(v.exit_code, 0, "{}", v.output);

    let text = std::fs::read_to_string(&out).unwrap();
    let forged = file(&dir, "forged.txt", &text.replacen("ts-witness enm co", "ts-witness enm tc", 1));
    assert_eq!(tsa(&["verify", "--witness", s(&forged)]).exit_code, 1);
}

#[test]
fn top_cycle_is_ts_monotone_on_small_tournaments() {
    let r = tsa(&["audit", "--property", "ts-monotonicity", "--rule", "tc", "--max-candidates", "5", "--exhaustive"]);
    assert_eq!(r.exit_code, 0, "{}", r.output);
    assert_eq!(r.get("violation"), Some("false"));
}

#[test]
fn random_audit_echoes_seed_and_is_job_independent() {
    let args = ["audit", "--property", "neutrality", "--rule", "uc", "--max-candidates", "4", "--trials", "50", "--seed", "9"];
    let one = tsa(&[&["--jobs", "1"][..], &args].concat());
    let four = tsa(&[&["--jobs", "4"][..], &args].concat());
    assert_eq!(one.exit_code, 0, "{}", one.output);
    assert_eq!(one.seed, Some(9));
    assert_eq!(one.result, four.result);
}

#[test]
fn reduce_then_solve_then_verify() {
    let dir = TempDir::new().unwrap();
    let x3c = file(&dir, "toy.x3c", "x3c 1\n1 2 3\n1 2 3\n1 2 3\n");
    let inst = dir.path().join("ccdv.txt");
    let r = tsa(&["reduce", "--from", "x3c", "--to", "ccdv", "--input", s(&x3c), "--model", "unique", "--out", s(&inst)]);
    assert_eq!(r.exit_code, 0, "{}", r.output);
    let w = dir.path().join("w.txt");
    let r = tsa(&["control", "--instance", s(&inst), "--out", s(&w)]);
    assert_eq!(r.exit_code, 0, "{}", r.output);
    assert_eq!(tsa(&["verify", "--witness", s(&w)]).exit_code, 0);
}

#[test]
fn bribery_published_tc_comparison() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "src.elect", "election 3 1\na b c\n011\n001\n000\n");
    let r = tsa(&[
        "bribery", "--problem", "dbra", "--rule", "tc", "--model", "unique", "--distinguished", "a", "--budget", "1",
        "--election", s(&e), "--published-tc",
    ]);
    assert_eq!(r.exit_code, 0, "{}", r.output);
    assert_eq!(r.get("published.agrees"), Some("true"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "t.elect", FOUR_CYCLE);
    assert_eq!(tsa(&["bogus"]).exit_code, 2);
    assert_eq!(tsa(&["winners", "--rule", "borda", "--election", s(&e)]).exit_code, 2);
    assert_eq!(tsa(&["winners", "--rule", "tc", "--election", "/nonexistent"]).exit_code, 2);
    let bad = file(&dir, "bad.elect", "election 3 1\na b c\n011\n001\n");
    assert_eq!(tsa(&["winners", "--rule", "tc", "--election", s(&bad)]).exit_code, 2);
    assert_eq!(tsa(&["audit", "--property", "enm", "--rule", "tc", "--max-candidates", "4"]).exit_code, 2);
    assert_eq!(tsa(&["--help"]).exit_code, 0);
}

#[test]
fn report_round_trips() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "t.elect", FOUR_CYCLE);
    let r = tsa(&["score", "--rule", "tc", "--election", s(&e)]);
    assert_eq!(RunReport::from_kv(&r.to_kv()).unwrap(), r);
    let odd = RunReport {
        command: "x \\ y".into(),
        rule: None,
        model: Some("unique".into()),
        seed: Some(u64::MAX),
        elapsed_us: 3,
        exit_code: 1,
        result: vec![("a=b".into(), "line\nbreak\\n".into())],
        output: "\n\\\n".into(),
    };
    assert_eq!(RunReport::from_kv(&odd.to_kv()).unwrap(), odd);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let e = file(&dir, "t.elect", FOUR_CYCLE);
    let bin = env!("CARGO_BIN_EXE_tsa");
    let ok = std::process::Command::new(bin).args(["winners", "--rule", "co", "--election", s(&e)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "b c");
    let bad = std::process::Command::new(bin).args(["winners"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
