//! The `tsa` command line.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns a
//! [`RunReport`]. Exit codes: 0 on success, 1 when a search finds the instance
//! infeasible, a violation, or an invalid witness, and 2 on usage or parse errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ts_approval::format::{parse_election, resolve_candidate};
use ts_approval::properties::{audit_vc, TsAudit, TsCounterexample, TsCriterion, VcCounterexample, VcCriterion};
use ts_approval::reductions::{tds_to_dbra_uc, x3c_to_cbra_co, x3c_to_ccav, x3c_to_ccdv, GadgetMode, TdsInstance, X3cInstance};
use ts_approval::strategy::{
    solve_dbra_tc_paper, Action, BriberyInstance, BriberyProblem, ControlInstance, ControlProblem, Instance, Limits,
    StrategyOutcome, StrategyWitness,
};
use ts_approval::{CandidateSet, Election, Roster, SolutionRule, WinnerModel};

#[derive(Parser, Debug)]
#[command(name = "tsa", version, about = "Approval voting over tournament votes")]
struct Cli {
    /// Print the flat key=value report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for searches. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the winners of an election.
    Winners(WinnersArgs),
    /// Print approval scores.
    Score(ScoreArgs),
    /// Solve a control problem exactly.
    Control(ControlArgs),
    /// Solve a bribery problem exactly.
    Bribery(BriberyArgs),
    /// Search for an axiom violation.
    Audit(AuditArgs),
    /// Generate a hardness gadget instance.
    Reduce(ReduceArgs),
    /// Replay a witness file.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct WinnersArgs {
    #[arg(long)]
    rule: SolutionRule,
    #[arg(long)]
    election: PathBuf,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[arg(long)]
    rule: SolutionRule,
    #[arg(long)]
    election: PathBuf,
    /// Only this candidate (a name or `#index`).
    #[arg(long)]
    candidate: Option<String>,
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Read the whole instance from a file instead of the flags below.
    #[arg(long, conflicts_with_all = ["problem", "rule", "model", "distinguished", "budget", "election"])]
    instance: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    rule: Option<SolutionRule>,
    #[arg(long)]
    model: Option<WinnerModel>,
    /// The distinguished candidate (a name or `#index`).
    #[arg(long)]
    distinguished: Option<String>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    election: Option<PathBuf>,
    /// Write the instance and outcome here, for `verify`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Lift the brute-force size limits.
    #[arg(long)]
    unbounded: bool,
}

#[derive(Args, Debug)]
struct ControlArgs {
    #[command(flatten)]
    common: ProblemArgs,
    /// Election file holding the unregistered votes (add-votes problems).
    #[arg(long, conflicts_with = "instance")]
    unregistered: Option<PathBuf>,
    /// Comma-separated unregistered candidates (add-candidates problems).
    #[arg(long, value_delimiter = ',', conflicts_with = "instance")]
    unregistered_candidates: Vec<String>,
}

#[derive(Args, Debug)]
struct BriberyArgs {
    #[command(flatten)]
    common: ProblemArgs,
    /// Also run the published DBRA algorithm for the top cycle and compare.
    #[arg(long)]
    published_tc: bool,
}

#[derive(Args, Debug)]
struct AuditArgs {
    /// exclusive-monotonicity, enm, ts-monotonicity, monotonicity, pareto,
    /// consistency, majority, anonymity or neutrality.
    #[arg(long)]
    property: String,
    #[arg(long)]
    rule: SolutionRule,
    #[arg(long)]
    max_candidates: usize,
    /// Votes per election for the election axioms.
    #[arg(long, default_value_t = 3)]
    max_votes: usize,
    #[arg(long, conflicts_with_all = ["trials", "seed"])]
    exhaustive: bool,
    #[arg(long, requires = "seed")]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the witness here instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// x3c or tds.
    #[arg(long)]
    from: String,
    /// ccav, ccdv, cbra-co (from x3c) or dbra-uc (from tds).
    #[arg(long)]
    to: String,
    #[arg(long, conflicts_with = "random_kappa")]
    input: Option<PathBuf>,
    /// Generate a random X3C instance with this κ instead of reading one.
    #[arg(long, requires = "seed")]
    random_kappa: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    model: WinnerModel,
    /// Rule for the control gadgets.
    #[arg(long, default_value = "tc")]
    rule: SolutionRule,
    /// Allow parameters below the range the construction assumes.
    #[arg(long)]
    relaxed: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    witness: PathBuf,
    /// Lift the brute-force size limits when re-solving infeasible claims.
    #[arg(long)]
    unbounded: bool,
}

/// Outcome of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunReport {
    /// The arguments, space-separated, without the program name.
    pub command: String,
    pub rule: Option<String>,
    pub model: Option<String>,
    pub seed: Option<u64>,
    pub elapsed_us: u64,
    pub exit_code: i32,
    /// Command-specific results, in order.
    pub result: Vec<(String, String)>,
    /// Human-readable output (the error message when `exit_code` is 2).
    pub output: String,
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('\n', "\\n").replace('=', "\\=")
}

/// Splits at the first `=` that is not escaped.
fn split_kv(line: &str) -> Option<(&str, &str)> {
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'=' => return Some((&line[..i], &line[i + 1..])),
            _ => i += 1,
        }
    }
    None
}

fn unescape(s: &str) -> Result<String, String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(ch) = chars.next() {
        if ch != '\\' {
            out.push(ch);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            Some('=') => out.push('='),
            other => return Err(format!("bad escape `\\{}`", other.map(String::from).unwrap_or_default())),
        }
    }
    Ok(out)
}

impl RunReport {
    /// One `key=value` line per field; newlines, backslashes and `=` are escaped.
    pub fn to_kv(&self) -> String {
        let opt = |o: &Option<String>| o.as_deref().map(escape).unwrap_or_default();
        let mut out = String::new();
        let _ = writeln!(out, "command={}", escape(&self.command));
        let _ = writeln!(out, "rule={}", opt(&self.rule));
        let _ = writeln!(out, "model={}", opt(&self.model));
        let _ = writeln!(out, "seed={}", self.seed.map(|s| s.to_string()).unwrap_or_default());
        let _ = writeln!(out, "elapsed_us={}", self.elapsed_us);
        let _ = writeln!(out, "exit={}", self.exit_code);
        for (k, v) in &self.result {
            let _ = writeln!(out, "result.{}={}", escape(k), escape(v));
        }
        let _ = writeln!(out, "output={}", escape(&self.output));
        out
    }

    pub fn from_kv(text: &str) -> Result<Self, String> {
        let mut r = RunReport::default();
        let opt = |v: String| if v.is_empty() { None } else { Some(v) };
        for line in text.lines() {
            let (key, value) = split_kv(line).ok_or_else(|| format!("missing `=` in `{line}`"))?;
            let value = unescape(value)?;
            match key {
                "command" => r.command = value,
                "rule" => r.rule = opt(value),
                "model" => r.model = opt(value),
                "seed" => r.seed = opt(value).map(|v| v.parse().map_err(|_| format!("bad seed `{v}`"))).transpose()?,
                "elapsed_us" => r.elapsed_us = value.parse().map_err(|_| format!("bad elapsed_us `{value}`"))?,
                "exit" => r.exit_code = value.parse().map_err(|_| format!("bad exit `{value}`"))?,
                "output" => r.output = value,
                _ => match key.strip_prefix("result.") {
                    Some(k) => r.result.push((unescape(k)?, value)),
                    None => return Err(format!("unknown key `{key}`")),
                },
            }
        }
        Ok(r)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.result.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// What a command produced before timing and echo are attached.
#[derive(Default)]
struct Done {
    exit: i32,
    rule: Option<SolutionRule>,
    model: Option<WinnerModel>,
    seed: Option<u64>,
    result: Vec<(String, String)>,
    output: String,
}

impl Done {
    fn put(&mut self, key: &str, value: impl ToString) {
        self.result.push((key.to_string(), value.to_string()));
    }

    fn line(&mut self, text: impl AsRef<str>) {
        self.output.push_str(text.as_ref());
        self.output.push('\n');
    }
}

type CliResult = Result<Done, String>;

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let mut report = RunReport { command, ..RunReport::default() };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            report.exit_code = if help { 0 } else { 2 };
            report.output = e.to_string();
            return report;
        }
    };
    let outcome = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(pool) => pool.install(|| execute(&cli.command, cli.jobs.max(1))),
        Err(e) => Err(format!("cannot start {} worker threads: {e}", cli.jobs)),
    };
    report.elapsed_us = start.elapsed().as_micros() as u64;
    match outcome {
        Ok(done) => {
            report.exit_code = done.exit;
            report.rule = done.rule.map(|r| r.tag().to_string());
            report.model = done.model.map(|m| m.tag().to_string());
            report.seed = done.seed;
            report.result = done.result;
            report.output = done.output;
        }
        Err(msg) => {
            report.exit_code = 2;
            report.output = format!("error: {msg}\n");
        }
    }
    report
}

/// Whether the command line asked for the key=value form.
pub fn wants_kv<T: AsRef<std::ffi::OsStr>>(argv: &[T]) -> bool {
    argv.iter().skip(1).any(|a| a.as_ref() == "--json")
}

fn execute(command: &Command, jobs: usize) -> CliResult {
    match command {
        Command::Winners(a) => winners(a),
        Command::Score(a) => score(a),
        Command::Control(a) => control(a),
        Command::Bribery(a) => bribery(a),
        Command::Audit(a) => audit(a, jobs),
        Command::Reduce(a) => reduce(a),
        Command::Verify(a) => verify(a),
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_election(path: &Path) -> Result<Election, String> {
    parse_election(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn winners(a: &WinnersArgs) -> CliResult {
    let e = load_election(&a.election)?;
    let w = e.winners(a.rule);
    let names = e.roster().names_of(&w).join(" ");
    let mut done = Done { rule: Some(a.rule), ..Done::default() };
    done.put("winners", &names);
    done.line(names);
    Ok(done)
}

fn score(a: &ScoreArgs) -> CliResult {
    let e = load_election(&a.election)?;
    let scores = e.scores(a.rule);
    let mut done = Done { rule: Some(a.rule), ..Done::default() };
    let only = a.candidate.as_deref().map(|c| resolve_candidate(e.roster(), c)).transpose().map_err(|e| e.to_string())?;
    for c in e.candidates().filter(|&c| only.is_none_or(|o| o == c)) {
        let name = e.roster().name(c);
        done.put(&format!("score.{name}"), scores[c.0]);
        done.line(format!("{name} {}", scores[c.0]));
    }
    Ok(done)
}

/// The common fields of a flag-built instance.
struct Basics {
    rule: SolutionRule,
    model: WinnerModel,
    election: Election,
    p: ts_approval::CandidateId,
    k: usize,
}

fn basics(c: &ProblemArgs) -> Result<Basics, String> {
    let missing = |flag: &str| format!("--{flag} is required unless --instance is given");
    let election = load_election(c.election.as_deref().ok_or_else(|| missing("election"))?)?;
    let p = c.distinguished.as_deref().ok_or_else(|| missing("distinguished"))?;
    let p = resolve_candidate(election.roster(), p).map_err(|e| e.to_string())?;
    Ok(Basics {
        rule: c.rule.ok_or_else(|| missing("rule"))?,
        model: c.model.ok_or_else(|| missing("model"))?,
        k: c.budget.ok_or_else(|| missing("budget"))?,
        election,
        p,
    })
}

fn limits(unbounded: bool) -> Limits {
    if unbounded {
        Limits::unbounded()
    } else {
        Limits::default()
    }
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    Instance::from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn control(a: &ControlArgs) -> CliResult {
    let c = &a.common;
    let inst = match &c.instance {
        Some(path) => match load_instance(path)? {
            Instance::Control(ci) => ci,
            Instance::Bribery(_) => return Err("this is a bribery instance; use `bribery`".into()),
        },
        None => {
            let problem: ControlProblem = c.problem.as_deref().ok_or("--problem is required unless --instance is given")?.parse()?;
            let b = basics(c)?;
            let m = b.election.num_candidates();
            let mut inst = ControlInstance::new(problem, b.rule, b.model, b.election, b.p, b.k);
            if let Some(path) = &a.unregistered {
                if problem.operation() != ts_approval::strategy::Operation::AddVotes {
                    return Err(format!("--unregistered only applies to add-votes problems, not {problem}"));
                }
                let u = load_election(path)?;
                if u.roster() != inst.election.roster() {
                    return Err("the unregistered votes use a different roster".into());
                }
                inst.unregistered_votes = u.votes().to_vec();
            }
            if !a.unregistered_candidates.is_empty() {
                if problem.operation() != ts_approval::strategy::Operation::AddCandidates {
                    return Err(format!("--unregistered-candidates only applies to add-candidates problems, not {problem}"));
                }
                let mut d = CandidateSet::empty(m);
                for name in &a.unregistered_candidates {
                    d.insert(resolve_candidate(inst.election.roster(), name).map_err(|e| e.to_string())?);
                }
                inst.unregistered_candidates = d;
            }
            inst
        }
    };
    inst.validate().map_err(|e| e.to_string())?;
    let outcome = ts_approval::strategy::solve_control_with(&inst, &limits(c.unbounded)).map_err(|e| e.to_string())?;
    let mut done = Done { rule: Some(inst.rule), model: Some(inst.model), ..Done::default() };
    done.put("problem", inst.problem);
    finish_strategy(&mut done, Instance::Control(inst), outcome, c.out.as_deref())?;
    Ok(done)
}

fn bribery(a: &BriberyArgs) -> CliResult {
    let c = &a.common;
    let inst = match &c.instance {
        Some(path) => match load_instance(path)? {
            Instance::Bribery(bi) => bi,
            Instance::Control(_) => return Err("this is a control instance; use `control`".into()),
        },
        None => {
            let problem: BriberyProblem = c.problem.as_deref().ok_or("--problem is required unless --instance is given")?.parse()?;
            let b = basics(c)?;
            BriberyInstance { problem, rule: b.rule, model: b.model, election: b.election, p: b.p, k: b.k }
        }
    };
    inst.validate().map_err(|e| e.to_string())?;
    if a.published_tc && (inst.problem != BriberyProblem::Dbra || inst.rule != SolutionRule::TopCycle) {
        return Err("--published-tc needs --problem dbra --rule tc".into());
    }
    let outcome = inst.bruteforce(&limits(c.unbounded)).map_err(|e| e.to_string())?;
    let mut done = Done { rule: Some(inst.rule), model: Some(inst.model), ..Done::default() };
    done.put("problem", inst.problem);
    if a.published_tc {
        let greedy = solve_dbra_tc_paper(&inst).map_err(|e| e.to_string())?;
        let replays = greedy.feasible && inst.verify(&greedy).is_ok();
        done.put("published.feasible", greedy.feasible);
        done.put("published.witness_replays", replays);
        done.put("published.agrees", greedy.feasible == outcome.feasible);
        done.line(format!(
            "published algorithm: {} (witness {}), {} with the brute force",
            if greedy.feasible { "feasible" } else { "infeasible" },
            if !greedy.feasible { "n/a" } else if replays { "replays" } else { "does not replay" },
            if greedy.feasible == outcome.feasible { "agrees" } else { "disagrees" },
        ));
    }
    finish_strategy(&mut done, Instance::Bribery(inst), outcome, c.out.as_deref())?;
    Ok(done)
}

fn describe(action: &Action, roster: &Roster) -> String {
    let names = |cs: &[ts_approval::CandidateId]| cs.iter().map(|&c| roster.name(c).to_string()).collect::<Vec<_>>().join(" ");
    let nums = |vs: &[usize]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let body = match action {
        Action::AddVotes(v) | Action::DeleteVotes(v) => nums(v),
        Action::AddCandidates(c) | Action::DeleteCandidates(c) => names(c),
        Action::Reversals(rs) => {
            rs.iter().map(|r| format!("{}:{}-{}", r.vote, roster.name(r.a), roster.name(r.b))).collect::<Vec<_>>().join(" ")
        }
    };
    format!("{} {body}", action.kind()).trim_end().to_string()
}

fn finish_strategy(done: &mut Done, instance: Instance, outcome: StrategyOutcome, out: Option<&Path>) -> Result<(), String> {
    done.put("feasible", outcome.feasible);
    if outcome.feasible {
        let action = describe(outcome.action.as_ref().expect("feasible outcomes carry an action"), instance.election().roster());
        done.put("cost", outcome.cost);
        done.put("action", &action);
        done.line(format!("feasible with cost {}", outcome.cost));
        done.line(format!("action: {action}"));
    } else {
        done.line("infeasible");
        done.exit = 1;
    }
    if let Some(path) = out {
        write(path, &StrategyWitness { instance, outcome }.to_text())?;
        done.put("witness", path.display());
        done.line(format!("witness written to {}", path.display()));
    }
    Ok(())
}

enum Property {
    Ts(TsCriterion),
    Vc(VcCriterion),
}

fn property(s: &str) -> Result<Property, String> {
    if let Ok(c) = s.parse::<TsCriterion>() {
        return Ok(Property::Ts(c));
    }
    s.parse::<VcCriterion>().map(Property::Vc).map_err(|_| {
        format!("unknown property `{s}` (expected exclusive-monotonicity, enm, ts-monotonicity, monotonicity, pareto, consistency, majority, anonymity or neutrality)")
    })
}

fn audit(a: &AuditArgs, jobs: usize) -> CliResult {
    let prop = property(&a.property)?;
    let random = match (a.exhaustive, a.trials, a.seed) {
        (true, _, _) => None,
        (false, Some(t), Some(s)) => Some((t, s)),
        _ => return Err("pass --exhaustive, or --trials with --seed".into()),
    };
    let mut done = Done { rule: Some(a.rule), seed: random.map(|(_, s)| s), ..Done::default() };
    done.put("property", &a.property);
    let text = match prop {
        Property::Ts(crit) => {
            let mut audit = TsAudit::new(a.rule, crit, a.max_candidates).jobs(jobs);
            if let Some((t, s)) = random {
                audit = audit.random(t, s);
            }
            let report = audit.run().map_err(|e| e.to_string())?;
            done.put("tournaments", report.tournaments);
            done.put("lifts", report.lifts);
            done.line(format!("examined {} tournaments and {} lifts", report.tournaments, report.lifts));
            report.witness.map(|w| w.to_text())
        }
        Property::Vc(crit) => {
            let (trials, seed) = random.unwrap_or((0, 0));
            let report = audit_vc(crit, a.rule, a.max_candidates, a.max_votes, trials, seed).map_err(|e| e.to_string())?;
            done.put("exhaustive", report.exhaustive);
            done.put("trials", report.trials);
            done.put("informative", report.informative);
            done.line(format!(
                "examined {} grid cases and {} random trials ({} informative)",
                report.exhaustive, report.trials, report.informative
            ));
            report.witness.map(|w| w.to_text())
        }
    };
    done.put("violation", text.is_some());
    match text {
        None => done.line("no violation found"),
        Some(text) => {
            done.exit = 1;
            done.line("violation found");
            match &a.out {
                Some(path) => {
                    write(path, &text)?;
                    done.put("witness", path.display());
                    done.line(format!("witness written to {}", path.display()));
                }
                None => done.output.push_str(&text),
            }
        }
    }
    Ok(done)
}

fn reduce(a: &ReduceArgs) -> CliResult {
    let mode = if a.relaxed { GadgetMode::Relaxed } else { GadgetMode::Strict };
    let mut done = Done { model: Some(a.model), seed: a.seed, ..Done::default() };
    let err = |e: ts_approval::reductions::ReductionError| e.to_string();
    let instance = match a.from.as_str() {
        "x3c" => {
            let x3c = match (&a.input, a.random_kappa) {
                (Some(path), None) => X3cInstance::from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?,
                (None, Some(kappa)) => {
                    use rand::SeedableRng;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed.expect("clap requires --seed"));
                    X3cInstance::random(kappa, &mut rng).map_err(err)?
                }
                _ => return Err("pass exactly one of --input and --random-kappa".into()),
            };
            done.put("kappa", x3c.kappa);
            match a.to.as_str() {
                "ccav" => Instance::Control(x3c_to_ccav(&x3c, a.model, a.rule).map_err(err)?),
                "ccdv" => Instance::Control(x3c_to_ccdv(&x3c, a.model, a.rule).map_err(err)?),
                "cbra-co" => Instance::Bribery(x3c_to_cbra_co(&x3c, a.model, mode).map_err(err)?.0),
                other => return Err(format!("cannot reduce x3c to `{other}` (expected ccav, ccdv or cbra-co)")),
            }
        }
        "tds" => {
            if a.to != "dbra-uc" {
                return Err(format!("cannot reduce tds to `{}` (expected dbra-uc)", a.to));
            }
            let path = a.input.as_ref().ok_or("--input is required for tds")?;
            let tds = TdsInstance::from_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
            done.put("k", tds.k);
            Instance::Bribery(tds_to_dbra_uc(&tds, a.model, mode).map_err(err)?.0)
        }
        other => return Err(format!("unknown source problem `{other}` (expected x3c or tds)")),
    };
    done.rule = Some(instance.rule());
    done.put("problem", instance.problem_tag());
    done.put("candidates", instance.election().num_candidates());
    done.put("votes", instance.election().num_votes());
    let text = instance.to_text();
    match &a.out {
        Some(path) => {
            write(path, &text)?;
            done.put("instance", path.display());
            done.line(format!("instance written to {}", path.display()));
        }
        None => done.output.push_str(&text),
    }
    Ok(done)
}

fn verify(a: &VerifyArgs) -> CliResult {
    let text = read(&a.witness)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let parse_err = |e: ts_approval::format::ParseError| format!("{}: {e}", a.witness.display());
    let mut done = Done::default();
    let verdict = match first {
        "ts-witness" => {
            let w = TsCounterexample::from_text(&text).map_err(parse_err)?;
            done.rule = Some(w.rule);
            done.put("kind", "ts-witness");
            w.verify().map_err(|e| e.to_string())
        }
        "vc-witness" => {
            let w = VcCounterexample::from_text(&text).map_err(parse_err)?;
            done.rule = Some(w.rule);
            done.seed = w.seed;
            done.put("kind", "vc-witness");
            w.verify().map_err(|e| e.to_string())
        }
        "instance" => {
            let w = StrategyWitness::from_text(&text).map_err(parse_err)?;
            done.rule = Some(w.instance.rule());
            done.model = Some(w.instance.model());
            done.put("kind", w.instance.problem_tag());
            w.verify(&limits(a.unbounded)).map_err(|e| e.to_string())
        }
        other => return Err(format!("unrecognised witness header `{other}`")),
    };
    done.put("valid", verdict.is_ok());
    match verdict {
        Ok(()) => done.line("witness verified"),
        Err(msg) => {
            done.exit = 1;
            done.line(format!("witness rejected: {msg}"));
        }
    }
    Ok(done)
}
