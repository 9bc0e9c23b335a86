//! Command-line front end. [`run`] takes its streams as arguments so the
//! whole interface can be driven in-process.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use crate::adaptive::{adversary_mindeg, adversary_prop4, game_value_with, Adversary, GameOptions};
use crate::analysis::{decode, decode_structured, solves_with_cap, Decision, DEFAULT_CAP};
use crate::bounds::{
    adaptive_lower_bounds, decimal_string, fraction_string, nonadaptive_formulas, prop3_bounds,
    prop4_bound, BoundReport,
};
use crate::constructions::{
    c3_graph, harary_graph, turan_cycles, weighted_plurality_scheme, SchemeDescriptor, SchemeFamily,
};
use crate::formats::{parse_answers, parse_graph, parse_weights, write_graph};
use crate::model::{answers_for, Answer, ProblemKind, ProblemSpec, QueryGraph, WeightedInstance};

#[derive(Debug, Parser)]
#[command(
    name = "ballsearch",
    version,
    about = "Query schemes for majority and plurality ball search"
)]
pub struct RunConfig {
    /// Seed for any randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a query graph and its scheme descriptor.
    Construct(ConstructArgs),
    /// Brute-force check whether a graph solves a problem.
    Verify(VerifyArgs),
    /// Evaluate the bound formulas as a one-row CSV.
    Bounds(BoundsArgs),
    /// Exact adaptive game value.
    Solve(SolveArgs),
    /// Turn an answer file into a verdict.
    Decode(DecodeArgs),
    /// Answer queries from standard input as an adversary.
    Adversary(AdversaryArgs),
    /// Sweep parameter ranges and print formula values as CSV.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Harary,
    TuranCycles,
    C3,
    WeightedPlurality,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long)]
    pub n: Option<usize>,
    /// Threshold for harary (connectivity n - k + 1).
    #[arg(long)]
    pub k: Option<usize>,
    /// Connectivity for harary, instead of --k.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Graph output; the descriptor goes next to it as <out>.desc.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// majority | plurality | kmaj:K | fix:K:B
    #[arg(long, default_value = "majority")]
    pub problem: String,
    #[arg(long, default_value_t = 2)]
    pub c: usize,
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Largest number of colorings to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub c: u64,
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Largest game value searched for.
    #[arg(long, default_value_t = 32)]
    pub cap: u32,
    /// Print an optimal strategy tree after the value.
    #[arg(long)]
    pub tree: bool,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub answers: PathBuf,
    /// Scheme descriptor; selects the structured decoder.
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
    #[command(flatten)]
    pub problem: ProblemArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AdversaryKind {
    Prop4,
    Mindeg,
}

#[derive(Debug, Args)]
pub struct AdversaryArgs {
    #[arg(long, value_enum)]
    pub kind: AdversaryKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Query graph, for mindeg.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub c: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableKind {
    #[value(name = "1")]
    Majority,
    #[value(name = "2")]
    Plurality,
    #[value(name = "3")]
    ThreeColors,
    Aigner,
    Adaptive,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long = "theorem", value_enum)]
    pub kind: TableKind,
    /// Single value or inclusive range A:B.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value = "3")]
    pub c: String,
    /// Defaults to floor(n/2) + 1.
    #[arg(long)]
    pub k: Option<String>,
}

/// Exit status plus a message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn semantic(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return e.exit_code();
        }
    };
    match dispatch(&config, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(
    config: &RunConfig,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult {
    match &config.command {
        Command::Construct(a) => cmd_construct(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Decode(a) => cmd_decode(a, out),
        Command::Adversary(a) => cmd_adversary(a, stdin, out),
        Command::Table(a) => cmd_table(a, out),
    }
}

fn io_err(e: std::io::Error) -> Failure {
    semantic(format!("i/o: {e}"))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<QueryGraph, Failure> {
    parse_graph(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_weights(path: &Path) -> Result<WeightedInstance, Failure> {
    parse_weights(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Weights from a file, or unit weights on `n` balls.
fn instance_for(weights: Option<&Path>, n: Option<usize>) -> Result<WeightedInstance, Failure> {
    match (weights, n) {
        (Some(path), n) => {
            let inst = read_weights(path)?;
            if n.is_some_and(|n| n != inst.n()) {
                return Err(usage(format!(
                    "--n {} disagrees with {} weights",
                    n.unwrap(),
                    inst.n()
                )));
            }
            Ok(inst)
        }
        (None, Some(0)) => Err(usage("--n must be positive")),
        (None, Some(n)) => Ok(WeightedInstance::unit(n)),
        (None, None) => Err(usage("give --n or --weights")),
    }
}

/// Parses `majority`, `plurality`, `kmaj:K` or `fix:K:B`.
pub fn parse_problem(spec: &str) -> Result<ProblemKind, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<BigUint, String> {
        s.parse()
            .map_err(|_| format!("bad number {s:?} in --problem"))
    };
    match parts[..] {
        ["majority"] => Ok(ProblemKind::Majority),
        ["plurality"] => Ok(ProblemKind::Plurality),
        ["kmaj", k] => Ok(ProblemKind::KMajority(num(k)?)),
        ["fix", k, b] => Ok(ProblemKind::FixedBallKMajority {
            k: num(k)?,
            ball: b
                .parse()
                .map_err(|_| format!("bad ball {b:?} in --problem"))?,
        }),
        _ => Err(format!(
            "unknown problem {spec:?}; use majority, plurality, kmaj:K or fix:K:B"
        )),
    }
}

fn problem_for(args: &ProblemArgs, instance: WeightedInstance) -> Result<ProblemSpec, Failure> {
    let kind = parse_problem(&args.problem).map_err(usage)?;
    ProblemSpec::new(kind, args.c, instance).map_err(|e| usage(e.to_string()))
}

fn cmd_construct(a: &ConstructArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let bad = |e: crate::constructions::ConstructionError| usage(e.to_string());
    let (graph, descriptor, bound): (QueryGraph, SchemeDescriptor, Option<BoundReport>) =
        match a.family {
            Family::Harary => {
                let n = a.n.ok_or_else(|| usage("harary needs --n"))?;
                let j = match (a.j, a.k) {
                    (Some(_), Some(_)) => return Err(usage("give --k or --j, not both")),
                    (Some(j), None) => j,
                    (None, Some(k)) if k >= 1 && k <= n => n - k + 1,
                    (None, Some(k)) => return Err(usage(format!("--k {k} outside 1..={n}"))),
                    (None, None) => n - (n / 2 + 1) + 1,
                };
                let graph = harary_graph(n, j).map_err(bad)?;
                let descriptor = SchemeDescriptor {
                    family: SchemeFamily::Harary,
                    n,
                    k: Some(n + 1 - j),
                    c: a.c,
                    parts: Vec::new(),
                };
                let majority = j == n.div_ceil(2);
                let bound = majority
                    .then(|| nonadaptive_formulas(n as u64, None, a.c.unwrap_or(3) as u64))
                    .and_then(|set| set.get("majority_edges").cloned());
                (graph, descriptor, bound)
            }
            Family::TuranCycles => {
                let n = a.n.ok_or_else(|| usage("turan-cycles needs --n"))?;
                let c = a.c.ok_or_else(|| usage("turan-cycles needs --c"))?;
                let (g, d) = turan_cycles(n, c).map_err(bad)?;
                let b = nonadaptive_formulas(n as u64, None, c as u64)
                    .get("plurality_upper")
                    .cloned();
                (g, d, b)
            }
            Family::C3 => {
                let n = a.n.ok_or_else(|| usage("c3 needs --n"))?;
                let (g, d) = c3_graph(n).map_err(bad)?;
                let set = nonadaptive_formulas(n as u64, None, 3);
                let b = set
                    .get("c3_even")
                    .or_else(|| set.get("c3_odd_construction"))
                    .cloned();
                (g, d, b)
            }
            Family::WeightedPlurality => {
                let c = a.c.ok_or_else(|| usage("weighted-plurality needs --c"))?;
                let inst = instance_for(a.weights.as_deref(), a.n)?;
                let (g, d) = weighted_plurality_scheme(&inst, c).map_err(bad)?;
                let b = nonadaptive_formulas(inst.n() as u64, None, c as u64)
                    .get("weighted_plurality_upper")
                    .cloned();
                (g, d, b)
            }
        };

    let text = write_graph(&graph);
    let json = serde_json::to_string_pretty(&descriptor).expect("descriptor serializes");
    match &a.out {
        Some(path) => {
            fs::write(path, &text).map_err(io_err)?;
            let desc_path = a.descriptor.clone().unwrap_or_else(|| {
                let mut p = path.clone().into_os_string();
                p.push(".desc.json");
                PathBuf::from(p)
            });
            fs::write(&desc_path, json + "\n").map_err(io_err)?;
        }
        None => {
            write!(out, "{text}").map_err(io_err)?;
            if let Some(p) = &a.descriptor {
                fs::write(p, json + "\n").map_err(io_err)?;
            }
        }
    }
    let bound_text = bound.map_or("n/a".to_string(), |b| {
        format!("{} ({}) = {}", b.name, b.formula, b.value)
    });
    let summary = format!("edges {}\nbound {bound_text}\n", graph.edge_count());
    if a.out.is_some() {
        write!(out, "{summary}").map_err(io_err)?;
    } else {
        write!(err, "{summary}").map_err(io_err)?;
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let graph = read_graph(&a.graph)?;
    let instance = instance_for(a.problem.weights.as_deref(), Some(graph.n()))?;
    let problem = problem_for(&a.problem, instance)?;
    let report = solves_with_cap(&graph, &problem, a.cap).map_err(|e| usage(e.to_string()))?;
    if report.solves {
        writeln!(out, "SOLVES").map_err(io_err)?;
        return Ok(0);
    }
    let ev = report.evidence.expect("failure carries evidence");
    writeln!(out, "FAILS {:?}", ev.conflict).map_err(io_err)?;
    for c in &ev.colorings {
        writeln!(out, "{c}").map_err(io_err)?;
    }
    Ok(1)
}

/// CSV cell(s) for a report. The non-integral plurality upper bound gets a
/// decimal cell plus an exact fraction cell.
fn cells(report: &BoundReport) -> Vec<(String, String)> {
    if report.name == "plurality_upper" {
        vec![
            (report.name.to_string(), decimal_string(&report.exact, 6)),
            (
                format!("{}_exact", report.name),
                fraction_string(&report.exact),
            ),
        ]
    } else {
        vec![(report.name.to_string(), report.value.to_string())]
    }
}

fn write_csv(out: &mut dyn Write, header: &[String], rows: &[Vec<String>]) -> Result<(), Failure> {
    writeln!(out, "{}", header.join(",")).map_err(io_err)?;
    for row in rows {
        writeln!(out, "{}", row.join(",")).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_bounds(a: &BoundsArgs, out: &mut dyn Write) -> CliResult {
    let instance = match &a.weights {
        Some(p) => Some(read_weights(p)?),
        None => None,
    };
    let n = match (&instance, a.n) {
        (Some(i), Some(n)) if i.n() as u64 != n => {
            return Err(usage("--n disagrees with the weights file"))
        }
        (Some(i), _) => i.n() as u64,
        (None, Some(n)) => n,
        (None, None) => return Err(usage("give --n or --weights")),
    };
    let k = a.k.unwrap_or(n / 2 + 1);
    let mut header = vec!["n".to_string(), "k".to_string(), "c".to_string()];
    let mut row = vec![n.to_string(), k.to_string(), a.c.to_string()];
    let mut reports: Vec<BoundReport> = Vec::new();
    if let Ok(set) = adaptive_lower_bounds(n, k) {
        reports.extend(set.reports);
    }
    reports.extend(nonadaptive_formulas(n, Some(k), a.c).reports);
    if let Some(inst) = &instance {
        if let Ok(r) = prop3_bounds(inst) {
            header.push("p".into());
            row.push(r.p.to_string());
            reports.extend(r.bounds.reports);
        }
        if let Ok(r) = prop4_bound(inst) {
            reports.push(r);
        }
    }
    for (h, v) in reports.iter().flat_map(cells) {
        header.push(h);
        row.push(v);
    }
    write_csv(out, &header, &[row])?;
    Ok(0)
}

fn cmd_solve(a: &SolveArgs, out: &mut dyn Write) -> CliResult {
    let instance = instance_for(a.problem.weights.as_deref(), a.n)?;
    let problem = problem_for(&a.problem, instance)?;
    let options = GameOptions {
        cap: a.cap,
        ..GameOptions::default()
    };
    match game_value_with(&problem, &options) {
        Ok(sol) => {
            writeln!(out, "{}", sol.value).map_err(io_err)?;
            if a.tree {
                write!(out, "{}", sol.tree.render()).map_err(io_err)?;
            }
            Ok(0)
        }
        Err(crate::adaptive::AdaptiveError::ExceedsCap { cap }) => {
            writeln!(out, "> {cap}").map_err(io_err)?;
            Ok(1)
        }
        Err(e) => Err(semantic(e.to_string())),
    }
}

fn cmd_decode(a: &DecodeArgs, out: &mut dyn Write) -> CliResult {
    let graph = read_graph(&a.graph)?;
    let answers = parse_answers(&read_file(&a.answers)?)
        .map_err(|e| usage(format!("{}: {e}", a.answers.display())))?;
    let instance = instance_for(a.problem.weights.as_deref(), Some(graph.n()))?;
    let problem = problem_for(&a.problem, instance)?;
    let line = match &a.descriptor {
        Some(path) => {
            let descriptor: SchemeDescriptor = serde_json::from_str(&read_file(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            if !answers.matches_graph(&graph) {
                return Err(semantic("answers do not cover exactly the graph's edges"));
            }
            decode_structured(&descriptor, &answers, &problem)
                .map_err(|e| semantic(e.to_string()))?
                .to_string()
        }
        None => match decode(&graph, &answers, &problem).map_err(|e| semantic(e.to_string()))? {
            Decision::Decided(v) => v.to_string(),
            Decision::Undecidable => "UNDECIDABLE".to_string(),
        },
    };
    writeln!(out, "{line}").map_err(io_err)?;
    Ok(0)
}

type EvidenceFn = dyn Fn(&[(usize, usize)]) -> Option<Vec<String>>;

/// Reads `u v` lines, answers each, and prints the fooling pair at the end
/// of input when the answers still leave the problem open.
fn cmd_adversary(a: &AdversaryArgs, stdin: &mut dyn BufRead, out: &mut dyn Write) -> CliResult {
    let mut answerer: Box<dyn FnMut(usize, usize) -> Answer>;
    let evidence_at_end: Box<EvidenceFn>;
    let n;
    match a.kind {
        AdversaryKind::Prop4 => {
            let instance = instance_for(a.weights.as_deref(), a.n)?;
            n = instance.n();
            let adv = std::rc::Rc::new(std::cell::RefCell::new(
                adversary_prop4(&instance).map_err(|e| semantic(e.to_string()))?,
            ));
            let a1 = adv.clone();
            answerer = Box::new(move |u, v| a1.borrow_mut().answer(u, v));
            evidence_at_end = Box::new(move |_| {
                adv.borrow()
                    .fooling_evidence()
                    .map(|ev| ev.colorings.iter().map(|c| c.to_string()).collect())
            });
        }
        AdversaryKind::Mindeg => {
            let path = a
                .graph
                .as_deref()
                .ok_or_else(|| usage("mindeg needs --graph"))?;
            let graph = read_graph(path)?;
            n = graph.n();
            let ev = adversary_mindeg(&graph, a.c)
                .ok_or_else(|| semantic("minimum degree clears the threshold; no adversary"))?;
            let answer_coloring = ev.colorings[0].clone();
            answerer = Box::new(move |u, v| {
                if answer_coloring.same_block(u, v) {
                    Answer::Same
                } else {
                    Answer::Different
                }
            });
            let problem = ProblemSpec::plurality(WeightedInstance::unit(n), a.c)
                .map_err(|e| usage(e.to_string()))?;
            evidence_at_end = Box::new(move |asked| {
                let g = QueryGraph::from_pairs_dedup(n, asked.iter().copied()).ok()?;
                let same = answers_for(&g, &ev.colorings[0]).ok()?
                    == answers_for(&g, &ev.colorings[1]).ok()?;
                (same && ev.validate(&g, &problem))
                    .then(|| ev.colorings.iter().map(|c| c.to_string()).collect())
            });
        }
    }

    let mut asked = Vec::new();
    let mut line = String::new();
    let mut number = 0;
    loop {
        line.clear();
        if stdin.read_line(&mut line).map_err(io_err)? == 0 {
            break;
        }
        number += 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let parsed = match fields[..] {
            [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
            _ => None,
        };
        let Some((u, v)) = parsed.filter(|&(u, v)| u < n && v < n && u != v) else {
            return Err(usage(format!(
                "line {number}: expected `u v` with distinct balls below {n}"
            )));
        };
        let ans = answerer(u, v);
        asked.push((u.min(v), u.max(v)));
        writeln!(out, "{}", ans.symbol()).map_err(io_err)?;
        out.flush().map_err(io_err)?;
    }
    if let Some(lines) = evidence_at_end(&asked) {
        for l in lines {
            writeln!(out, "{l}").map_err(io_err)?;
        }
    }
    Ok(0)
}

/// `A` or `A:B`, inclusive.
pub fn parse_range(text: &str) -> Result<Vec<u64>, String> {
    let bad = || format!("bad range {text:?}; use A or A:B");
    match text.split_once(':') {
        None => Ok(vec![text.parse().map_err(|_| bad())?]),
        Some((a, b)) => {
            let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok((a..=b).collect())
        }
    }
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CliResult {
    let ns = parse_range(&a.n).map_err(usage)?;
    let cs = parse_range(&a.c).map_err(usage)?;
    let ks = a.k.as_deref().map(parse_range).transpose().map_err(usage)?;
    let (columns, uses_k, uses_c): (&[&str], bool, bool) = match a.kind {
        TableKind::Majority => (&["majority_edges"], false, true),
        TableKind::Plurality => (&["plurality_lower", "plurality_upper"], false, true),
        TableKind::ThreeColors => (
            &["c3_even", "c3_lower", "c3_upper", "c3_odd_construction"],
            false,
            false,
        ),
        TableKind::Aigner => (&["aigner_nonadaptive"], true, false),
        TableKind::Adaptive => (
            &["aigner", "prop1", "prop2", "prop2_fix", "saks_werman"],
            true,
            false,
        ),
    };
    let mut header = vec!["n".to_string()];
    if uses_k {
        header.push("k".into());
    }
    if uses_c {
        header.push("c".into());
    }
    for col in columns {
        header.push(col.to_string());
        if *col == "plurality_upper" {
            header.push("plurality_upper_exact".into());
        }
    }
    let mut rows = Vec::new();
    for &n in &ns {
        let klist = match (&ks, uses_k) {
            (_, false) => vec![0],
            (Some(ks), true) => ks.clone(),
            (None, true) => vec![n / 2 + 1],
        };
        let clist = if uses_c { cs.clone() } else { vec![3] };
        for &k in &klist {
            for &c in &clist {
                let set = match a.kind {
                    TableKind::Adaptive => match adaptive_lower_bounds(n, k) {
                        Ok(s) => s,
                        Err(_) => continue,
                    },
                    TableKind::Aigner => nonadaptive_formulas(n, Some(k), 2),
                    _ => nonadaptive_formulas(n, None, c),
                };
                if !columns.iter().any(|col| set.get(col).is_some()) {
                    continue;
                }
                let mut row = vec![n.to_string()];
                if uses_k {
                    row.push(k.to_string());
                }
                if uses_c {
                    row.push(c.to_string());
                }
                for col in columns {
                    match set.get(col) {
                        Some(r) => row.extend(cells(r).into_iter().map(|(_, v)| v)),
                        None => {
                            row.push(String::new());
                            if *col == "plurality_upper" {
                                row.push(String::new());
                            }
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    write_csv(out, &header, &rows)?;
    Ok(0)
}

/// Runs the command line of the current process.
pub fn main_with_env() -> i32 {
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    run(std::env::args_os(), &mut input, &mut stdout, &mut stderr)
}
