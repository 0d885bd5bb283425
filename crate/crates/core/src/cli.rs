//! Command-line front end.
//!
//! Exit codes: 0 yes/success, 1 no/infeasible/inapplicable, 2 usage or I/O error,
//! 3 budget exhausted. The default time budget (seconds) comes from `INVDIAM_BUDGET`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::certificates::{lower_bound_report, multipartite_hard_labeling, pigeonhole_bound};
use crate::constructive::{transform, upper_bounds, Method};
use crate::error::{Error, Result};
use crate::generators::{self, random};
use crate::graph::{EdgeLabeling, Graph, InversionSequence, Orientation};
use crate::io;
use crate::reductions::{chromatic_number, subdivision_instance, ReductionInstance, CHROMATIC_MAX_VERTICES};
use crate::solver::{self, InversionMetric, SolveOptions};

pub const BUDGET_ENV: &str = "INVDIAM_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "invdiam", version, about = "Inversion distance and diameter of graph orientations")]
pub struct Cli {
    /// Print one JSON object instead of text lines.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Wall-clock budget in seconds (default from INVDIAM_BUDGET).
    #[arg(long, global = true)]
    pub budget: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    pub graph: PathBuf,
    pub o1: PathBuf,
    pub o2: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact inversion distance between two orientations.
    Distance {
        #[command(flatten)]
        pair: PairArgs,
        /// Decide whether the distance is at most this value.
        #[arg(long)]
        max_t: Option<usize>,
        /// Use breadth-first search over the inversion graph.
        #[arg(long)]
        oracle: bool,
    },
    /// Exact inversion diameter of a graph.
    Diameter {
        graph: PathBuf,
        #[arg(long)]
        max_t: Option<usize>,
        #[arg(long)]
        oracle: bool,
        /// Number of labeling chunks searched in parallel.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Lift the default edge-count guard.
        #[arg(long)]
        force: bool,
    },
    /// Constructive inversion sequence between two orientations.
    Transform {
        #[command(flatten)]
        pair: PairArgs,
        /// auto, forest, cycle, elim, greedy, subcubic, sparse3 or coloring
        #[arg(long, default_value = "auto")]
        method: Method,
    },
    /// Write a generated graph (and labeling where the family has one).
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower-bound certificates and the best constructive upper bound.
    Certify {
        graph: PathBuf,
        /// Also run the exact solver.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        force: bool,
    },
    /// Build the subdivision instance relating distance to chromatic number.
    Reduce {
        graph: PathBuf,
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a claimed object.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyKind {
    /// GRAPH O1 SEQUENCE O2: does the sequence turn O1 into O2?
    Sequence { graph: PathBuf, o1: PathBuf, sequence: PathBuf, o2: PathBuf },
    /// GRAPH LABELING REALISATION
    Realisation { graph: PathBuf, labeling: PathBuf, realisation: PathBuf },
    /// A directory written by `reduce`.
    Instance { dir: PathBuf },
    /// GRAPH ORDER T: is the whitespace-separated vertex order t-strong?
    Strong { graph: PathBuf, order: PathBuf, t: usize },
}

/// What a command produced: exit code, text lines and the JSON mirror.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub lines: Vec<String>,
    pub json: Value,
}

impl Outcome {
    fn new(code: i32, lines: Vec<String>, json: Value) -> Self {
        Outcome { code, lines, json }
    }
}

/// Parses `args` (including the program name) and runs the command, returning the exit
/// code together with stdout and stderr contents.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let json = cli.json;
    match execute(&cli) {
        Ok(o) => {
            let out = if json { format!("{}\n", o.json) } else { o.lines.iter().map(|l| format!("{l}\n")).collect() };
            (o.code, out, String::new())
        }
        Err(e) => {
            let code = exit_code(&e);
            let out = if json {
                format!("{}\n", json!({ "error": e.to_string(), "exit": code }))
            } else if code == 3 {
                "UNKNOWN budget exhausted\n".to_string()
            } else {
                String::new()
            };
            (code, out, format!("error: {e}\n"))
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted => 3,
        Error::Precondition(_) | Error::NotStrong { .. } | Error::DischargingContradiction { .. } => 1,
        _ => 2,
    }
}

fn budget(cli: &Cli) -> Result<Option<Duration>> {
    let secs = match cli.budget {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(s) if !s.trim().is_empty() => {
                Some(s.trim().parse::<f64>().map_err(|_| Error::Parse { line: 0, msg: format!("{BUDGET_ENV}={s:?} is not a number") })?)
            }
            _ => None,
        },
    };
    match secs {
        Some(s) if !(s >= 0.0 && s.is_finite()) => Err(Error::Parse { line: 0, msg: format!("budget {s} must be a non-negative number") }),
        Some(s) => Ok(Some(Duration::from_secs_f64(s))),
        None => Ok(None),
    }
}

fn load_pair(p: &PairArgs) -> Result<(Arc<Graph>, Orientation, Orientation)> {
    let g = Arc::new(io::read_graph(&p.graph)?);
    let o1 = io::read_orientation(g.clone(), &p.o1)?;
    let o2 = io::read_orientation(g.clone(), &p.o2)?;
    Ok((g, o1, o2))
}

fn set_lines(seq: &InversionSequence) -> Vec<String> {
    seq.to_lists()
        .iter()
        .map(|s| {
            let mut l = "SET".to_string();
            for v in s {
                let _ = write!(l, " {v}");
            }
            l
        })
        .collect()
}

fn label_lines(pi: &EdgeLabeling) -> Vec<String> {
    pi.graph().edges().iter().enumerate().map(|(e, &(u, v))| format!("LABEL {u} {v} {}", pi.get(e) as u8)).collect()
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = SolveOptions { time_budget: budget(cli)?, ..SolveOptions::default() };
    match &cli.command {
        Command::Distance { pair, max_t, oracle } => distance(pair, *max_t, *oracle, &opts),
        Command::Diameter { graph, max_t, oracle, parallel, force } => {
            let opts = SolveOptions { parallel_pi_chunks: *parallel, force: *force, ..opts };
            diameter(graph, *max_t, *oracle, &opts)
        }
        Command::Transform { pair, method } => {
            let (_, o1, o2) = load_pair(pair)?;
            let (used, seq) = transform(&o1, &o2, *method)?;
            let mut lines = vec![format!("METHOD {used}"), format!("SETS {}", seq.len())];
            lines.extend(set_lines(&seq));
            Ok(Outcome::new(0, lines, json!({ "method": used, "sets": seq.to_lists() })))
        }
        Command::Gen { family, params, out } => gen(family, params, out.as_deref(), cli.seed),
        Command::Certify { graph, exact, force } => {
            let opts = SolveOptions { force: *force, ..opts };
            certify(graph, exact.then_some(&opts))
        }
        Command::Reduce { graph, k, out } => reduce(graph, *k, out),
        Command::Verify { kind } => verify(kind),
    }
}

fn distance(pair: &PairArgs, max_t: Option<usize>, oracle: bool, opts: &SolveOptions) -> Result<Outcome> {
    let (g, o1, o2) = load_pair(pair)?;
    if oracle {
        let d = InversionMetric::new(g)?.distance(&o1, &o2)?;
        let within = max_t.is_none_or(|k| d <= k);
        let line = if within { format!("DISTANCE {d}") } else { format!("DISTANCE > {}", max_t.expect("bound")) };
        return Ok(Outcome::new(if within { 0 } else { 1 }, vec![line], json!({ "distance": d, "within": within, "engine": "oracle" })));
    }
    let res = match max_t {
        None => Some(solver::inversion_distance(&o1, &o2, opts)?),
        Some(k) => solver::distance_at_most(&o1, &o2, k, opts)?,
    };
    Ok(match res {
        Some(d) => {
            let mut lines = vec![format!("DISTANCE {}", d.value)];
            lines.extend(set_lines(&d.sequence));
            Outcome::new(0, lines, json!({ "distance": d.value, "within": true, "sets": d.sequence.to_lists() }))
        }
        None => {
            let k = max_t.expect("decision form");
            Outcome::new(1, vec![format!("DISTANCE > {k}")], json!({ "distance": Value::Null, "within": false, "max_t": k }))
        }
    })
}

fn diameter(path: &Path, max_t: Option<usize>, oracle: bool, opts: &SolveOptions) -> Result<Outcome> {
    let g = Arc::new(io::read_graph(path)?);
    if g.m() > 16 {
        eprintln!("scanning 2^{} labelings", g.m());
    }
    if oracle {
        let d = solver::bfs_diameter(&g)?;
        let within = max_t.is_none_or(|k| d <= k);
        let line = if within { format!("DIAMETER {d}") } else { format!("DIAMETER > {}", max_t.expect("bound")) };
        return Ok(Outcome::new(if within { 0 } else { 1 }, vec![line], json!({ "diameter": d, "within": within, "engine": "oracle" })));
    }
    if let Some(k) = max_t {
        return Ok(match solver::diameter_at_most(&g, k, opts)? {
            None => Outcome::new(0, vec![format!("DIAMETER <= {k}")], json!({ "max_t": k, "within": true })),
            Some(pi) => {
                let mut lines = vec![format!("DIAMETER > {k}")];
                lines.extend(label_lines(&pi));
                Outcome::new(1, lines, json!({ "max_t": k, "within": false, "counterexample": pi.disagree_edges() }))
            }
        });
    }
    let d = solver::inversion_diameter(&g, opts)?;
    let mut lines = vec![format!("DIAMETER {}", d.value)];
    lines.extend(label_lines(&d.extremal));
    Ok(Outcome::new(
        0,
        lines,
        json!({
            "diameter": d.value,
            "extremal": d.extremal.disagree_edges(),
            "witness": d.witness.vectors().iter().map(|v| v.to_bit_string()).collect::<Vec<_>>(),
        }),
    ))
}

fn certify(path: &Path, exact: Option<&SolveOptions>) -> Result<Outcome> {
    let g = Arc::new(io::read_graph(path)?);
    let report = lower_bound_report(&g, exact)?;
    let uppers = upper_bounds(&g);
    let mut best = uppers.iter().min_by_key(|u| u.bound).expect("elimination always applies").clone();
    if let Some(c) = report.witnesses.iter().find(|c| c.rule == "exact") {
        if c.bound < best.bound {
            best = crate::constructive::UpperBound { bound: c.bound, rule: "exact".into() };
        }
    }
    if report.best > best.bound {
        return Err(Error::Invariant(format!("lower bound {} exceeds upper bound {} ({})", report.best, best.bound, best.rule)));
    }
    let mut lines: Vec<String> = report.to_string().lines().map(str::to_string).collect();
    for u in &uppers {
        lines.push(format!("CONSTRUCTION {} BOUND {}", u.rule, u.bound));
    }
    lines.push(format!("LOWER {} / UPPER {}", report.best, best.bound));
    Ok(Outcome::new(0, lines, json!({ "lower": report.best, "upper": best, "certificates": report.witnesses, "constructions": uppers })))
}

fn hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, family: &str) -> Result<T> {
    let s = params.get(i).ok_or_else(|| Error::Parse { line: 0, msg: format!("{family} needs parameter {}", i + 1) })?;
    s.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad parameter {s:?} for {family}") })
}

const FAMILIES: &str = "path N, cycle N, star K, complete N, bipartite A B, multipartite R T, pendant-cycle G, \
subdivided-complete K, tree N, forest N P, gnp N P, cubic N, planar5, five-regular, tw2-gadget, tw-lower T, pigeonhole L";

enum Generated {
    Graph(Graph),
    Labeled(EdgeLabeling),
    Pair(Orientation, Orientation),
}

fn generate(family: &str, params: &[String], seed: u64) -> Result<Generated> {
    let p = |i| param::<usize>(params, i, family);
    let mut rng = random::rng(seed);
    Ok(match family {
        "path" => Generated::Graph(generators::path(p(0)?)),
        "cycle" => Generated::Graph(generators::cycle(p(0)?)),
        "star" => Generated::Graph(generators::star(p(0)?)),
        "complete" => Generated::Graph(generators::complete(p(0)?)),
        "bipartite" => Generated::Graph(generators::complete_bipartite(p(0)?, p(1)?)),
        "multipartite" => Generated::Labeled(multipartite_hard_labeling(p(0)?, p(1)?)?.0),
        "pendant-cycle" => Generated::Graph(generators::pendant_cycle(p(0)?)),
        "subdivided-complete" => Generated::Graph(generators::subdivided_complete(p(0)?)),
        "tree" => Generated::Graph(random::tree(p(0)?, &mut rng)),
        "forest" => Generated::Graph(random::forest(p(0)?, param(params, 1, family)?, &mut rng)),
        "gnp" => Generated::Graph(random::gnp(p(0)?, param(params, 1, family)?, &mut rng)),
        "cubic" => Generated::Graph(random::cubic(p(0)?, &mut rng)),
        "planar5" => Generated::Labeled(generators::fig_planar5()),
        "five-regular" => Generated::Graph(generators::fig_5regular()),
        "tw2-gadget" => Generated::Labeled(generators::tw2_gadget()),
        "tw-lower" => Generated::Labeled(generators::tw_lower(p(0)?)),
        "pigeonhole" => {
            let (_, o1, o2, _) = pigeonhole_bound(p(0)?)?;
            Generated::Pair(o1, o2)
        }
        _ => return Err(Error::Parse { line: 0, msg: format!("unknown family {family:?}; known: {FAMILIES}") }),
    })
}

fn gen(family: &str, params: &[String], out: Option<&Path>, seed: u64) -> Result<Outcome> {
    let (graph, files): (Graph, Vec<(&str, String)>) = match generate(family, params, seed)? {
        Generated::Graph(g) => (g, Vec::new()),
        Generated::Labeled(pi) => {
            let (o1, o2) = pi.to_orientation_pair();
            let files = vec![("pi.lb", io::write_labeling(&pi)), ("O1.or", io::write_orientation(&o1)), ("O2.or", io::write_orientation(&o2))];
            ((**pi.graph()).clone(), files)
        }
        Generated::Pair(o1, o2) => {
            let pi = o1.disagreement(&o2)?;
            let files = vec![("pi.lb", io::write_labeling(&pi)), ("O1.or", io::write_orientation(&o1)), ("O2.or", io::write_orientation(&o2))];
            ((**o1.graph()).clone(), files)
        }
    };
    let el = io::write_edge_list(&graph);
    let Some(dir) = out else {
        let lines = el.lines().map(str::to_string).collect();
        return Ok(Outcome::new(0, lines, json!({ "n": graph.n(), "edges": graph.edges() })));
    };
    fs::create_dir_all(dir)?;
    let mut lines = Vec::new();
    let mut hashes = serde_json::Map::new();
    for (name, text) in std::iter::once(("graph.el", el)).chain(files) {
        fs::write(dir.join(name), &text)?;
        let h = hash(&text);
        lines.push(format!("FILE {name} SHA256 {h}"));
        hashes.insert(name.to_string(), Value::String(h));
    }
    Ok(Outcome::new(0, lines, json!({ "n": graph.n(), "m": graph.m(), "files": hashes })))
}

fn reduce(path: &Path, k: usize, out: &Path) -> Result<Outcome> {
    let base = Arc::new(io::read_graph(path)?);
    let inst = subdivision_instance(&base, k)?;
    inst.write_dir(out)?;
    let mut lines = vec![
        format!("INSTANCE vertices {} edges {}", inst.subdivided.n(), inst.subdivided.m()),
        format!("K {k}"),
    ];
    let mut j = json!({ "vertices": inst.subdivided.n(), "edges": inst.subdivided.m(), "k": k });
    if base.n() <= CHROMATIC_MAX_VERTICES {
        let (chi, _) = chromatic_number(&base)?;
        let yes = k >= 64 || chi < 1usize << k;
        lines.push(format!("CHROMATIC {chi}"));
        lines.push(format!("PREDICT distance<={k} {}", if yes { "yes" } else { "no" }));
        j["chromatic"] = json!(chi);
        j["predict"] = json!(yes);
    }
    Ok(Outcome::new(0, lines, j))
}

fn verdict(ok: bool, reason: Option<String>) -> Outcome {
    let mut lines = vec![if ok { "VALID".to_string() } else { "INVALID".to_string() }];
    lines.extend(reason.iter().map(|r| format!("REASON {r}")));
    Outcome::new(if ok { 0 } else { 1 }, lines, json!({ "valid": ok, "reason": reason }))
}

fn verify(kind: &VerifyKind) -> Result<Outcome> {
    match kind {
        VerifyKind::Sequence { graph, o1, sequence, o2 } => {
            let g = Arc::new(io::read_graph(graph)?);
            let a = io::read_orientation(g.clone(), o1)?;
            let b = io::read_orientation(g.clone(), o2)?;
            let seq = io::read_sequence(g.n(), sequence)?;
            let ok = solver::verify_sequence(&a, &seq, &b);
            Ok(verdict(ok, (!ok).then(|| "the sequence does not reach the second orientation".into())))
        }
        VerifyKind::Realisation { graph, labeling, realisation } => {
            let g = Arc::new(io::read_graph(graph)?);
            let pi = io::read_labeling(g.clone(), labeling)?;
            let r = io::read_realisation(g.n(), realisation)?;
            let bad = r.first_violation(&pi);
            Ok(verdict(bad.is_none(), bad.map(|e| format!("edge {e} violated"))))
        }
        VerifyKind::Instance { dir } => match ReductionInstance::read_dir(dir) {
            Ok(_) => Ok(verdict(true, None)),
            Err(Error::Parse { msg, .. }) => Ok(verdict(false, Some(msg))),
            Err(e) => Err(e),
        },
        VerifyKind::Strong { graph, order, t } => {
            let g = io::read_graph(graph)?;
            let text = fs::read_to_string(order)?;
            let order = text
                .split_whitespace()
                .map(|s| s.parse::<usize>().map_err(|_| Error::Parse { line: 0, msg: format!("bad vertex {s:?} in order") }))
                .collect::<Result<Vec<_>>>()?;
            let rep = crate::constructive::check_t_strong(&g, &order, *t)?;
            Ok(verdict(rep.holds, rep.first_violation.map(|v| format!("vertex {v} violates the condition"))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    #[test]
    fn distance_and_decision() {
        let d = tempfile::tempdir().unwrap();
        let g = write(d.path(), "g.el", "4\n0 1\n1 2\n2 3\n");
        let o1 = write(d.path(), "a.or", "4\n0 1\n1 2\n2 3\n");
        let o2 = write(d.path(), "b.or", "4\n1 0\n1 2\n3 2\n");
        let (code, out, _) = run(["invdiam", "distance", &g, &o1, &o1]);
        assert_eq!((code, out.as_str()), (0, "DISTANCE 0\n"));
        let (code, out, _) = run(["invdiam", "distance", &g, &o1, &o2]);
        assert_eq!(code, 0);
        assert!(out.starts_with("DISTANCE 2\n"));
        let (code, out, _) = run(["invdiam", "distance", &g, &o1, &o2, "--max-t", "1"]);
        assert_eq!((code, out.as_str()), (1, "DISTANCE > 1\n"));
        let (code, _, err) = run(["invdiam", "distance", &g, &o1, "/nonexistent"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["invdiam", "frobnicate"]).0, 2);
        assert_eq!(run(["invdiam", "--help"]).0, 0);
        assert_eq!(run(["invdiam", "gen", "nosuchfamily"]).0, 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::BudgetExhausted), 3);
        assert_eq!(exit_code(&Error::Precondition("x".into())), 1);
        assert_eq!(exit_code(&Error::Parse { line: 1, msg: "x".into() }), 2);
    }
}
