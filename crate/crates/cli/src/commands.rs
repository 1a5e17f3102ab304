use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pigeon_core::exact::{optimal_multihop_with_clock, optimal_twohop_with_clock, Clock};
use pigeon_core::ilp::{
    build_multihop_union, build_twohop_model, export_lp, solve_multihop_ilp_with_clock, solve_twohop_ilp_with_clock,
};
use pigeon_core::reductions::{parse_dimacs_cnf, reduce_3sat_to_twohop, reduce_vertex_cover_to_multihop};
use pigeon_core::{
    approximation_report, certify, degree_profile, lower_bound, plan_coordinator, plan_cycle, plan_singlehop, verify,
    weakly_connected_components, Algorithm, DemandGraph, Mode, PlannerResult, SearchLimits,
};
use serde_json::{json, Value};

use crate::formats::{self, render};
use crate::gen::{generate, GenKind, Generated};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INPUT: u8 = 3;
    pub const BUDGET: u8 = 4;
}

#[derive(Debug, Parser)]
#[command(name = "pigeon", version, about = "Plan, verify and solve pigeon-post demand instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a flight plan for a demand graph.
    Solve(SolveArgs),
    /// Check a flight plan against a demand graph.
    Verify(VerifyArgs),
    /// Degree profile, components, lower bounds and the coordinator report.
    Bounds(BoundsArgs),
    /// Generate a hardness-reduction instance.
    Reduce(ReduceArgs),
    /// Write the integer program of an instance in LP format.
    ExportLp(ExportArgs),
    /// Generate a fixture instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Singlehop,
    Twohop,
    Multihop,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Singlehop => Mode::Singlehop,
            ModeArg::Twohop => Mode::Twohop,
            ModeArg::Multihop => Mode::Multihop,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Direct,
    Coordinator,
    Cycle,
    Exact,
    Ilp,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Largest component (multihop) or demand-carrying node set (twohop) searched exactly.
    #[arg(long)]
    pub max_nodes: Option<usize>,
    /// Largest demand count searched exactly.
    #[arg(long)]
    pub max_demands: Option<usize>,
    /// Longest plan the exact searches consider.
    #[arg(long)]
    pub max_walk: Option<usize>,
    /// Search-node expansion budget.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    pub time_limit_ms: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> SearchLimits {
        let d = SearchLimits::default();
        SearchLimits {
            max_nodes: self.max_nodes.unwrap_or(d.max_nodes),
            max_demands: self.max_demands.unwrap_or(d.max_demands),
            max_walk_length: self.max_walk.or(d.max_walk_length),
            node_budget: self.budget.unwrap_or(d.node_budget),
            time_budget_ms: self.time_limit_ms.or(d.time_budget_ms),
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Demand graph JSON (`-` for stdin).
    pub graph: String,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Defaults: direct (singlehop), coordinator (twohop), cycle (multihop).
    #[arg(long, value_enum)]
    pub algorithm: Option<AlgorithmArg>,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Exit with status 4 when an exact or ILP solve could not prove optimality.
    #[arg(long)]
    pub strict: bool,
    /// Attach an optimality certificate (exact and ILP only).
    #[arg(long)]
    pub certificate: bool,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Demand graph JSON (`-` for stdin).
    pub graph: String,
    /// Plan JSON, or the output of `solve` (`-` for stdin).
    pub plan: String,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    pub graph: String,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    /// DIMACS 3-CNF to a twohop instance.
    #[value(name = "3sat-to-twohop")]
    ThreeSatToTwohop,
    /// Undirected graph JSON plus a cover size to a multihop instance.
    VcToMultihop,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub kind: ReduceKind,
    pub input: String,
    /// Vertex cover size (vc-to-multihop only).
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub graph: String,
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// Node count.
    #[arg(long, default_value_t = 6)]
    pub n: usize,
    /// Edge probability (random only).
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => exit::USAGE,
            Failure::Input(_) => exit::INPUT,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

struct WallClock(Instant);

impl Clock for WallClock {
    fn elapsed_ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Input(format!("stdout: {e}")))
    } else {
        fs::write(path, text).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<DemandGraph, Failure> {
    let (g, duplicates) = formats::parse_demand_graph(&read_input(path)?).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    if duplicates > 0 {
        eprintln!("pigeon: warning: {path}: dropped {duplicates} duplicate demand(s)");
    }
    Ok(g)
}

/// Runs one command and maps the outcome onto the exit-code contract.
pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bounds(a) => bounds(a),
        Command::Reduce(a) => reduce(a),
        Command::ExportLp(a) => export(a),
        Command::Gen(a) => gen_cmd(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Usage(msg) => eprintln!("pigeon: usage error: {msg}"),
                Failure::Input(msg) => eprintln!("pigeon: error: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn solve(a: SolveArgs) -> Result<u8, Failure> {
    let mode = Mode::from(a.mode);
    let algorithm = match (a.mode, a.algorithm) {
        (ModeArg::Singlehop, None | Some(AlgorithmArg::Direct)) => Algorithm::Direct,
        (ModeArg::Singlehop, Some(other)) => {
            return Err(Failure::Usage(format!("singlehop only supports --algorithm direct, not {other:?}")))
        }
        (_, Some(AlgorithmArg::Direct)) => {
            return Err(Failure::Usage("--algorithm direct is only valid with --mode singlehop".into()))
        }
        (ModeArg::Twohop, Some(AlgorithmArg::Cycle)) => {
            return Err(Failure::Usage("the cycle plan is only guaranteed for --mode multihop".into()))
        }
        (ModeArg::Twohop, None) => Algorithm::Coordinator,
        (ModeArg::Multihop, None) => Algorithm::Cycle,
        (_, Some(AlgorithmArg::Coordinator)) => Algorithm::Coordinator,
        (_, Some(AlgorithmArg::Cycle)) => Algorithm::Cycle,
        (_, Some(AlgorithmArg::Exact)) => Algorithm::Exact,
        (_, Some(AlgorithmArg::Ilp)) => Algorithm::Ilp,
    };
    let searching = matches!(algorithm, Algorithm::Exact | Algorithm::Ilp);
    if a.certificate && !searching {
        return Err(Failure::Usage("--certificate needs --algorithm exact or ilp".into()));
    }
    let g = load_graph(&a.graph)?;
    let limits = a.limits.limits();
    let clock = WallClock(Instant::now());

    let mut result: PlannerResult = match (algorithm, mode) {
        (Algorithm::Direct, _) => plan_singlehop(&g),
        (Algorithm::Coordinator, _) => plan_coordinator(&g),
        (Algorithm::Cycle, _) => plan_cycle(&g),
        (Algorithm::Exact, Mode::Twohop) => optimal_twohop_with_clock(&g, &limits, &clock),
        (Algorithm::Exact, _) => optimal_multihop_with_clock(&g, &limits, &clock),
        (Algorithm::Ilp, Mode::Twohop) => solve_twohop_ilp_with_clock(&g, &limits, &clock).map_err(input)?,
        (Algorithm::Ilp, _) => solve_multihop_ilp_with_clock(&g, &limits, &clock).map_err(input)?,
    };
    // A coordinator plan is also a multihop plan; report it under the mode asked for.
    result.mode = mode;

    let mut doc = formats::planner_result_json(&result);
    if a.certificate {
        doc["certificate"] = formats::certificate_json(&certify(&g, &result));
    }
    write_output(&a.output, &render(&doc))?;
    if a.strict && searching && !result.proven_optimal {
        eprintln!("pigeon: budget exhausted before optimality was proven");
        return Ok(exit::BUDGET);
    }
    Ok(exit::OK)
}

fn verify_cmd(a: VerifyArgs) -> Result<u8, Failure> {
    if a.graph == "-" && a.plan == "-" {
        return Err(Failure::Usage("graph and plan cannot both come from stdin".into()));
    }
    let g = load_graph(&a.graph)?;
    let plan = formats::parse_plan(&read_input(&a.plan)?).map_err(|e| Failure::Input(format!("{}: {e}", a.plan)))?;
    plan.check_against(&g).map_err(input)?;
    let report = verify(&g, &plan, a.mode.into());
    write_output(&a.output, &render(&formats::report_json(&report)))?;
    Ok(if report.satisfied { exit::OK } else { exit::VERIFICATION_FAILED })
}

fn bounds(a: BoundsArgs) -> Result<u8, Failure> {
    let g = load_graph(&a.graph)?;
    let profile = degree_profile(&g);
    let parts = weakly_connected_components(&g);
    let lb = lower_bound(&g);
    let coordinator = plan_coordinator(&g);
    let ids = |v: &[pigeon_core::NodeId]| v.iter().map(|x| x.0).collect::<Vec<_>>();
    let doc = json!({
        "n": g.node_count(),
        "demand_count": g.demand_count(),
        "sources": ids(&profile.sources),
        "destinations": ids(&profile.destinations),
        "degrees": g.nodes().map(|v| profile.degree(v)).collect::<Vec<_>>(),
        "components": parts.components.iter().map(|c| json!({
            "nodes": ids(&c.nodes),
            "demand_count": c.demands.len(),
        })).collect::<Vec<_>>(),
        "isolated": ids(&parts.isolated),
        "lower_bound": {
            "global": lb.global,
            "per_component": lb.per_component,
            "component_sum": lb.component_sum,
        },
        "cycle_bound": parts.components.iter().map(|c| 2 * c.size() - 2).sum::<usize>(),
        "coordinator": formats::approximation_json(&approximation_report(&g, &coordinator)),
    });
    write_output(&a.output, &render(&doc))?;
    Ok(exit::OK)
}

fn reduce(a: ReduceArgs) -> Result<u8, Failure> {
    let text = read_input(&a.input)?;
    let context = |e: &dyn std::fmt::Display| Failure::Input(format!("{}: {e}", a.input));
    let doc: Value = match a.kind {
        ReduceKind::ThreeSatToTwohop => {
            if a.k.is_some() {
                return Err(Failure::Usage("--k only applies to vc-to-multihop".into()));
            }
            let f = parse_dimacs_cnf(&text).map_err(|e| context(&e))?;
            formats::reduction_json("3sat-to-twohop", &reduce_3sat_to_twohop(&f))
        }
        ReduceKind::VcToMultihop => {
            let k = a.k.ok_or_else(|| Failure::Usage("vc-to-multihop needs --k".into()))?;
            let g = formats::parse_undirected_graph(&text).map_err(|e| context(&e))?;
            let out = reduce_vertex_cover_to_multihop(&g, k).map_err(|e| context(&e))?;
            formats::reduction_json("vc-to-multihop", &out)
        }
    };
    write_output(&a.output, &render(&doc))?;
    Ok(exit::OK)
}

fn export(a: ExportArgs) -> Result<u8, Failure> {
    let g = load_graph(&a.graph)?;
    let model = match a.mode {
        ModeArg::Singlehop => return Err(Failure::Usage("no integer program for singlehop".into())),
        ModeArg::Twohop => build_twohop_model(&g),
        ModeArg::Multihop => build_multihop_union(&g),
    }
    .map_err(input)?;
    write_output(&a.output, &export_lp(&model))?;
    Ok(exit::OK)
}

fn gen_cmd(a: GenArgs) -> Result<u8, Failure> {
    let text = match generate(a.kind, a.n, a.p, a.seed).map_err(Failure::Usage)? {
        Generated::Demand(g) => render(&formats::demand_graph_json(&g)),
        Generated::Undirected(g) => render(&formats::undirected_graph_json(&g)),
        Generated::Cnf(text) => text,
    };
    write_output(&a.output, &text)?;
    Ok(exit::OK)
}
