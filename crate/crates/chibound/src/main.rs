//! Batch CLI: generation, analysis, decomposition, colouring, verification
//! suites, and DOT export.
//!
//! Exit codes are a contract: 0 success, 1 an `--expect-absent` witness was
//! found, 2 input error, 3 budget exceeded.

use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use chibound::constructions::{
    cyclic_tournament, random_oriented, random_tournament, shift_digraph,
};
use chibound::decompositions::{
    acyclic_partition, color_acyclic_spread, color_spread, robust_decomposition,
    source_sink_partition, ParamPack, PartitionCertificate, RobustTriple, DEFAULT_ROBUST_BOUND,
};
use chibound::holes::{enumerate_holes, HoleRecord};
use chibound::patterns::{
    find_rich_vertex, is_lambda_spread, oriented_star_pattern, parse_pattern, find_induced,
    RichWitness, SpreadReport,
};
use chibound::solvers::{
    chromatic_number_budgeted, clique_number, is_perfect_underlying, Coloring,
    DEFAULT_NODE_BUDGET, DEFAULT_PERFECT_BOUND,
};
use chibound::verify::{run_suite, SuiteConfig, SUITES};
use chibound::{Digraph, Error};

#[derive(Parser)]
#[command(name = "chibound", version, about = "Oriented-graph structure toolbox")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a digraph and write it in edge-list format.
    Gen(GenArgs),
    /// Compute a statistic or search for a structure in a digraph.
    Analyze(AnalyzeArgs),
    /// Run a certified partition procedure.
    Decompose(DecomposeArgs),
    /// Colour a digraph with the theorem pipeline.
    Color(ColorArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Convert a digraph to another format.
    Export(ExportArgs),
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenCmd,
    /// Output path; stdout when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Shift digraph on the 2-subsets of {1..n}.
    Shift {
        #[arg(long)]
        n: usize,
    },
    /// Cyclic tournament on 2m+1 vertices.
    Cyclic {
        #[arg(long)]
        m: usize,
    },
    /// Seeded random oriented graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Seeded random tournament.
    Tournament {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Oriented star: one centre, s out-leaves, t in-leaves.
    Star {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Input edge-list file; stdin when omitted.
    input: Option<PathBuf>,
    /// Exact chromatic number.
    #[arg(long)]
    chi: bool,
    /// Exact clique number.
    #[arg(long)]
    omega: bool,
    /// Induced-pattern search, e.g. `p4:frr` or `star:2,1`.
    #[arg(long)]
    pattern: Option<String>,
    /// Enumerate holes of the underlying graph.
    #[arg(long)]
    holes: bool,
    #[arg(long, default_value_t = 4)]
    min_len: usize,
    #[arg(long)]
    max_len: Option<usize>,
    /// Spread check at the given lambda.
    #[arg(long)]
    spread: Option<usize>,
    /// Rich-vertex search: k disjoint m-cliques on both sides.
    #[arg(long, num_args = 2, value_names = ["K", "M"])]
    rich: Option<Vec<usize>>,
    /// Perfection of the underlying graph.
    #[arg(long)]
    perfect: bool,
    /// Cap on reported pattern occurrences.
    #[arg(long, default_value_t = 10)]
    limit: usize,
    /// Exit 1 if the requested structure is present.
    #[arg(long)]
    expect_absent: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(subcommand)]
    method: DecomposeCmd,
    #[arg(global = true)]
    input: Option<PathBuf>,
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Out-orderable / in-orderable / robust triple.
    Robust {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
    },
    /// Partition into source-free and sink-free parts.
    SourceSink {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Robust triple refined into acyclic parts.
    Acyclic {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct ColorArgs {
    input: Option<PathBuf>,
    #[arg(long)]
    kappa: usize,
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    #[arg(long, default_value_t = 1)]
    tau: usize,
    /// Use the acyclic pipeline (input must be acyclic).
    #[arg(long)]
    acyclic: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name.
    suite: String,
    #[arg(long, default_value_t = 9)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 6)]
    exhaustive_n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    input: Option<PathBuf>,
    /// Emit DOT.
    #[arg(long)]
    dot: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Gen(args) => run_gen(args),
        Cmd::Analyze(args) => run_analyze(args),
        Cmd::Decompose(args) => run_decompose(args),
        Cmd::Color(args) => run_color(args),
        Cmd::Verify(args) => run_verify(args),
        Cmd::Export(args) => run_export(args),
    }
}

fn load(input: Option<&PathBuf>) -> Result<Digraph, Error> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Digraph::parse(&text)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_json<T: Serialize>(output: Option<&PathBuf>, value: &T) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    emit(output, &text)
}

fn node_budget() -> u64 {
    std::env::var("CHIBOUND_NODE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

fn run_gen(args: GenArgs) -> Result<ExitCode, Error> {
    let g = match args.family {
        GenCmd::Shift { n } => shift_digraph(n)?,
        GenCmd::Cyclic { m } => cyclic_tournament(m),
        GenCmd::Random { n, p, seed } => random_oriented(n, p, seed)?,
        GenCmd::Tournament { n, seed } => random_tournament(n, seed),
        GenCmd::Star { s, t } => {
            let mut g = oriented_star_pattern(s, t);
            g.set_name(format!("star({s},{t})"));
            g
        }
    };
    emit(args.output.as_ref(), &g.to_edge_list())?;
    Ok(ExitCode::SUCCESS)
}

/// Everything `analyze` can report, in one stable envelope.
#[derive(Serialize)]
struct AnalysisReport {
    vertices: usize,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    chi: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<Coloring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    clique: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    occurrences: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    holes: Option<Vec<HoleRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spread: Option<SpreadReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rich: Option<Option<RichWitness>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perfect: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    imperfection_witness: Option<Vec<usize>>,
}

fn run_analyze(args: AnalyzeArgs) -> Result<ExitCode, Error> {
    let g = load(args.input.as_ref())?;
    let budget = node_budget();
    let mut report = AnalysisReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        chi: None,
        coloring: None,
        omega: None,
        clique: None,
        pattern: None,
        occurrences: None,
        holes: None,
        spread: None,
        rich: None,
        perfect: None,
        imperfection_witness: None,
    };
    let mut found = false;
    if args.chi {
        let (chi, coloring) = chromatic_number_budgeted(&g, budget)?;
        report.chi = Some(chi);
        report.coloring = Some(coloring);
    }
    if args.omega {
        let (omega, witness) = clique_number(&g);
        report.omega = Some(omega);
        report.clique = Some(witness.vertices);
    }
    if let Some(spec) = &args.pattern {
        let pattern = parse_pattern(spec)?;
        let occs = find_induced(&g, &pattern, args.limit);
        found |= !occs.is_empty();
        report.pattern = Some(spec.clone());
        report.occurrences = Some(occs.into_iter().map(|o| o.host_vertices).collect());
    }
    if args.holes {
        let max_len = args.max_len.unwrap_or(g.vertex_count().max(4));
        let holes = enumerate_holes(&g, args.min_len, max_len, budget)?;
        found |= !holes.is_empty();
        report.holes = Some(holes);
    }
    if let Some(lambda) = args.spread {
        let spread = is_lambda_spread(&g, lambda);
        found |= !spread.verdict;
        report.spread = Some(spread);
    }
    if let Some(km) = &args.rich {
        let witness = find_rich_vertex(&g, km[0], km[1], budget)?;
        found |= witness.is_some();
        report.rich = Some(witness);
    }
    if args.perfect {
        let verdict = is_perfect_underlying(&g, DEFAULT_PERFECT_BOUND)?;
        found |= !verdict.perfect;
        report.perfect = Some(verdict.perfect);
        report.imperfection_witness = verdict.witness;
    }
    emit_json(args.output.as_ref(), &report)?;
    if args.expect_absent && found {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AcyclicDecomposition {
    triple: RobustTriple,
    certificates: Vec<PartitionCertificate>,
}

fn run_decompose(args: DecomposeArgs) -> Result<ExitCode, Error> {
    let g = load(args.input.as_ref())?;
    match args.method {
        DecomposeCmd::Robust { h, k } => {
            let triple = robust_decomposition(&g, h, k, DEFAULT_ROBUST_BOUND)?;
            emit_json(args.output.as_ref(), &triple)?;
        }
        DecomposeCmd::SourceSink { k, m, n } => {
            let outcome = source_sink_partition(&g, k, m, n)?;
            emit_json(args.output.as_ref(), &outcome)?;
        }
        DecomposeCmd::Acyclic { h, k } => {
            let triple = robust_decomposition(&g, h, k, DEFAULT_ROBUST_BOUND)?;
            let mut certificates = Vec::new();
            for side in [&triple.p, &triple.q] {
                if !side.parts.is_empty() {
                    certificates.push(acyclic_partition(&g, side)?);
                }
            }
            emit_json(args.output.as_ref(), &AcyclicDecomposition { triple, certificates })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_color(args: ColorArgs) -> Result<ExitCode, Error> {
    let g = load(args.input.as_ref())?;
    let mut params = ParamPack::new(args.kappa, args.lambda, args.tau)?;
    params.node_budget = node_budget();
    let traced = if args.acyclic {
        color_acyclic_spread(&g, &params)?
    } else {
        color_spread(&g, &params)?
    };
    emit_json(args.output.as_ref(), &traced)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(Error::Precondition(format!(
            "unknown suite {}; choose one of {}",
            args.suite,
            SUITES.join(", ")
        )));
    }
    let config = SuiteConfig {
        n: args.n,
        samples: args.samples,
        seed: args.seed,
        exhaustive_n: args.exhaustive_n,
        p: args.p,
    };
    let report = run_suite(&args.suite, &config)?;
    emit_json(args.output.as_ref(), &report)?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn run_export(args: ExportArgs) -> Result<ExitCode, Error> {
    let g = load(args.input.as_ref())?;
    if !args.dot {
        return Err(Error::Precondition("choose an export format (--dot)".into()));
    }
    emit(args.output.as_ref(), &g.to_dot())?;
    Ok(ExitCode::SUCCESS)
}
