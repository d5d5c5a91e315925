//! `pathvol` command-line driver.
//!
//! Exit codes: 0 success, 1 domain or I/O failure, 2 usage error.

mod table;

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathvol::bounds::{bound_chain, BoundInputs, BoundsError};
use pathvol::graph::{parse_pace, GraphError, Multigraph};
use pathvol::heegaard::{
    amalgamate, splitting_from_boundary_triangulation, splitting_from_closed_triangulation, BoundaryPartition,
    GeneralizedSplitting, HeegaardError,
};
use pathvol::trikernel::{
    analyze_skeleton, barycentric_subdivision, boundary_isolated, boundary_isolation_subdivision, dual_graph,
    TriangulationError,
};
use pathvol::widths::{
    exact_width, heuristic_width, to_nice, NiceTreeDecomposition, Strategy, WidthCertificate, WidthError,
    WidthParameter, DEFAULT_EXACT_CUTOFF,
};
use pathvol::Triangulation;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "pathvol", version, about = "Triangulations, graph widths and Heegaard splitting bookkeeping")]
struct Cli {
    /// Print an aligned table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Skeleton report of a triangulation.
    Validate { file: PathBuf },
    /// Dual graph of a triangulation.
    Dual {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Barycentric subdivision, written as a triangulation file.
    Subdivide {
        file: PathBuf,
        /// Subdivide until no tetrahedron meets two boundary components.
        #[arg(long)]
        isolate_boundary: bool,
    },
    /// Treewidth or pathwidth certificate of a dual graph or PACE graph.
    Widths(WidthsArgs),
    /// Heegaard splitting read off a triangulation.
    Splitting {
        file: PathBuf,
        /// Boundary component ids on each side, e.g. `0,2:1`.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Genus ledger of a generalized Heegaard splitting.
    Amalgamate { file: PathBuf },
    /// Pathwidth bound chain for a volume and tetrahedron budget.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
struct WidthsArgs {
    /// `.gr` files are read as PACE graphs, anything else as a triangulation.
    file: PathBuf,
    #[arg(long)]
    param: WidthParameter,
    /// Largest simplified graph handed to the exact solver; 0 forces the heuristic.
    #[arg(long, default_value_t = DEFAULT_EXACT_CUTOFF)]
    exact_cutoff: usize,
    #[arg(long, default_value_t = Strategy::MinFill)]
    strategy: Strategy,
    #[arg(long)]
    nice: bool,
    /// Recorded in the output; the heuristics are deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    volume: f64,
    #[arg(long = "K")]
    budget_constant: f64,
    #[arg(long)]
    thick_genus: Option<u64>,
    #[arg(long)]
    m_thin: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Triangulation { path: PathBuf, source: TriangulationError },
    #[error("{}: {source}", path.display())]
    Graph { path: PathBuf, source: GraphError },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Width(#[from] WidthError),
    #[error(transparent)]
    Heegaard(#[from] HeegaardError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Serialize)]
struct WidthsOutput {
    #[serde(flatten)]
    certificate: WidthCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    strategy: Option<Strategy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nice: Option<NiceTreeDecomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

enum Output {
    Json(serde_json::Value),
    Text(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn read_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    Triangulation::parse(&read(path)?).map_err(|source| CliError::Triangulation { path: path.to_owned(), source })
}

fn read_graph(path: &Path) -> Result<Multigraph, CliError> {
    if path.extension().is_some_and(|e| e == "gr") {
        parse_pace(&read(path)?).map_err(|source| CliError::Graph { path: path.to_owned(), source })
    } else {
        read_triangulation(path).map(|t| dual_graph(&t))
    }
}

fn json<T: Serialize>(value: &T) -> Output {
    Output::Json(serde_json::to_value(value).expect("library types serialize"))
}

fn parse_ids(side: &str) -> Result<Vec<usize>, CliError> {
    side.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse().map_err(|_| CliError::Usage(format!("bad boundary id `{s}` in --partition"))))
        .collect()
}

fn parse_partition(text: &str) -> Result<BoundaryPartition, CliError> {
    let (first, second) = text
        .split_once(':')
        .ok_or_else(|| CliError::Usage(format!("--partition `{text}` needs the form a,b:c")))?;
    Ok(BoundaryPartition { first: parse_ids(first)?, second: parse_ids(second)? })
}

fn widths(args: &WidthsArgs) -> Result<Output, CliError> {
    let g = read_graph(&args.file)?;
    let certificate = match exact_width(&g, args.param, args.exact_cutoff) {
        Ok(c) => c,
        Err(WidthError::CutoffExceeded { .. }) => heuristic_width(&g, args.param, args.strategy),
        Err(e) => return Err(e.into()),
    };
    let nice = args.nice.then(|| to_nice(&certificate.decomposition));
    let strategy = (!certificate.exact).then_some(args.strategy);
    Ok(json(&WidthsOutput { certificate, strategy, nice, seed: args.seed }))
}

fn splitting(file: &Path, partition: Option<&str>) -> Result<Output, CliError> {
    let t = read_triangulation(file)?;
    let s = match partition {
        None => splitting_from_closed_triangulation(&t)?,
        Some(p) => {
            let partition = parse_partition(p)?;
            let t = if boundary_isolated(&t) { t } else { boundary_isolation_subdivision(&t) };
            splitting_from_boundary_triangulation(&t, &partition)?
        }
    };
    Ok(json(&s))
}

fn bounds(args: &BoundsArgs) -> Result<Output, CliError> {
    let mut inputs = BoundInputs::new(args.volume, args.budget_constant);
    inputs.thick_genus = args.thick_genus;
    inputs.m_thin = args.m_thin;
    Ok(json(&bound_chain(&inputs)?))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Validate { file } => Ok(json(&analyze_skeleton(&read_triangulation(file)?))),
        Command::Dual { file, dot } => {
            let g = dual_graph(&read_triangulation(file)?);
            Ok(if *dot { Output::Text(g.to_dot()) } else { json(&g) })
        }
        Command::Subdivide { file, isolate_boundary } => {
            let t = read_triangulation(file)?;
            let sd = if *isolate_boundary { boundary_isolation_subdivision(&t) } else { barycentric_subdivision(&t) };
            Ok(Output::Text(sd.to_text()))
        }
        Command::Widths(args) => widths(args),
        Command::Splitting { file, partition } => splitting(file, partition.as_deref()),
        Command::Amalgamate { file } => {
            let gs: GeneralizedSplitting = serde_json::from_str(&read(file)?)
                .map_err(|source| CliError::Json { path: file.clone(), source })?;
            Ok(json(&amalgamate(&gs)?))
        }
        Command::Bounds(args) => bounds(args),
    }
}

fn render(output: Output, as_table: bool) -> String {
    match output {
        Output::Text(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            text
        }
        Output::Json(value) if as_table => {
            let colour = std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal();
            table::render(&value, colour)
        }
        Output::Json(value) => {
            let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
            text.push('\n');
            text
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|out| {
        std::io::stdout().lock().write_all(render(out, cli.table).as_bytes()).map_err(CliError::Output)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pathvol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
