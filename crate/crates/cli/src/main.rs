use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod error;
mod input;

use error::CliError;

/// Constrained zero forcing, deduction and constrained fast-mixed search.
#[derive(Parser, Debug)]
#[command(name = "czf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print a human-readable trace on standard error.
    #[arg(long, global = true)]
    trace: bool,

    /// Worker threads for the exact oracles (1 disables parallelism).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Allow the exact oracles on graphs with more than 24 vertices.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a parameter with a replayable witness.
    Solve(SolveArgs),
    /// Run one of the three processes from a given start and print its stages.
    Simulate(SimulateArgs),
    /// Check certificates and cross-check every applicable solver.
    Verify(VerifyArgs),
    /// Write a graph from a named or random family as an edge list.
    Generate(GenerateArgs),
    /// Build the vertex cover reduction for a cubic graph.
    Reduce(ReduceArgs),
    /// Run edge perturbation, contraction, chain or spectrum experiments.
    Probe(ProbeArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Exact,
    Tree,
    Unicyclic,
    Cactus,
    Dismantle,
    Clique,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ParameterArg {
    Czf,
    Cfms,
    D,
    Mu,
    Alpha,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Edge-list file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Parameter to compute; only `czf` is available from the family solvers.
    #[arg(long, value_enum, default_value = "czf")]
    parameter: ParameterArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Czf,
    Deduction,
    Cfms,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    All,
    #[value(alias = "single-fire")]
    Single,
    Random,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    model: Option<Model>,
    /// Initial vertices, e.g. `0,2,3,5`; repeats put several searchers on a vertex.
    #[arg(long, value_name = "CSV")]
    layout: Option<String>,
    /// Search strategy, e.g. `place 0; slide 0 1`.
    #[arg(long, value_name = "DSL")]
    strategy: Option<String>,
    /// Deduction stages to replay first, e.g. `1->; 0->4 3->`.
    #[arg(long, value_name = "STAGES")]
    sequence: Option<String>,
    #[arg(long, value_enum, default_value = "all")]
    policy: PolicyArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vertices already holding a searcher (search model only).
    #[arg(long, value_name = "CSV")]
    preoccupied: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Deduction layout to certify.
    #[arg(long, value_name = "CSV")]
    layout: Option<String>,
    /// Search strategy to certify.
    #[arg(long, value_name = "DSL")]
    strategy: Option<String>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// path, cycle, complete, star, wheel, star_plus_matching, k4_minus_star,
    /// bowtie, tree, unicyclic, cactus, connected, dismantlable, clique,
    /// spectrum.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Second size parameter: gadget count, isolated vertices, or target value.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability for `connected`.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// Cubic source graph as an edge list.
    #[arg(long)]
    vc_instance: PathBuf,
    /// Vertex cover budget.
    #[arg(long)]
    l: usize,
    /// A vertex cover of the source graph; adds a verified strategy to the report.
    #[arg(long, value_name = "CSV")]
    cover: Option<String>,
    /// Write the reduced graph here and its metadata to `<out>.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProbeKind {
    Perturb,
    Contract,
    Chain,
    Spectrum,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ChainArg {
    Decrease,
    Increase,
    Neutral,
}

#[derive(Args, Debug)]
struct ProbeArgs {
    #[arg(long, value_enum)]
    kind: ProbeKind,
    /// Graph for `perturb` and `contract`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    chain: Option<ChainArg>,
    /// Vertex count for `spectrum`.
    #[arg(long)]
    n: Option<usize>,
    /// Chain size.
    #[arg(long)]
    m: Option<usize>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let opts = commands::Options {
        trace: cli.trace,
        parallel: cli.jobs != Some(1),
        force: cli.force,
    };
    match cli.command {
        Command::Solve(a) => commands::solve(&a, &opts),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Verify(a) => commands::verify(&a, &opts),
        Command::Generate(a) => commands::generate(&a),
        Command::Reduce(a) => commands::reduce(&a, &opts),
        Command::Probe(a) => commands::probe(&a, &opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
