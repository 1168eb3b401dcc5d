//! Command-line front end for the `kpfree` library.
//!
//! Six subcommands cover the workflow end to end: `analyze` reports the
//! structural statistics of a graph file, `generate` writes named family
//! instances, `partition` runs the constructive splitters, `verify`
//! re-certifies a partition document from scratch, `oracle` exposes the
//! exact reference searches, and `search` sweeps small graphs for partition
//! counterexamples.
//!
//! Every command is deterministic given its input files, flags, and `--seed`.
//! Results are JSON; with `-o` the primary output goes to the named file and
//! a `<path>.manifest.json` side file records the run (command line, input
//! hashes, seed, library version, timing, summary). Exit codes: 0 success,
//! 2 input or precondition error, 3 budget refusal, 4 certification failure.

mod analyze;
mod docs;
mod generate;
mod oracle;
mod partition;
mod run;
mod search;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use kpfree::oracle::SearchBudget;
use kpfree::Error;

use crate::run::Runner;

/// Exact clique-bounded partitions of desk-scale graphs.
#[derive(Parser)]
#[command(name = "kpfree", version, about)]
struct Cli {
    /// Seed for every randomized choice; recorded in the run manifest.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the sweep commands.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Write the primary output to this file instead of stdout; a
    /// `<path>.manifest.json` side file records the run.
    #[arg(short, long, global = true)]
    out: Option<PathBuf>,

    /// Override the vertex-count limits of the exact searches.
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Override the assignment-space limit of the exact searches.
    #[arg(long, global = true)]
    max_space: Option<u128>,

    /// Wall-clock limit per exact search, in milliseconds.
    #[arg(long, global = true)]
    time_limit_ms: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report vertex/edge counts, degrees, clique statistics, and optional
    /// exact invariants of a graph file.
    Analyze {
        /// Graph file (`.col` is DIMACS, anything else is an edge list).
        input: PathBuf,
        /// Report t-clique counts for every order from 3 up to this.
        #[arg(long, default_value_t = 3)]
        cliques: usize,
        /// Also compute the independence number (exact, small n only).
        #[arg(long)]
        alpha: bool,
        /// Also compute the chromatic number (exact, small n only).
        #[arg(long)]
        chi: bool,
        /// Also search for a maximal independent set meeting every maximum
        /// clique (connected graphs).
        #[arg(long)]
        hitting: bool,
    },
    /// Write a named graph family instance.
    Generate {
        /// Family tag: complete | cycle | strong-product | h1-figure |
        /// h0-pendant | random.
        #[arg(long)]
        family: String,
        /// Vertex count (complete, cycle, random).
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability (random; default 0.5).
        #[arg(long)]
        edge_prob: Option<f64>,
        /// Left factor for strong-product, e.g. `cycle:5`.
        #[arg(long)]
        left: Option<String>,
        /// Right factor for strong-product, e.g. `complete:2`.
        #[arg(long)]
        right: Option<String>,
    },
    /// Split a graph into classes with bounded clique orders.
    Partition {
        /// Graph file.
        input: PathBuf,
        /// Class orders, largest first, e.g. `--spec 4,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        spec: Vec<usize>,
        /// Make the first class a maximum set of its order (connected
        /// graphs whose clique number equals the first order).
        #[arg(long)]
        max_first: bool,
        /// Embed the replayable exchange trace in the output.
        #[arg(long, requires = "max_first")]
        trace: bool,
    },
    /// Re-certify a partition document against a graph file.
    Verify {
        /// Graph file the partition claims to split.
        graph: PathBuf,
        /// Partition JSON produced by `partition` (or hand-written).
        partition: PathBuf,
    },
    /// Exact reference searches.
    Oracle {
        #[command(subcommand)]
        probe: OracleCmd,
    },
    /// Sweep small graphs for partition counterexamples.
    Search {
        /// Class orders to refute, e.g. `--spec 3,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        spec: Vec<usize>,
        /// exhaustive: every graph up to `--n-max` vertices (dedup up to
        /// isomorphism); random: `--count` samples at `--n` vertices.
        #[arg(long, value_enum, default_value_t = SearchMode::Exhaustive)]
        mode: SearchMode,
        /// Exhaustive mode: largest vertex count to sweep (at most 8).
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Random mode: vertex count of every sample.
        #[arg(long)]
        n: Option<usize>,
        /// Random mode: number of samples.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Random mode: edge probability.
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        /// Keep only graphs whose maximum degree is exactly this.
        #[arg(long)]
        delta: Option<usize>,
        /// Keep only graphs whose clique number is at most this.
        #[arg(long)]
        omega_max: Option<usize>,
        /// Keep only connected graphs.
        #[arg(long)]
        connected: bool,
        /// Graph files prepended to the sweep (filtered like every other
        /// candidate); repeatable.
        #[arg(long)]
        include: Vec<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Exhaustively decide whether classes of the given orders exist.
    Exists {
        input: PathBuf,
        /// Class orders, largest first, e.g. `--spec 3,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        spec: Vec<usize>,
    },
    /// Maximum vertex set inducing no clique of the given order.
    Maxset {
        input: PathBuf,
        /// Forbidden clique order.
        #[arg(short, long)]
        p: usize,
        /// Enumerate every maximum set instead of one witness.
        #[arg(long)]
        all: bool,
        /// Cap on the sets listed with --all (the count stays exact).
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Exact chromatic number by branch and bound.
    Chromatic { input: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    Exhaustive,
    Random,
}

fn budget_from(cli: &Cli) -> SearchBudget {
    let mut budget = SearchBudget::default();
    if let Some(n) = cli.max_n {
        budget.max_n_bipartition = n;
        budget.max_n_branch_bound = n;
    }
    if let Some(space) = cli.max_space {
        budget.max_assignment_space = space;
    }
    budget.time_limit = cli.time_limit_ms.map(Duration::from_millis);
    budget
}

fn run(cli: Cli) -> Result<(), Error> {
    if cli.jobs == 0 {
        return Err(Error::Input("--jobs must be at least 1".into()));
    }
    let tag = match &cli.command {
        Command::Analyze { .. } => "analyze",
        Command::Generate { .. } => "generate",
        Command::Partition { .. } => "partition",
        Command::Verify { .. } => "verify",
        Command::Oracle { .. } => "oracle",
        Command::Search { .. } => "search",
    };
    let budget = budget_from(&cli);
    let mut runner = Runner::new(tag, cli.seed, cli.jobs, cli.out.clone());
    let output = match &cli.command {
        Command::Analyze {
            input,
            cliques,
            alpha,
            chi,
            hitting,
        } => analyze::run(&mut runner, &budget, input, *cliques, *alpha, *chi, *hitting)?,
        Command::Generate {
            family,
            n,
            edge_prob,
            left,
            right,
        } => generate::run(
            cli.seed,
            family,
            *n,
            *edge_prob,
            left.as_deref(),
            right.as_deref(),
            cli.out.as_deref(),
        )?,
        Command::Partition {
            input,
            spec,
            max_first,
            trace,
        } => partition::run(&mut runner, &budget, input, spec, *max_first, *trace)?,
        Command::Verify { graph, partition } => verify::run(&mut runner, graph, partition)?,
        Command::Oracle { probe } => match probe {
            OracleCmd::Exists { input, spec } => {
                oracle::exists(&mut runner, &budget, input, spec)?
            }
            OracleCmd::Maxset { input, p, all, cap } => {
                oracle::maxset(&mut runner, &budget, input, *p, *all, *cap)?
            }
            OracleCmd::Chromatic { input } => oracle::chromatic(&mut runner, &budget, input)?,
        },
        Command::Search {
            spec,
            mode,
            n_max,
            n,
            count,
            edge_prob,
            delta,
            omega_max,
            connected,
            include,
        } => {
            let params = search::Params {
                mode: *mode,
                n_max: *n_max,
                n: *n,
                count: *count,
                edge_prob: *edge_prob,
                filter: search::Filter {
                    delta: *delta,
                    omega_max: *omega_max,
                    connected: *connected,
                },
                include: include.clone(),
            };
            search::run(&mut runner, &budget, spec, &params, cli.seed, cli.jobs)?
        }
    };
    runner.finish(output)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Parse { .. } | Error::Contract(_) | Error::Io(_) => 2,
        Error::Budget(_) => 3,
        Error::Internal(_) | Error::Certification(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
