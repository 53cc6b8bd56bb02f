//! `netevo`: replay a measurement stream to growing checkpoints, or write a
//! synthetic stream.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use netevo::generate::write_stream;
use netevo::{generate, run_evolution, Model, RunConfig, StatGroups};

#[derive(Debug, Parser)]
#[command(name = "netevo", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute statistic series over growing prefixes of a stream.
    Analyze(AnalyzeArgs),
    /// Write a synthetic event stream.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Event stream (`time src dst` lines, optionally gzipped) or a cache file.
    input: PathBuf,
    /// Nominal number of checkpoints.
    #[arg(long, default_value_t = 100)]
    checkpoints: u64,
    /// Seed for every randomized statistic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Statistic groups to compute, comma separated.
    #[arg(long, default_value = "conn,deg,dist,tri")]
    stats: StatGroups,
    /// Consecutive small changes needed before the distance estimator stops.
    #[arg(long, default_value_t = 10)]
    imin: u32,
    /// Change below which an estimator step counts as small.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Diameter bound gap to stop at.
    #[arg(long, default_value_t = 5)]
    gap: u32,
    /// Bound iterations before the gap test applies.
    #[arg(long = "min-iters", default_value_t = 10)]
    min_iters: u32,
    /// Hard cap on bound iterations.
    #[arg(long, default_value_t = 100)]
    cap: u32,
    /// Output directory.
    #[arg(long, env = "NETEVO_OUT_DIR", default_value = "netevo-out")]
    out: PathBuf,
    /// Write the degree distribution of every checkpoint.
    #[arg(long)]
    dump_distributions: bool,
    /// Lines carry only `src dst`; line numbers stand in for time.
    #[arg(long)]
    no_time: bool,
    /// Also write gnuplot scripts for the series.
    #[arg(long)]
    gnuplot: bool,
    /// Save the normalized stream here for faster reruns.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write per-checkpoint wall-clock times of each statistic group here.
    #[arg(long)]
    timings: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(subcommand)]
    model: ModelArgs,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum ModelArgs {
    Path {
        #[arg(short)]
        n: u32,
    },
    Complete {
        #[arg(short)]
        n: u32,
    },
    RandomGnp {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        p: f64,
    },
    PreferentialAttachment {
        #[arg(short)]
        n: u32,
        /// Links brought by each new node.
        #[arg(short)]
        k: u32,
    },
    TwoPhase {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
        /// Node count at which the extra links start.
        #[arg(long)]
        switch_at: u32,
        /// Random links added per arriving node after the switch.
        #[arg(long)]
        extra: u32,
    },
}

impl From<ModelArgs> for Model {
    fn from(m: ModelArgs) -> Self {
        match m {
            ModelArgs::Path { n } => Model::Path { n },
            ModelArgs::Complete { n } => Model::Complete { n },
            ModelArgs::RandomGnp { n, p } => Model::RandomGnp { n, p },
            ModelArgs::PreferentialAttachment { n, k } => Model::PreferentialAttachment { n, k },
            ModelArgs::TwoPhase { n, k, switch_at, extra } => Model::TwoPhase { n, k, switch_at, extra },
        }
    }
}

fn analyze(args: AnalyzeArgs) -> Result<()> {
    let mut cfg = RunConfig::new(&args.input, &args.out);
    cfg.parse.no_time = args.no_time;
    cfg.analysis.checkpoints = args.checkpoints;
    cfg.analysis.seed = args.seed;
    cfg.analysis.groups = args.stats;
    cfg.analysis.estimator.i_min = args.imin;
    cfg.analysis.estimator.epsilon = args.eps;
    cfg.analysis.bounds.gap_target = args.gap;
    cfg.analysis.bounds.min_iterations = args.min_iters;
    cfg.analysis.bounds.iteration_cap = args.cap;
    cfg.dump_distributions = args.dump_distributions;
    cfg.gnuplot = args.gnuplot;
    cfg.cache = args.cache;
    cfg.timings = args.timings;

    let evo = run_evolution(&cfg).with_context(|| format!("analyzing {}", args.input.display()))?;
    eprintln!(
        "{} nodes, {} links, {} checkpoints written to {}",
        evo.final_n,
        evo.final_m,
        evo.checkpoints.len(),
        args.out.display()
    );
    Ok(())
}

fn gen(args: GenArgs) -> Result<()> {
    let model: Model = args.model.into();
    // parameters are checked before the output file is touched
    let links = generate(&model, args.seed)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_stream(&links, file)?;
        }
        None => {
            let mut out = io::stdout().lock();
            write_stream(&links, &mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Gen(args) => gen(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
