//! Command-line front end. Every subcommand prints one [`OutputRecord`] in
//! JSON (default) or CSV. Usage errors exit with status 2.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::chains::{
    fibonacci_limit_report, most_frequent_trace, n_step_probability, unit_box_evolve,
    StateDistribution, DEFAULT_EXPAND_LIMIT,
};
use crate::distributions::{box_distribution, growth_count_pmf, moment, normalize_pair};
use crate::error::AggError;
use crate::geometry::BoxDims;
use crate::montecarlo::{estimate_distribution, estimate_partition_distribution, SampleConfig};
use crate::output::{
    chain_record, distribution_record, growth_record, mc_record, moment_record, ratio_record,
    trace_record, OutputRecord, RecordKind,
};
use crate::partitions::{
    partition_distribution, partition_distribution_combinatorial, Partition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "lattice-agg", version, about = "Exact lattice aggregation of boxes and partitions")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact aggregation distributions.
    #[command(subcommand)]
    Dist(DistCommand),
    /// Statistics of the number of growing sides.
    #[command(subcommand)]
    Growth(GrowthCommand),
    /// Markov chain of aggregation with the unit box.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Trace the most frequent self-aggregation results.
    Trace {
        lam: Partition,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_EXPAND_LIMIT)]
        expand_limit: usize,
    },
    /// Golden-rectangle iteration of a two-part partition.
    Fib {
        lam: String,
        #[arg(long, default_value_t = 9)]
        steps: usize,
    },
    /// Seeded Monte Carlo estimate of an aggregation distribution.
    Mc {
        x: String,
        y: String,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Treat X and Y as partitions and sample over rotations of Y.
        #[arg(long)]
        partition: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum DistCommand {
    /// Distribution of box results, e.g. `dist box 1,3 1,2`.
    Box { x: BoxDims, y: BoxDims },
    /// Distribution of partition results, e.g. `dist partition 3,1 2,1`.
    Partition {
        lam: Partition,
        mu: Partition,
        /// Use the permutation-and-overlap construction.
        #[arg(long)]
        combinatorial: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum GrowthCommand {
    /// P(X = k) for k = 0..l.
    Pmf { x: BoxDims, y: BoxDims },
    /// The p-th moment of X.
    Moment {
        x: BoxDims,
        y: BoxDims,
        #[arg(short = 'p', long = "power", default_value_t = 1)]
        p: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum ChainCommand {
    /// Distribution after N steps from X.
    Unit {
        x: BoxDims,
        #[arg(long)]
        steps: usize,
    },
    /// N-step transition probability from X to Z.
    Nstep {
        x: BoxDims,
        z: BoxDims,
        #[arg(long)]
        steps: usize,
    },
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CliOutcome {
    fn usage(message: String) -> Self {
        Self { code: 2, stdout: String::new(), stderr: message }
    }
}

struct UsageError {
    argument: &'static str,
    source: AggError,
}

fn blame(argument: &'static str) -> impl FnOnce(AggError) -> UsageError {
    move |source| UsageError { argument, source }
}

pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                CliOutcome { code, stdout: text, stderr: String::new() }
            } else {
                CliOutcome::usage(text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(record) => {
            let stdout = match cli.format {
                Format::Json => record.to_json(),
                Format::Csv => record.to_csv(),
            };
            CliOutcome { code: 0, stdout, stderr: String::new() }
        }
        Err(UsageError { argument, source }) => {
            CliOutcome::usage(format!("error: invalid argument <{argument}>: {source}\n"))
        }
    }
}

fn execute(command: &Command) -> Result<OutputRecord, UsageError> {
    Ok(match command {
        Command::Dist(DistCommand::Box { x, y }) => {
            let d = box_distribution(x, y).map_err(blame("Y"))?;
            let params = json!({ "x": x.sides(), "y": y.sides() });
            distribution_record(RecordKind::BoxDist, params, &d)
        }
        Command::Dist(DistCommand::Partition { lam, mu, combinatorial }) => {
            let d = if *combinatorial {
                partition_distribution_combinatorial(lam, mu)
            } else {
                partition_distribution(lam, mu)
            }
            .map_err(blame("M"))?;
            let params = json!({
                "lambda": lam.parts(),
                "mu": mu.parts(),
                "method": if *combinatorial { "combinatorial" } else { "geometric" },
            });
            distribution_record(RecordKind::PartitionDist, params, &d)
        }
        Command::Growth(GrowthCommand::Pmf { x, y }) => {
            let (big, small) = normalize_pair(x, y).map_err(blame("Y"))?;
            let pmf = growth_count_pmf(&big, &small).map_err(blame("Y"))?;
            let params = json!({ "x": big.sides(), "y": small.sides() });
            growth_record(params, &pmf)
        }
        Command::Growth(GrowthCommand::Moment { x, y, p }) => {
            let (big, small) = normalize_pair(x, y).map_err(blame("Y"))?;
            let value = moment(&big, &small, *p).map_err(blame("Y"))?;
            let params = json!({ "x": big.sides(), "y": small.sides(), "p": p });
            moment_record(params, *p, &value)
        }
        Command::Chain(ChainCommand::Unit { x, steps }) => {
            let d = unit_box_evolve(x, *steps);
            chain_record(json!({ "x": x.sides(), "steps": steps }), &d)
        }
        Command::Chain(ChainCommand::Nstep { x, z, steps }) => {
            let p = n_step_probability(x, z, *steps).map_err(blame("Z"))?;
            let d = StateDistribution::from_entries([(z.clone(), p)]);
            let params = json!({ "x": x.sides(), "z": z.sides(), "steps": steps });
            let mut record = chain_record(params, &d);
            if record.entries.is_empty() {
                let zero = num_traits::Zero::zero();
                record.entries.push(crate::output::Entry::for_outcome(z, Some(&zero)));
            }
            record
        }
        Command::Trace { lam, steps, expand_limit } => {
            let tree = most_frequent_trace(lam, *steps, *expand_limit);
            let params = json!({ "lambda": lam.parts(), "steps": steps, "expand_limit": expand_limit });
            trace_record(params, &tree)
        }
        Command::Fib { lam, steps } => {
            let lam: Partition = lam.parse().map_err(blame("L"))?;
            let rows = fibonacci_limit_report(&lam, *steps).map_err(blame("L"))?;
            ratio_record(json!({ "lambda": lam.parts(), "steps": steps }), &rows)
        }
        Command::Mc { x, y, trials, seed, partition } => {
            let cfg = SampleConfig::new(*trials, *seed).map_err(blame("trials"))?;
            let params = json!({
                "x": x, "y": y, "trials": trials, "seed": seed, "partition": partition,
            });
            if *partition {
                let lam: Partition = x.parse().map_err(blame("X"))?;
                let mu: Partition = y.parse().map_err(blame("Y"))?;
                let e = estimate_partition_distribution(&lam, &mu, &cfg).map_err(blame("Y"))?;
                mc_record(params, &e)
            } else {
                let xb: BoxDims = x.parse().map_err(blame("X"))?;
                let yb: BoxDims = y.parse().map_err(blame("Y"))?;
                let e = estimate_distribution(&xb, &yb, &cfg).map_err(blame("Y"))?;
                mc_record(params, &e)
            }
        }
    })
}
