//! Command-line front end: argument parsing and exit-code mapping only; the
//! command logic lives in `embedq::cli`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use embedq::cli::{
    cmd_baseline, cmd_bench, cmd_gen, cmd_score, cmd_sweep, emit, parse_count_list, render_reports,
    BaselineMetric, BaselineOptions, BenchOptions, GenOptions, GenTarget, OutputFormat,
    ScoreOptions, SweepOptions,
};
use embedq::memtrack::TrackingAllocator;

#[global_allocator]
static ALLOC: TrackingAllocator = TrackingAllocator;

#[derive(Parser)]
#[command(
    name = "embedq",
    version,
    about = "Score local/global shape preservation of embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliFormat {
    Json,
    Csv,
}

impl From<CliFormat> for OutputFormat {
    fn from(f: CliFormat) -> OutputFormat {
        match f {
            CliFormat::Json => OutputFormat::Json,
            CliFormat::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CliDataset {
    Rings,
    Swissroll,
}

#[derive(Subcommand)]
enum Command {
    /// Score an embedding CSV against its original CSV.
    Score {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        /// Label column name (default: a column named "label", if present).
        #[arg(long)]
        labels_col: Option<String>,
        /// Force unsupervised mode with this many clusters.
        #[arg(long)]
        clusters: Option<usize>,
        #[arg(long, value_enum, default_value_t = CliFormat::Json)]
        format: CliFormat,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG scatter of the 2-d embedding, colored by cluster.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Unsupervised scores across a list of cluster counts.
    Sweep {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        /// Comma-separated cluster counts, e.g. 3,4,5,6,7.
        #[arg(long)]
        clusters: String,
        #[arg(long)]
        labels_col: Option<String>,
        #[arg(long, value_enum, default_value_t = CliFormat::Json)]
        format: CliFormat,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rank-based baseline metrics (trustworthiness, continuity, LCMC).
    Baseline {
        #[arg(long)]
        original: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
        /// Neighborhood size (default: max(1, n/100)).
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated subset of trustworthiness,continuity,lcmc.
        #[arg(long)]
        metrics: Option<String>,
        #[arg(long, value_enum, default_value_t = CliFormat::Json)]
        format: CliFormat,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic dataset CSV.
    Gen {
        #[arg(value_enum)]
        dataset: CliDataset,
        /// Points per ring (rings).
        #[arg(long, default_value_t = 500)]
        n_per_ring: usize,
        /// Total points (swissroll).
        #[arg(long, default_value_t = 1500)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Wall-time / peak-memory growth table: score pair vs trustworthiness.
    Bench {
        /// Comma-separated sample counts.
        #[arg(long, default_value = "1000,2000,4000")]
        n_list: String,
        #[arg(long, default_value_t = 50)]
        p: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn run(cli: Cli) -> embedq::Result<()> {
    match cli.command {
        Command::Score {
            original,
            embedding,
            labels_col,
            clusters,
            format,
            seed,
            out,
            svg,
        } => {
            let report = cmd_score(&ScoreOptions {
                original,
                embedding,
                labels_col,
                clusters,
                seed,
                svg,
            })?;
            emit(&render_reports(&[report], format.into()), out.as_deref())
        }
        Command::Sweep {
            original,
            embedding,
            clusters,
            labels_col,
            format,
            seed,
            out,
        } => {
            let reports = cmd_sweep(&SweepOptions {
                original,
                embedding,
                c_list: parse_count_list(&clusters)?,
                labels_col,
                seed,
            })?;
            emit(&render_reports(&reports, format.into()), out.as_deref())
        }
        Command::Baseline {
            original,
            embedding,
            k,
            metrics,
            format,
            seed,
            out,
        } => {
            let metrics = match metrics {
                Some(list) => BaselineMetric::parse_list(&list)?,
                None => BaselineMetric::all(),
            };
            let report = cmd_baseline(&BaselineOptions {
                original,
                embedding,
                k,
                metrics,
                seed,
            })?;
            emit(&render_reports(&[report], format.into()), out.as_deref())
        }
        Command::Gen {
            dataset,
            n_per_ring,
            n,
            seed,
            out,
        } => cmd_gen(&GenOptions {
            target: match dataset {
                CliDataset::Rings => GenTarget::Rings,
                CliDataset::Swissroll => GenTarget::SwissRoll,
            },
            n_per_ring,
            n,
            seed,
            out,
        }),
        Command::Bench { n_list, p, seed } => {
            let table = cmd_bench(&BenchOptions {
                n_list: parse_count_list(&n_list)?,
                p,
                seed,
            })?;
            emit(&table, None)
        }
    }
}

fn main() -> ExitCode {
    embedq::init_thread_pool_from_env();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
