//! Command-line front end for proper likelihood-ratio ROC curves.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error.

mod commands;
mod data;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl From<proper_roc::Error> for CliError {
    fn from(e: proper_roc::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "proper-roc",
    version,
    about = "Proper (concave, continuous, non-decreasing) ROC curves from likelihood-ratio rules",
    after_help = "Exit codes: 0 success, 2 usage error, 3 data error.\n\
        Curve CSV files carry a `# kind=exact|sampled|staircase` tag line; exact curves\n\
        serialize rational segments `x_lo,x_hi,slope,intercept`, sampled and staircase\n\
        curves serialize `fpr,tpr` points."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Treat the single feature column as categorical and build the exact
    /// finite-measure LR curve.
    ExactModel,
    /// Fit Gaussian classes by maximum likelihood and Monte Carlo the QDA
    /// (likelihood ratio) proper curve.
    Qda,
    /// Fit Gaussian classes and report the binormal curve of the best
    /// linear score.
    Linear,
    /// Kernel flexible Bayes likelihood ratio, Monte Carlo proper curve.
    FlexibleBayes,
    /// Staircase empirical ROC of the flexible Bayes scores of the rows.
    Empirical,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ExactModel => "exact-model",
            Method::Qda => "qda",
            Method::Linear => "linear",
            Method::FlexibleBayes => "flexible-bayes",
            Method::Empirical => "empirical",
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct CommonOpts {
    /// Bandwidth rule: silverman, scott, or fixed:v1,v2,...
    #[arg(long, default_value = "silverman")]
    pub bandwidth: String,
    /// Number of threshold grid points
    #[arg(long, default_value_t = 512)]
    pub grid: usize,
    /// Monte Carlo replication count B
    #[arg(long, default_value_t = 20000)]
    pub replications: usize,
    /// RNG seed (runs with equal inputs and seed are byte-identical)
    #[arg(long, default_value_t = 17)]
    pub seed: u64,
    /// Curve CSV output path (multi-curve commands add per-curve suffixes)
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    /// SVG plot output path
    #[arg(long)]
    pub out_svg: Option<PathBuf>,
    /// Plain-text report output path
    #[arg(long)]
    pub out_report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce a built-in analytic example, or run a model config file.
    ///
    /// Built-in names: three-rectangles, finite-table, gaussian-4.3,
    /// polya-poisson. Any other argument is read as a model config path
    /// (key = value lines; see the README).
    Example {
        name: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Estimate a ROC curve from labeled CSV data with one method.
    Roc {
        csv: PathBuf,
        /// Name of the label column
        #[arg(long)]
        label_col: String,
        /// Label value marking the positive class (never inferred)
        #[arg(long)]
        positive: String,
        #[arg(long, value_enum, default_value_t = Method::FlexibleBayes)]
        method: Method,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run the four-method comparison (qda, linear, flexible-bayes,
    /// empirical) on labeled CSV data.
    Compare {
        csv: PathBuf,
        /// Name of the label column
        #[arg(long)]
        label_col: String,
        /// Label value marking the positive class (never inferred)
        #[arg(long)]
        positive: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

fn validate_opts(opts: &CommonOpts) -> Result<(), CliError> {
    if opts.replications == 0 {
        return Err(CliError::Usage("--replications must be at least 1".to_string()));
    }
    if opts.grid < 2 {
        return Err(CliError::Usage("--grid must be at least 2".to_string()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Example { opts, .. }
        | Command::Roc { opts, .. }
        | Command::Compare { opts, .. } => validate_opts(opts)?,
    }
    match cli.command {
        Command::Example { name, opts } => commands::run_example(&name, &opts),
        Command::Roc {
            csv,
            label_col,
            positive,
            method,
            opts,
        } => commands::run_roc(&csv, &label_col, &positive, method, &opts),
        Command::Compare {
            csv,
            label_col,
            positive,
            opts,
        } => commands::run_compare(&csv, &label_col, &positive, &opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
