//! `sswalk` — spectral analyses of the one-defect split-step quantum walk.
//!
//! Every command reads a JSON config (`--config`), merges any command-line
//! overrides, and writes deterministic CSV/JSON; repeated runs with the
//! same inputs produce byte-identical files. Exit codes: 0 ok, 2 config
//! error, 3 numerical failure, 4 resource limit.

mod commands;
mod config;
mod output;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::Effective;
use config::{parse_anchors, parse_sign, parse_sites, parse_state_literal, RunConfig};
use sswalk::spectral::DEFAULT_EXCLUSION;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or arguments (exit 2).
    Config(String),
    /// A numerical operation failed or refused (exit 3).
    Numerical(String),
    /// A resource budget was exceeded (exit 4).
    Resource(String),
    /// I/O trouble (exit 1).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg)
            | CliError::Numerical(msg)
            | CliError::Resource(msg)
            | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<sswalk::Error> for CliError {
    fn from(err: sswalk::Error) -> Self {
        use sswalk::Error::*;
        let text = err.to_string();
        match err {
            UnitarityViolation { .. } | DegenerateShift { .. } | UnnormalizedChi { .. }
            | ShapeMismatch { .. } | InvalidArgument(_) | DimensionError { .. } => {
                CliError::Config(text)
            }
            ResourceLimit { .. } => CliError::Resource(text),
            _ => CliError::Numerical(text),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "sswalk",
    version,
    about = "Split-step quantum walk on Z^n with one coin defect: spectra, bound states, and time-averaged measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form spectral summary (μ, V₀, band, arc, multiplicities) as JSON.
    Info(CommonArgs),
    /// Torus spectrum of U with band-coverage metrics.
    Spectrum(CommonArgs),
    /// Birth eigenvector CSV, or the finite-support family report when
    /// anchors are given (n ≥ 2).
    Birth(CommonArgs),
    /// Run the walk on an exact light-cone window and serialize the state.
    Evolve(CommonArgs),
    /// Analytic vs empirical time-averaged measure (n = 1).
    Measure(CommonArgs),
    /// Resolvent integral (outside the band) or divergence probe (inside).
    Probe(CommonArgs),
    /// Spectral summaries over a p grid.
    Sweep(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Info(args)
            | Command::Spectrum(args)
            | Command::Birth(args)
            | Command::Evolve(args)
            | Command::Measure(args)
            | Command::Probe(args)
            | Command::Sweep(args) => args,
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output file (default depends on the command).
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Torus period for dense spectra.
    #[arg(long, value_name = "N")]
    torus: Option<i64>,
    /// Walk steps / Cesàro horizon.
    #[arg(long, value_name = "T")]
    steps: Option<usize>,
    /// Eigenvalue branch: + or -.
    #[arg(long, value_name = "+|-", allow_hyphen_values = true)]
    sign: Option<String>,
    /// Clip serialized sites to |x| ≤ R.
    #[arg(long, value_name = "R")]
    radius: Option<i64>,
    /// Site range A..B for measure comparisons.
    #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
    sites: Option<String>,
    /// Probe point λ.
    #[arg(long, value_name = "X", allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// Anchors a,b;a,b;… for the n ≥ 2 birth family.
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    anchors: Option<String>,
    /// Print the merged configuration and exit.
    #[arg(long)]
    dump_config: bool,
}

fn load_config(args: &CommonArgs) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|err| CliError::Config(format!("reading {}: {err}", args.config.display())))?;
    let mut config: RunConfig = serde_json::from_str(&text)
        .map_err(|err| CliError::Config(format!("parsing {}: {err}", args.config.display())))?;
    // command-line overrides
    if args.out.is_some() {
        config.out = args.out.clone();
    }
    if args.torus.is_some() {
        config.torus = args.torus;
    }
    if args.steps.is_some() {
        config.steps = args.steps;
    }
    if args.sign.is_some() {
        config.sign = args.sign.clone();
    }
    if args.radius.is_some() {
        config.radius = args.radius;
    }
    if args.sites.is_some() {
        config.sites = args.sites.clone();
    }
    if args.lambda.is_some() {
        config.lambda = args.lambda;
    }
    if args.anchors.is_some() {
        config.anchors = args.anchors.clone();
    }
    Ok(config)
}

fn effective(config: &RunConfig) -> Result<Effective, CliError> {
    let params = config.walk_parameters()?;
    let state_terms = config
        .initial_state
        .as_deref()
        .map(|text| parse_state_literal(text, params.n()))
        .transpose()?;
    Ok(Effective {
        params,
        torus: config.torus.unwrap_or(400),
        steps: config.steps,
        sign: config
            .sign
            .as_deref()
            .map(parse_sign)
            .transpose()?
            .unwrap_or(sswalk::Sign::Plus),
        radius: config.radius,
        sites: config
            .sites
            .as_deref()
            .map(parse_sites)
            .transpose()?
            .unwrap_or((-20, 20)),
        lambda: config.lambda,
        levels: config.levels.unwrap_or(4),
        exclusion: config.exclusion.unwrap_or(DEFAULT_EXCLUSION),
        anchors: config.anchors.as_deref().map(parse_anchors).transpose()?,
        state_terms,
        sweep_p: config
            .sweep_p
            .clone()
            .unwrap_or_else(|| (1..=9).map(|i| i as f64 / 10.0).collect()),
        out: config.out.clone(),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let args = cli.command.args();
    let config = load_config(args)?;
    if args.dump_config {
        println!(
            "{}",
            serde_json::to_string_pretty(&config).map_err(|err| CliError::Io(err.to_string()))?
        );
        return Ok(());
    }
    let eff = effective(&config)?;
    match &cli.command {
        Command::Info(_) => commands::cmd_info(&eff),
        Command::Spectrum(_) => commands::cmd_spectrum(&eff),
        Command::Birth(_) => commands::cmd_birth(&eff),
        Command::Evolve(_) => commands::cmd_evolve(&eff),
        Command::Measure(_) => commands::cmd_measure(&eff),
        Command::Probe(_) => commands::cmd_probe(&eff),
        Command::Sweep(_) => commands::cmd_sweep(&eff),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
