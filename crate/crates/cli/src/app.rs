use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use dzv::dzeta::{double_zeta, IndexPair};
use dzv::PrecisionCtx;

use crate::config::{Overrides, RunConfig, DEFAULT_PRECISION, PRECISION_ENV};
use crate::{report, suites, CliError, EXIT_FAILED, EXIT_OK};

#[derive(Debug, Parser)]
#[command(name = "dzv", version, about = "Certified double zeta values and restricted sum formula checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Bernoulli number B_m as an exact fraction.
    Bernoulli { m: u64 },
    /// Print the certified digits of ζ(l1, l2).
    Dzeta {
        l1: u32,
        l2: u32,
        /// Working precision in bits [env: DZV_PRECISION, default 192]
        #[arg(short, long)]
        precision: Option<u32>,
    },
    /// Run verification suites over a range of weights.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Comma-separated suite names (default: all).
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    /// Inclusive weight range, e.g. 3..12.
    #[arg(long)]
    weights: Option<String>,
    /// Working precision in bits.
    #[arg(long)]
    precision: Option<u32>,
    /// Residual tolerance, e.g. 1e-40.
    #[arg(long)]
    tol: Option<String>,
    /// json, csv or text.
    #[arg(long)]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for the functional-equation sample points.
    #[arg(long)]
    seed: Option<u64>,
    /// TOML file with the same keys as these flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl VerifyArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            precision: self.precision,
            tol: self.tol.clone(),
            weights: self.weights.clone(),
            suites: self.suites.clone(),
            format: self.format.clone(),
            out: self.out.clone(),
            jobs: self.jobs,
            seed: self.seed,
        }
    }
}

fn env_precision() -> Option<String> {
    std::env::var(PRECISION_ENV).ok().filter(|s| !s.trim().is_empty())
}

fn cmd_bernoulli(m: u64) -> Result<i32, CliError> {
    let m = usize::try_from(m).map_err(|_| CliError::Usage(format!("index {m} is too large")))?;
    println!("{}", dzv::bernoulli::bernoulli(m));
    Ok(EXIT_OK)
}

fn cmd_dzeta(l1: u32, l2: u32, precision: Option<u32>) -> Result<i32, CliError> {
    let pair = IndexPair::new(l1, l2)?;
    let bits = match (precision, env_precision()) {
        (Some(p), _) => p,
        (None, Some(env)) => env
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{PRECISION_ENV}={env} is not a bit count")))?,
        (None, None) => DEFAULT_PRECISION,
    };
    let ctx = PrecisionCtx::from_bits(bits)?;
    let v = double_zeta(pair, &ctx)?;
    match v.certified_digits() {
        Some(d) => println!("{d} +/- {}", v.radius().to_sci_string()),
        None => println!("{} +/- {}", v.mid_sci_string(20), v.radius().to_sci_string()),
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let file = args
        .config
        .as_deref()
        .map(Overrides::from_toml_file)
        .transpose()?;
    let cfg = RunConfig::resolve(&args.overrides(), file.as_ref(), env_precision().as_deref())?;
    let reports = suites::run(&cfg)?;
    let text = report::render(&reports, cfg.output_format)?;
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(if reports.iter().all(|r| r.all_passed()) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Bernoulli { m } => cmd_bernoulli(*m),
        Command::Dzeta { l1, l2, precision } => cmd_dzeta(*l1, *l2, *precision),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dzv: {e}");
            e.exit_code()
        }
    }
}
