//! Run configuration: defaults, `DZV_PRECISION`, an optional TOML file and
//! command-line flags, in increasing order of precedence.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const PRECISION_ENV: &str = "DZV_PRECISION";
pub const DEFAULT_PRECISION: u32 = 192;
pub const DEFAULT_SEED: u64 = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    SumFormula,
    WeightedSum,
    Harmonic,
    GkzParity,
    Theorem1,
    Corollary1,
    Prop1,
    Lemma1,
    Eq26,
    EulerBernoulli,
    Ramanujan,
    Corollary2Chain,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::SumFormula,
        Suite::WeightedSum,
        Suite::Harmonic,
        Suite::GkzParity,
        Suite::Theorem1,
        Suite::Corollary1,
        Suite::Prop1,
        Suite::Lemma1,
        Suite::Eq26,
        Suite::EulerBernoulli,
        Suite::Ramanujan,
        Suite::Corollary2Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SumFormula => "sum-formula",
            Suite::WeightedSum => "weighted-sum",
            Suite::Harmonic => "harmonic",
            Suite::GkzParity => "gkz-parity",
            Suite::Theorem1 => "theorem1",
            Suite::Corollary1 => "corollary1",
            Suite::Prop1 => "prop1",
            Suite::Lemma1 => "lemma1",
            Suite::Eq26 => "eq26",
            Suite::EulerBernoulli => "euler-bernoulli",
            Suite::Ramanujan => "ramanujan",
            Suite::Corollary2Chain => "corollary2-chain",
        }
    }

    /// Whether the suite reads a table of double zeta values.
    pub fn needs_table(self) -> bool {
        !matches!(
            self,
            Suite::EulerBernoulli | Suite::Ramanujan | Suite::Corollary2Chain
        )
    }

    /// `None` if weight `l` satisfies the suite's hypothesis, otherwise the
    /// reason it is skipped.
    pub fn skip_reason(self, l: u32) -> Option<String> {
        let ok = match self {
            Suite::Harmonic => l >= 4,
            Suite::GkzParity | Suite::Corollary1 | Suite::EulerBernoulli => l >= 4 && l % 2 == 0,
            Suite::Ramanujan | Suite::Corollary2Chain => l >= 8 && l % 6 == 2,
            _ => l >= 3,
        };
        if ok {
            return None;
        }
        Some(match self {
            Suite::Harmonic => "needs l >= 4".to_string(),
            Suite::GkzParity | Suite::Corollary1 | Suite::EulerBernoulli => {
                "needs even l >= 4".to_string()
            }
            Suite::Ramanujan | Suite::Corollary2Chain => "needs l ≡ 2 (mod 6) and l >= 8".to_string(),
            _ => "needs l >= 3".to_string(),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Suite, CliError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                CliError::Usage(format!("unknown suite '{s}' (known: {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<OutputFormat, CliError> {
        match s.trim() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            _ => Err(CliError::Usage(format!(
                "unknown format '{s}' (expected json, csv or text)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub precision_bits: u32,
    /// Tolerance is `10^-tolerance_exponent`.
    pub tolerance_exponent: u32,
    pub weight_min: u32,
    pub weight_max: u32,
    pub suites: Vec<Suite>,
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    pub parallelism: usize,
    pub seed: u64,
}

/// Tolerance exponent used when none is given: about 0.3 digits per bit,
/// less a 10-digit margin.
pub fn default_tolerance_exponent(bits: u32) -> u32 {
    (bits * 3 / 10).saturating_sub(10).max(1)
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            precision_bits: DEFAULT_PRECISION,
            tolerance_exponent: default_tolerance_exponent(DEFAULT_PRECISION),
            weight_min: 3,
            weight_max: 16,
            suites: Suite::ALL.to_vec(),
            output_format: OutputFormat::Text,
            output_path: None,
            parallelism: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: DEFAULT_SEED,
        }
    }
}

/// Optional settings with the same keys as the command-line flags.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub precision: Option<u32>,
    pub tol: Option<String>,
    pub weights: Option<String>,
    pub suites: Option<Vec<String>>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
}

impl Overrides {
    pub fn from_toml_file(path: &Path) -> Result<Overrides, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    fn apply(&self, cfg: &mut RunConfig, tol_set: &mut bool) -> Result<(), CliError> {
        if let Some(p) = self.precision {
            cfg.precision_bits = p;
        }
        if let Some(t) = &self.tol {
            cfg.tolerance_exponent = parse_tolerance(t)?;
            *tol_set = true;
        }
        if let Some(w) = &self.weights {
            (cfg.weight_min, cfg.weight_max) = parse_weights(w)?;
        }
        if let Some(s) = &self.suites {
            cfg.suites = parse_suites(s)?;
        }
        if let Some(f) = &self.format {
            cfg.output_format = f.parse()?;
        }
        if let Some(o) = &self.out {
            cfg.output_path = Some(o.clone());
        }
        if let Some(j) = self.jobs {
            cfg.parallelism = j;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        Ok(())
    }
}

impl RunConfig {
    /// Layers `env_precision`, then `file`, then `flags` over the defaults.
    pub fn resolve(flags: &Overrides, file: Option<&Overrides>, env_precision: Option<&str>) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        let mut tol_set = false;
        if let Some(p) = env_precision {
            cfg.precision_bits = p
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{PRECISION_ENV}={p} is not a bit count")))?;
        }
        if let Some(f) = file {
            f.apply(&mut cfg, &mut tol_set)?;
        }
        flags.apply(&mut cfg, &mut tol_set)?;
        if !tol_set {
            cfg.tolerance_exponent = default_tolerance_exponent(cfg.precision_bits);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.precision_bits < dzv::numerics::MIN_PRECISION {
            return Err(CliError::Usage(format!(
                "precision must be at least {} bits",
                dzv::numerics::MIN_PRECISION
            )));
        }
        if self.weight_min > self.weight_max {
            return Err(CliError::Usage(format!(
                "empty weight range {}..{}",
                self.weight_min, self.weight_max
            )));
        }
        if self.parallelism == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        if self.suites.is_empty() {
            return Err(CliError::Usage("no suites selected".into()));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> dzv::Rational {
        let ten = dzv::numerics::integer(10);
        (0..self.tolerance_exponent).fold(dzv::numerics::integer(1), |acc, _| acc / &ten)
    }

    pub fn precision_ctx(&self) -> Result<dzv::PrecisionCtx, CliError> {
        Ok(dzv::PrecisionCtx::new(self.precision_bits, self.tolerance())?)
    }
}

/// `"1e-40"` to `40`.
pub fn parse_tolerance(s: &str) -> Result<u32, CliError> {
    let bad = || CliError::Usage(format!("tolerance must look like 1e-N, got '{s}'"));
    let rest = s
        .trim()
        .strip_prefix("1e-")
        .or_else(|| s.trim().strip_prefix("1E-"))
        .ok_or_else(bad)?;
    rest.parse().map_err(|_| bad())
}

/// `"A..B"` (inclusive), `"A..=B"` or a single `"A"`.
pub fn parse_weights(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("weights must look like A..B, got '{s}'"));
    let num = |x: &str| x.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let w = num(s)?;
            (w, w)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Suite names, each entry possibly comma-separated; duplicates dropped.
pub fn parse_suites(names: &[String]) -> Result<Vec<Suite>, CliError> {
    let mut out = Vec::new();
    for part in names.iter().flat_map(|n| n.split(',')) {
        if part.trim().is_empty() {
            continue;
        }
        let s: Suite = part.parse()?;
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}
