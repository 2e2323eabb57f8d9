//! Serializable reports. Every number is a decimal string.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use dzv::identities::{CheckReport, CheckValue};
use dzv::numerics::{dyadic_sci_string, Mag};
use dzv::{ComplexBall, RealBall};

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub label: String,
    pub weight: u32,
    pub lhs: String,
    pub rhs: String,
    pub residual_midpoint: String,
    pub residual_radius: String,
    pub exact: bool,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped_reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn digits_for(prec: u32) -> usize {
    ((f64::from(prec) * std::f64::consts::LOG10_2) as usize).clamp(6, 60)
}

fn real_string(b: &RealBall) -> String {
    format!(
        "{} +/- {}",
        b.mid_sci_string(digits_for(b.precision())),
        b.radius().to_sci_string()
    )
}

fn complex_mid(b: &ComplexBall) -> String {
    let d = digits_for(b.precision());
    let im = b.im().midpoint();
    let sign = if im.is_negative() { "-" } else { "+" };
    format!(
        "{} {sign} {}i",
        dyadic_sci_string(b.re().midpoint(), d),
        dyadic_sci_string(&im.abs(), d)
    )
}

fn value_string(v: &CheckValue) -> String {
    match v {
        CheckValue::Real(b) => real_string(b),
        CheckValue::Complex(b) => format!("{} +/- {}", complex_mid(b), b.radius().to_sci_string()),
        CheckValue::Rational(r) => r.to_string(),
        CheckValue::Pi(p) => p.to_string(),
    }
}

fn residual_parts(v: &CheckValue) -> (String, String) {
    match v {
        CheckValue::Real(b) => (
            b.mid_sci_string(digits_for(b.precision())),
            b.radius().to_sci_string(),
        ),
        CheckValue::Complex(b) => (complex_mid(b), b.radius().to_sci_string()),
        CheckValue::Rational(r) => (r.to_string(), Mag::ZERO.to_sci_string()),
        CheckValue::Pi(p) => (p.to_string(), Mag::ZERO.to_sci_string()),
    }
}

/// `10^-e` as text.
pub fn tolerance_string(e: u32) -> String {
    format!("1e-{e}")
}

impl CheckRecord {
    pub fn from_report(r: &CheckReport, tolerance_exponent: u32) -> CheckRecord {
        let (residual_midpoint, residual_radius) = residual_parts(&r.residual);
        CheckRecord {
            label: r.label.clone(),
            weight: r.weight,
            lhs: value_string(&r.lhs),
            rhs: value_string(&r.rhs),
            residual_midpoint,
            residual_radius,
            exact: r.exact,
            passed: r.passed,
            tolerance: r.tolerance.as_ref().map(|_| tolerance_string(tolerance_exponent)),
            skipped_reason: None,
            error: None,
            note: r.note.clone(),
        }
    }

    pub fn skipped(label: &str, weight: u32, reason: String) -> CheckRecord {
        CheckRecord {
            label: label.to_string(),
            weight,
            lhs: String::new(),
            rhs: String::new(),
            residual_midpoint: String::new(),
            residual_radius: String::new(),
            exact: false,
            passed: false,
            tolerance: None,
            skipped_reason: Some(reason),
            error: None,
            note: None,
        }
    }

    pub fn errored(label: &str, weight: u32, error: String) -> CheckRecord {
        CheckRecord {
            error: Some(error),
            skipped_reason: None,
            ..CheckRecord::skipped(label, weight, String::new())
        }
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped_reason.is_some()
    }
}

/// One suite over the configured weight range. Skipped records are kept in
/// `checks`, so `passed_count + failed_count + skipped_count = checks.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub passed_count: usize,
    pub failed_count: usize,
    pub skipped_count: usize,
    /// Milliseconds spent evaluating this suite's checks.
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, config: &RunConfig, checks: Vec<CheckRecord>, wall_time: Duration) -> SuiteReport {
        let skipped_count = checks.iter().filter(|c| c.is_skipped()).count();
        let passed_count = checks.iter().filter(|c| c.passed).count();
        SuiteReport {
            suite: suite.to_string(),
            config: config.clone(),
            failed_count: checks.len() - skipped_count - passed_count,
            passed_count,
            skipped_count,
            wall_time_ms: wall_time.as_millis() as u64,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed_count == 0
    }
}

pub fn to_json(reports: &[SuiteReport]) -> Result<String, CliError> {
    let text = if let [single] = reports {
        serde_json::to_string_pretty(single)?
    } else {
        serde_json::to_string_pretty(reports)?
    };
    Ok(text + "\n")
}

/// Inverse of [`to_json`]: accepts an object or an array.
pub fn from_json(text: &str) -> Result<Vec<SuiteReport>, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    Ok(if value.is_array() {
        serde_json::from_value(value)?
    } else {
        vec![serde_json::from_value(value)?]
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub const CSV_HEADER: &str = "suite,label,weight,passed,exact,residual_midpoint,residual_radius";

/// `passed` is `true`, `false` or `skipped`.
pub fn to_csv(reports: &[SuiteReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        for c in &r.checks {
            let passed = if c.is_skipped() {
                "skipped".to_string()
            } else {
                c.passed.to_string()
            };
            let row = [
                csv_field(&r.suite),
                csv_field(&c.label),
                c.weight.to_string(),
                passed,
                c.exact.to_string(),
                csv_field(&c.residual_midpoint),
                csv_field(&c.residual_radius),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

pub fn to_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for c in &r.checks {
            let _ = if let Some(reason) = &c.skipped_reason {
                writeln!(out, "[SKIP] {} l={}: {reason}", c.label, c.weight)
            } else if let Some(err) = &c.error {
                writeln!(out, "[ERR ] {} l={}: {err}", c.label, c.weight)
            } else {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                let kind = if c.exact { " (exact)" } else { "" };
                writeln!(
                    out,
                    "[{tag}] {} l={}{kind} residual {} +/- {}",
                    c.label, c.weight, c.residual_midpoint, c.residual_radius
                )
            };
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} skipped ({} ms)",
            r.suite, r.passed_count, r.failed_count, r.skipped_count, r.wall_time_ms
        );
    }
    out
}

pub fn render(reports: &[SuiteReport], format: OutputFormat) -> Result<String, CliError> {
    Ok(match format {
        OutputFormat::Json => to_json(reports)?,
        OutputFormat::Csv => to_csv(reports),
        OutputFormat::Text => to_text(reports),
    })
}
