//! Command-line front end: `radius`, `sweep`, `verify` and `check`.
//!
//! Exit codes: `0` success (or verdict pass), `1` usage, input or I/O
//! error, `2` verdict fail, `3` verdict inconclusive.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytic::{catalog, CatalogName, FunctionHandle};
use crate::error::Error;
use crate::operators::Scenario;
use crate::radii::{radius, ClassSpec, FormulaId, RadiusParams, RadiusResult, Variant};
use crate::verifier::{check_class_membership, circle_profile, verify_scenario, GridSpec, Verdict, VerifySettings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Header of `sweep` CSV output.
pub const SWEEP_HEADER: &str = "param,radius,quadratic_a,quadratic_b,quadratic_c";
const SWEEP_COLUMNS: [&str; 5] = ["param", "radius", "quadratic_a", "quadratic_b", "quadratic_c"];

/// Largest accepted `stop` of a sweep range.
pub const RANGE_STOP_MAX: f64 = 1e6;
/// Largest number of rows a sweep may produce.
pub const SWEEP_MAX_ROWS: usize = 1_000_000;

/// Extra seeded random points added to the polar grid of `check`.
const CHECK_RANDOM_POINTS: usize = 256;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Numeric(#[from] Error),
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the closed-form radius of one formula as JSON.
    Radius,
    /// Check a closed-form radius numerically on a scenario file.
    Verify,
    /// Tabulate radii over a range of one parameter.
    Sweep,
    /// Check a catalog function against a class.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "gftkit", version, about = "Radii of convexity for product-type integral operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
    /// JSON file with the same keys as the flags; its values override flags.
    #[arg(long = "config", global = true, value_name = "PATH")]
    pub config_file: Option<PathBuf>,
}

/// A numeric flag: one value, or `start:stop:step` for `sweep`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamArg {
    Value(f64),
    Range { start: f64, stop: f64, step: f64 },
}

impl FromStr for ParamArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("`{t}` is not a number"));
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(ParamArg::Value(num(v)?)),
            [a, b, c] => {
                let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
                if !(start > 0.0 && step > 0.0 && stop <= RANGE_STOP_MAX && stop >= start) {
                    return Err(format!("range `{s}` needs 0 < start <= stop <= {RANGE_STOP_MAX} and step > 0"));
                }
                Ok(ParamArg::Range { start, stop, step })
            }
            _ => Err(format!("`{s}` is neither a number nor start:stop:step")),
        }
    }
}

impl ParamArg {
    /// `start + k step` for all `k` with value `<= stop` (up to rounding).
    pub fn values(&self) -> CliResult<Vec<f64>> {
        match *self {
            ParamArg::Value(v) => Ok(vec![v]),
            ParamArg::Range { start, stop, step } => {
                let count = ((stop - start) / step + 1e-9).floor() + 1.0;
                if count > SWEEP_MAX_ROWS as f64 {
                    return usage(format!("range produces more than {SWEEP_MAX_ROWS} rows"));
                }
                Ok((0..count as usize).map(|k| start + k as f64 * step).collect())
            }
        }
    }
}

impl<'de> Deserialize<'de> for ParamArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(ParamArg::Value(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Every option of a run. Flags fill it first, then a `--config`
/// overrides the keys it sets.
///
/// Config files use the flag names as keys, e.g.
/// `{"formula": "thm23", "beta": 1, "M": "0.5:2.0:0.5"}`.
#[derive(Debug, Clone, Default, clap::Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Formula id: thm21, cor_convex, thm22, thm23, thm24_paper, thm24_rederived, cor25, thm26.
    #[arg(long, global = true)]
    pub formula: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<ParamArg>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<ParamArg>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub xi: Option<ParamArg>,
    /// Bound on the sum of |gamma_i|.
    #[arg(long = "M", global = true, allow_hyphen_values = true)]
    #[serde(rename = "M")]
    pub m: Option<ParamArg>,
    /// Bound on the sum of |lambda_j|.
    #[arg(long = "N", global = true, allow_hyphen_values = true)]
    #[serde(rename = "N")]
    pub n: Option<ParamArg>,
    /// paper or rederived (mixed formulas).
    #[arg(long, global = true)]
    pub variant: Option<String>,
    /// Scenario JSON for `verify`.
    #[arg(long, global = true, value_name = "PATH")]
    pub scenario: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Samples per circle (`verify`) or angles per radius (`check`).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Bisection tolerance of the empirical radius (`verify`).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed of the random grid points used by class checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Catalog function for `check`: `name` or `name:param`.
    #[arg(long, global = true)]
    pub function: Option<String>,
    /// Class for `check`: lif, convex, univalent, ozaki, starlike; the
    /// parameter comes from --alpha, --beta or --xi.
    #[arg(long, global = true)]
    pub class: Option<String>,
    /// Accept beta > 1 with a warning.
    #[arg(long, global = true)]
    #[serde(default)]
    pub allow_large_beta: bool,
}

impl RunConfig {
    /// Overwrites every field that `other` sets.
    pub fn override_with(&mut self, other: RunConfig) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(formula, alpha, beta, xi, m, n, variant, scenario, out, format, samples, tol, seed, function, class);
        self.allow_large_beta |= other.allow_large_beta;
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    fn formula(&self) -> CliResult<FormulaId> {
        match &self.formula {
            Some(s) => Ok(s.parse()?),
            None => usage("--formula is required"),
        }
    }

    fn variant(&self) -> CliResult<Option<Variant>> {
        Ok(self.variant.as_deref().map(str::parse).transpose()?)
    }

    fn named_params(&self) -> [(&'static str, Option<ParamArg>); 5] {
        [("alpha", self.alpha), ("beta", self.beta), ("xi", self.xi), ("M", self.m), ("N", self.n)]
    }

    fn scalar(name: &str, p: Option<ParamArg>) -> CliResult<Option<f64>> {
        match p {
            None => Ok(None),
            Some(ParamArg::Value(v)) => Ok(Some(v)),
            Some(ParamArg::Range { .. }) => usage(format!("--{name} takes a single value here")),
        }
    }

    /// Radius parameters from scalar flags; `M` defaults to `fallback_m`.
    fn radius_params(&self, fallback: Option<(f64, f64)>) -> CliResult<RadiusParams> {
        let m = match (Self::scalar("M", self.m)?, fallback) {
            (Some(m), _) => m,
            (None, Some((m, _))) => m,
            (None, None) => return usage("--M is required"),
        };
        let mut p = RadiusParams::new(m);
        p.alpha = Self::scalar("alpha", self.alpha)?;
        p.beta = Self::scalar("beta", self.beta)?;
        p.xi = Self::scalar("xi", self.xi)?;
        p.n = Self::scalar("N", self.n)?.or(fallback.map(|(_, n)| n));
        p.variant = self.variant()?;
        p.allow_large_beta = self.allow_large_beta;
        Ok(p)
    }

    fn settings(&self) -> VerifySettings {
        let mut s = VerifySettings::default();
        if let Some(n) = self.samples {
            s.n_samples = n;
        }
        if let Some(tol) = self.tol {
            s.bisection_tol = tol;
        }
        if let Some(seed) = self.seed {
            s.class_grid.random_points = CHECK_RANDOM_POINTS;
            s.class_grid.seed = seed;
        }
        s
    }
}

/// Text to emit and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, code: EXIT_OK }
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serializes");
    s.push('\n');
    s
}

/// RFC 4180 text with LF record terminators.
fn to_csv<R, F>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = Vec<F>>,
    F: ToString,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("write to memory");
    for row in rows {
        w.write_record(row.iter().map(ToString::to_string)).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

fn sweep_row(param: Option<f64>, r: &RadiusResult) -> Vec<String> {
    let [a, b, c] = r.quadratic;
    let param = param.map(|p| p.to_string()).unwrap_or_default();
    vec![param, r.radius.to_string(), a.to_string(), b.to_string(), c.to_string()]
}

/// Runs one command without touching stdout or the exit status.
pub fn run(command: Command, config: &RunConfig) -> CliResult<Outcome> {
    match command {
        Command::Radius => run_radius(config),
        Command::Sweep => run_sweep(config),
        Command::Verify => run_verify(config),
        Command::Check => run_check(config),
    }
}

fn run_radius(config: &RunConfig) -> CliResult<Outcome> {
    let formula = config.formula()?;
    let result = radius(formula, &config.radius_params(None)?)?;
    Ok(Outcome::ok(match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&result),
        Format::Csv => to_csv(&SWEEP_COLUMNS, [sweep_row(None, &result)]),
    }))
}

fn run_sweep(config: &RunConfig) -> CliResult<Outcome> {
    let formula = config.formula()?;
    let ranged: Vec<_> =
        config.named_params().into_iter().filter(|(_, p)| matches!(p, Some(ParamArg::Range { .. }))).collect();
    let (name, range) = match ranged.as_slice() {
        [(name, Some(range))] => (*name, *range),
        [] => return usage("sweep needs one parameter given as start:stop:step"),
        _ => return usage("sweep takes exactly one range parameter"),
    };
    let mut results = Vec::new();
    for v in range.values()? {
        let mut c = config.clone();
        let slot = match name {
            "alpha" => &mut c.alpha,
            "beta" => &mut c.beta,
            "xi" => &mut c.xi,
            "M" => &mut c.m,
            _ => &mut c.n,
        };
        *slot = Some(ParamArg::Value(v));
        results.push((v, radius(formula, &c.radius_params(None)?)?));
    }
    Ok(Outcome::ok(match config.format.unwrap_or(Format::Csv) {
        Format::Csv => to_csv(&SWEEP_COLUMNS, results.iter().map(|(v, r)| sweep_row(Some(*v), r))),
        Format::Json => to_json(&results.iter().map(|(_, r)| r).collect::<Vec<_>>()),
    }))
}

/// Claim parameters implied by the class annotations of a scenario:
/// `alpha` the largest order, `beta` the largest Ozaki parameter, `xi` the
/// smallest starlikeness order of the quotient factors.
pub fn implied_params(s: &Scenario) -> (Option<f64>, Option<f64>, Option<f64>) {
    let fold = |it: &mut dyn Iterator<Item = f64>, max: bool| {
        it.fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| if max { a.max(v) } else { a.min(v) })))
    };
    let f_classes: Vec<ClassSpec> = s.fs().iter().filter_map(|t| t.class).collect();
    let alpha = fold(&mut f_classes.iter().filter_map(|c| c.lif_order()), true);
    let beta = fold(
        &mut f_classes.iter().filter_map(|c| match c {
            ClassSpec::Ozaki(b) => Some(*b),
            _ => None,
        }),
        true,
    );
    let xi = fold(
        &mut s.gs().iter().filter_map(|t| match t.class {
            Some(ClassSpec::Starlike(xi)) => Some(xi),
            Some(ClassSpec::Convex) => Some(0.5),
            _ => None,
        }),
        false,
    );
    (alpha, beta, xi)
}

fn run_verify(config: &RunConfig) -> CliResult<Outcome> {
    let formula = config.formula()?;
    let Some(path) = &config.scenario else {
        return usage("--scenario is required");
    };
    let text = read_file(path)?;
    let s = Scenario::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut params = config.radius_params(Some((s.m_bound(), s.n_bound())))?;
    let (alpha, beta, xi) = implied_params(&s);
    params.alpha = params.alpha.or(alpha);
    params.beta = params.beta.or(beta);
    params.xi = params.xi.or(if formula.uses_starlike_factors() { xi.or(Some(0.0)) } else { None });
    let claim = radius(formula, &params)?;
    let settings = config.settings();
    let report = verify_scenario(&s, &claim, &settings);
    let code = match report.verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let output = match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut rows = Vec::new();
            for row in &report.profile_check {
                for (theta, v) in circle_profile(&s, row.r, settings.n_samples)? {
                    rows.push([row.r, theta, v].to_vec());
                }
            }
            to_csv(&["r", "theta", "re_q"], rows)
        }
    };
    Ok(Outcome { output, code })
}

fn parse_function(spec: &str) -> CliResult<FunctionHandle> {
    let (name, param) = match spec.split_once(':') {
        Some((n, p)) => {
            let v = p.parse::<f64>().map_err(|_| CliError::Usage(format!("bad function parameter `{p}`")))?;
            (n, Some(v))
        }
        None => (spec, None),
    };
    let name: CatalogName = name.parse()?;
    Ok(catalog(name, param)?)
}

fn parse_class(config: &RunConfig) -> CliResult<ClassSpec> {
    let Some(tag) = config.class.as_deref() else {
        return usage("--class is required");
    };
    let need = |name: &str, p: Option<ParamArg>| -> CliResult<f64> {
        RunConfig::scalar(name, p)?.ok_or_else(|| CliError::Usage(format!("class {tag} needs --{name}")))
    };
    let class = match tag {
        "lif" => ClassSpec::Lif(need("alpha", config.alpha)?),
        "convex" => ClassSpec::Convex,
        "univalent" => ClassSpec::Univalent,
        "ozaki" => ClassSpec::Ozaki(need("beta", config.beta)?),
        "starlike" => ClassSpec::Starlike(need("xi", config.xi)?),
        other => return usage(format!("unknown class `{other}`")),
    };
    class.validate(config.allow_large_beta)?;
    Ok(class)
}

fn run_check(config: &RunConfig) -> CliResult<Outcome> {
    let Some(spec) = config.function.as_deref() else {
        return usage("--function is required");
    };
    let f = parse_function(spec)?;
    let class = parse_class(config)?;
    let mut grid =
        GridSpec { random_points: CHECK_RANDOM_POINTS, seed: config.seed.unwrap_or(0), ..GridSpec::default() };
    if let Some(n) = config.samples {
        grid.n_angles = n;
    }
    let report = check_class_membership(&f, class, &grid)?;
    let code = if report.pass { EXIT_OK } else { EXIT_FAIL };
    let output = match config.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report),
        Format::Csv => {
            let basis = serde_json::to_value(report.basis).expect("basis serializes");
            let row = vec![
                report.function.clone(),
                report.class.to_string(),
                basis.as_str().unwrap_or_default().to_string(),
                report.worst_margin.to_string(),
                report.worst_point[0].to_string(),
                report.worst_point[1].to_string(),
                report.pass.to_string(),
            ];
            to_csv(&["function", "class", "basis", "worst_margin", "worst_re", "worst_im", "pass"], [row])
        }
    };
    Ok(Outcome { output, code })
}

/// Parses `args`, applies a config file, runs, and writes the output.
/// Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> CliResult<i32> {
    let mut config = cli.config;
    if let Some(path) = &cli.config_file {
        config.override_with(RunConfig::from_json(&read_file(path)?)?);
    }
    let outcome = run(cli.command, &config)?;
    match &config.out {
        Some(path) => {
            std::fs::write(path, &outcome.output).map_err(|source| CliError::Io { path: path.clone(), source })?
        }
        None => print!("{}", outcome.output),
    }
    Ok(outcome.code)
}
