//! Flag and config-file handling.
//!
//! Every numeric flag may also be supplied through a flat `key=value` file
//! referenced by `--config`; explicit command-line flags win over file
//! entries, and file entries win over built-in defaults.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use djcm::ensemble::{CoherentCase, CoherentConfig, ModeCoupling};
use djcm::{Scenario, SystemParams};

pub type CliError = Box<dyn std::error::Error>;

#[derive(Debug, Parser)]
#[command(
    name = "djcm",
    about = "Exact simulation of the double Jaynes-Cummings model",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of the block Hamiltonians over a range of Fock pairs.
    Spectrum(Opts),
    /// Vacuum Rabi oscillation time series (per-block inversion signals).
    Rabi(Opts),
    /// Coherent-state ensemble series with collapse/revival analysis.
    Revival(Opts),
    /// Formula audit: hard numeric checks plus informational residuals.
    Verify(Opts),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    I,
    II,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightingArg {
    Twin,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Opts {
    /// Which Bell pair the initial state is built from.
    #[arg(long, value_enum)]
    pub scenario: Option<ScenarioArg>,

    /// Superposition angle: the Phi-type amplitude is cos(theta), the
    /// Psi-type one sin(theta).
    #[arg(long)]
    pub theta: Option<f64>,

    #[arg(long = "gA")]
    pub g_a: Option<f64>,

    #[arg(long = "gB")]
    pub g_b: Option<f64>,

    #[arg(long = "wA")]
    pub w_a: Option<f64>,

    #[arg(long = "wB")]
    pub w_b: Option<f64>,

    #[arg(long)]
    pub delta: Option<f64>,

    /// Mean photon number of the coherent preparation.
    #[arg(long = "alpha-sq")]
    pub alpha_sq: Option<f64>,

    /// Which Bell amplitude carries the coherent weight.
    #[arg(long, value_enum)]
    pub case: Option<CaseArg>,

    /// Photon-number weighting of the ensemble sum.
    #[arg(long, value_enum)]
    pub weighting: Option<WeightingArg>,

    /// Poisson truncation; defaults to a cutoff satisfying the 1e-10 tail
    /// rule.
    #[arg(long)]
    pub cutoff: Option<usize>,

    #[arg(long)]
    pub tmax: Option<f64>,

    #[arg(long)]
    pub samples: Option<usize>,

    /// Fock index of the A cavity block.
    #[arg(long)]
    pub na: Option<u32>,

    /// Fock index of the B cavity block.
    #[arg(long)]
    pub nb: Option<u32>,

    /// Sweep blocks (0..=n_max) x (0..=n_max) instead of a single block.
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,

    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,

    /// Flat key=value file supplying any of the above flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved run configuration; every field concrete.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub theta: f64,
    pub g_a: f64,
    pub g_b: f64,
    pub w_a: f64,
    pub w_b: f64,
    pub delta: f64,
    pub alpha_sq: f64,
    pub case: CoherentCase,
    pub weighting: ModeCoupling,
    pub cutoff: usize,
    pub t_max: f64,
    pub samples: usize,
    pub n_a: u32,
    pub n_b: u32,
    pub n_max: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: FormatArg,
}

impl RunConfig {
    pub fn system_params(&self) -> Result<SystemParams, CliError> {
        Ok(SystemParams::new(
            self.w_a, self.w_b, self.g_a, self.g_b, self.delta, self.scenario,
        )?)
    }

    pub fn coherent_config(&self) -> Result<CoherentConfig, CliError> {
        Ok(CoherentConfig::new(self.alpha_sq, self.cutoff, self.weighting, self.case)?)
    }

    /// Key=value lines embedded as `#` comments in every emitted file.
    pub fn header_lines(&self, subcommand: &str) -> Vec<String> {
        let mut lines = vec![
            format!("subcommand={subcommand}"),
            format!("scenario={}", self.scenario),
            format!("theta={}", fmt(self.theta)),
            format!("gA={}", fmt(self.g_a)),
            format!("gB={}", fmt(self.g_b)),
            format!("wA={}", fmt(self.w_a)),
            format!("wB={}", fmt(self.w_b)),
            format!("delta={}", fmt(self.delta)),
        ];
        match subcommand {
            "revival" => {
                lines.push(format!("alpha-sq={}", fmt(self.alpha_sq)));
                lines.push(format!("case={}", self.case));
                lines.push(format!("weighting={}", self.weighting));
                lines.push(format!("cutoff={}", self.cutoff));
                lines.push(format!("tmax={}", fmt(self.t_max)));
                lines.push(format!("samples={}", self.samples));
            }
            "rabi" => {
                lines.push(format!("na={}", self.n_a));
                lines.push(format!("nb={}", self.n_b));
                lines.push(format!("tmax={}", fmt(self.t_max)));
                lines.push(format!("samples={}", self.samples));
            }
            "spectrum" => {
                lines.push(format!("na={}", self.n_a));
                lines.push(format!("nb={}", self.n_b));
                if let Some(m) = self.n_max {
                    lines.push(format!("n-max={m}"));
                }
            }
            _ => {}
        }
        lines
    }
}

/// 17 significant digits, scientific notation; fixed formatting keeps
/// repeated runs byte-identical.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_config_file(path: &PathBuf) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {} is not key=value: {raw:?}", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parsed<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|e| format!("config key {key}={raw:?}: {e}").into()),
    }
}

fn parse_choice<T: Copy>(
    map: &HashMap<String, String>,
    key: &str,
    choices: &[(&str, T)],
) -> Result<Option<T>, CliError> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => choices
            .iter()
            .find(|(name, _)| *name == raw)
            .map(|(_, v)| Some(*v))
            .ok_or_else(|| {
                let names: Vec<&str> = choices.iter().map(|(n, _)| *n).collect();
                format!("config key {key}={raw:?}: expected one of {names:?}").into()
            }),
    }
}

/// Per-subcommand time-grid defaults; the revival default reproduces the
/// published collapse/revival figures.
pub struct Defaults {
    pub t_max: f64,
    pub samples: usize,
}

pub fn resolve(opts: &Opts, defaults: Defaults) -> Result<RunConfig, CliError> {
    let file = match &opts.config {
        Some(path) => parse_config_file(path)?,
        None => HashMap::new(),
    };

    let scenario = opts
        .scenario
        .or(parse_choice(&file, "scenario", &[("I", ScenarioArg::I), ("II", ScenarioArg::II)])?)
        .unwrap_or(ScenarioArg::I);
    let case = opts
        .case
        .or(parse_choice(&file, "case", &[("I", CaseArg::I), ("II", CaseArg::II)])?)
        .unwrap_or(CaseArg::I);
    let weighting = opts
        .weighting
        .or(parse_choice(
            &file,
            "weighting",
            &[("twin", WeightingArg::Twin), ("product", WeightingArg::Product)],
        )?)
        .unwrap_or(WeightingArg::Twin);
    let format = opts
        .format
        .or(parse_choice(&file, "format", &[("csv", FormatArg::Csv), ("json", FormatArg::Json)])?)
        .unwrap_or(FormatArg::Csv);

    let alpha_sq = opts.alpha_sq.or(parsed(&file, "alpha-sq")?).unwrap_or(20.0);
    let samples = opts.samples.or(parsed(&file, "samples")?).unwrap_or(defaults.samples);
    let t_max = opts.tmax.or(parsed(&file, "tmax")?).unwrap_or(defaults.t_max);

    if samples < 2 {
        return Err("samples must be at least 2".into());
    }
    if !(t_max > 0.0) {
        return Err(format!("tmax must be positive, got {t_max}").into());
    }

    let cfg = RunConfig {
        scenario: match scenario {
            ScenarioArg::I => Scenario::I,
            ScenarioArg::II => Scenario::II,
        },
        theta: opts.theta.or(parsed(&file, "theta")?).unwrap_or(0.0),
        g_a: opts.g_a.or(parsed(&file, "gA")?).unwrap_or(1.0),
        g_b: opts.g_b.or(parsed(&file, "gB")?).unwrap_or(1.0),
        w_a: opts.w_a.or(parsed(&file, "wA")?).unwrap_or(1.0),
        w_b: opts.w_b.or(parsed(&file, "wB")?).unwrap_or(1.0),
        delta: opts.delta.or(parsed(&file, "delta")?).unwrap_or(0.0),
        alpha_sq,
        case: match case {
            CaseArg::I => CoherentCase::CaseI,
            CaseArg::II => CoherentCase::CaseII,
        },
        weighting: match weighting {
            WeightingArg::Twin => ModeCoupling::TwinDiagonal,
            WeightingArg::Product => ModeCoupling::IndependentProduct,
        },
        cutoff: opts
            .cutoff
            .or(parsed(&file, "cutoff")?)
            .unwrap_or_else(|| CoherentConfig::default_cutoff(alpha_sq)),
        t_max,
        samples,
        n_a: opts.na.or(parsed(&file, "na")?).unwrap_or(0),
        n_b: opts.nb.or(parsed(&file, "nb")?).unwrap_or(0),
        n_max: opts.n_max.or(parsed(&file, "n-max")?),
        out: opts.out.clone().or_else(|| file.get("out").map(PathBuf::from)),
        format,
    };

    // reject invalid combinations before any computation
    cfg.system_params()?;
    Ok(cfg)
}
