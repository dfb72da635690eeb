//! Fully resolved description of one spectrum run.

use std::path::PathBuf;

use sha2::{Digest, Sha256};
use vicsqueeze_core::{CrossDamping, FrequencyGrid, Method, SystemParams, Transition};

use crate::error::{CliError, CliResult};
use crate::output::number;

/// Uniform frequency grid, kept as its defining triple so it can be recorded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(omega_min: f64, omega_max: f64, points: usize) -> CliResult<Self> {
        if points < 2 {
            return Err(CliError::usage(format!("--points must be at least 2, got {points}")));
        }
        if !(omega_min.is_finite() && omega_max.is_finite() && omega_min < omega_max) {
            return Err(CliError::usage(format!(
                "--omega-min must be below --omega-max, got {omega_min} and {omega_max}"
            )));
        }
        Ok(GridSpec {
            omega_min,
            omega_max,
            points,
        })
    }

    /// Symmetric default covering the outermost dressed sideband plus five linewidths.
    pub fn default_for(params: &SystemParams) -> Self {
        let (oa, ob, d) = (params.omega_a(), params.omega_b(), params.delta());
        let omega1 = (4.0 * oa * oa + ob * ob).sqrt() + ob;
        let outer = (d * d + omega1 * omega1).sqrt();
        let half = outer + 5.0 * params.gamma();
        GridSpec {
            omega_min: -half,
            omega_max: half,
            points: 1201,
        }
    }

    pub fn grid(&self) -> CliResult<FrequencyGrid> {
        Ok(FrequencyGrid::uniform(self.omega_min, self.omega_max, self.points)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub format: Format,
    pub plot_script: bool,
}

/// Which preset, and which of its curves, a run came from.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetTag {
    pub name: &'static str,
    /// File label: the preset name plus a suffix when curves share the same tags.
    pub label: String,
    /// Flags the preset replaced.
    pub overridden: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Carries `theta` and `phi` alongside the physical inputs.
    pub params: SystemParams,
    pub transition: Transition,
    pub grid: GridSpec,
    pub methods: Vec<Method>,
    pub output: OutputSpec,
    pub preset: Option<PresetTag>,
}

impl RunConfig {
    pub fn theta(&self) -> f64 {
        self.params.theta()
    }

    pub fn phi(&self) -> f64 {
        self.params.phi()
    }

    /// Preset label, or a digest of everything that determines the curve.
    pub fn label(&self) -> String {
        if let Some(tag) = &self.preset {
            return tag.label.clone();
        }
        let mut hasher = Sha256::new();
        for (key, value) in self.describe() {
            hasher.update(key.as_bytes());
            hasher.update(b"=");
            hasher.update(value.as_bytes());
            hasher.update(b"\n");
        }
        let digest = hasher.finalize();
        digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
    }

    /// The resolved inputs as ordered key/value pairs, numbers at full precision.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        let p = &self.params;
        let cross = match p.cross_damping() {
            CrossDamping::Auto => "auto".to_string(),
            CrossDamping::Off => "off".to_string(),
            CrossDamping::Explicit(x) => number(x),
        };
        vec![
            ("transition", self.transition.name().to_string()),
            ("gamma", number(p.gamma())),
            ("gamma1", number(p.gamma1())),
            ("gamma2", number(p.gamma2())),
            ("gamma_sigma", number(p.gamma_sigma())),
            ("gamma12_setting", cross),
            ("gamma12", number(p.gamma12())),
            ("omega_a", number(p.omega_a())),
            ("omega_b", number(p.omega_b())),
            ("delta", number(p.delta())),
            ("theta", number(p.theta())),
            ("phi", number(p.phi())),
            ("omega_min", number(self.grid.omega_min)),
            ("omega_max", number(self.grid.omega_max)),
            ("points", self.grid.points.to_string()),
        ]
    }
}

pub fn parse_cross_damping(text: &str) -> Result<CrossDamping, String> {
    match text {
        "auto" => Ok(CrossDamping::Auto),
        "off" => Ok(CrossDamping::Off),
        other => other
            .parse::<f64>()
            .map(CrossDamping::Explicit)
            .map_err(|_| format!("expected `auto`, `off` or a number, got `{other}`")),
    }
}

pub fn parse_transition(text: &str) -> Result<Transition, String> {
    match text {
        "pi" => Ok(Transition::Pi),
        "sigma" => Ok(Transition::Sigma),
        other => Err(format!("expected `pi` or `sigma`, got `{other}`")),
    }
}

pub fn parse_method(text: &str) -> Result<Method, String> {
    match text {
        "exact" => Ok(Method::ExactResolvent),
        "oracle" => Ok(Method::TimeDomainOracle),
        "dressed" => Ok(Method::DressedApproximation),
        other => Err(format!("expected `exact`, `oracle` or `dressed`, got `{other}`")),
    }
}

pub fn parse_format(text: &str) -> Result<Format, String> {
    match text {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        other => Err(format!("expected `csv` or `json`, got `{other}`")),
    }
}
