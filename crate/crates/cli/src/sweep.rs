//! Cartesian parameter sweeps over a base configuration.

use std::str::FromStr;

use serde_json::{json, Value};
use vicsqueeze_core::CrossDamping;

use crate::config::{Format, GridSpec, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::number;
use crate::run::Computed;

pub const DEFAULT_MAX_RUNS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Gamma,
    OmegaA,
    OmegaB,
    Delta,
    Theta,
    Phi,
    Gamma12,
}

impl Axis {
    const ALL: [Axis; 7] = [
        Axis::Gamma,
        Axis::OmegaA,
        Axis::OmegaB,
        Axis::Delta,
        Axis::Theta,
        Axis::Phi,
        Axis::Gamma12,
    ];

    /// Same spelling as the corresponding flag.
    pub fn name(self) -> &'static str {
        match self {
            Axis::Gamma => "gamma",
            Axis::OmegaA => "omega-a",
            Axis::OmegaB => "omega-b",
            Axis::Delta => "delta",
            Axis::Theta => "theta",
            Axis::Phi => "phi",
            Axis::Gamma12 => "gamma12",
        }
    }
}

/// `name=start:stop:count`, endpoints included.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub axis: Axis,
    pub values: Vec<f64>,
}

impl FromStr for SweepAxis {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let (name, range) = text
            .split_once('=')
            .ok_or_else(|| format!("expected NAME=START:STOP:COUNT, got `{text}`"))?;
        let axis = Axis::ALL.into_iter().find(|a| a.name() == name).ok_or_else(|| {
            let names: Vec<_> = Axis::ALL.iter().map(|a| a.name()).collect();
            format!("unknown sweep parameter `{name}`; expected one of {}", names.join(", "))
        })?;
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("expected START:STOP:COUNT, got `{range}`"));
        };
        let number = |s: &str| s.parse::<f64>().map_err(|_| format!("not a number: `{s}`"));
        let (start, stop) = (number(start)?, number(stop)?);
        let count: usize = count.parse().map_err(|_| format!("not a count: `{count}`"))?;
        if !(start.is_finite() && stop.is_finite()) {
            return Err(format!("sweep range of `{name}` must be finite"));
        }
        let values = match count {
            0 => return Err(format!("sweep range of `{name}` is empty")),
            1 if start != stop => return Err(format!("a single-point sweep of `{name}` needs START == STOP")),
            1 => vec![start],
            n => {
                let last = (n - 1) as f64;
                (0..n)
                    .map(|k| (start * (last - k as f64) + stop * k as f64) / last)
                    .collect()
            }
        };
        Ok(SweepAxis { axis, values })
    }
}

fn apply(config: &RunConfig, axis: Axis, value: f64) -> CliResult<RunConfig> {
    let b = config.params.to_builder();
    let b = match axis {
        Axis::Gamma => b.gamma(value),
        Axis::OmegaA => b.omega_a(value),
        Axis::OmegaB => b.omega_b(value),
        Axis::Delta => b.delta(value),
        Axis::Theta => b.theta(value),
        Axis::Phi => b.phi(value),
        Axis::Gamma12 => b.cross_damping(CrossDamping::Explicit(value)),
    };
    Ok(RunConfig {
        params: b.build()?,
        ..config.clone()
    })
}

/// One configuration per tuple, the first axis varying slowest.
///
/// Without an explicit grid each run gets the default grid of its own parameters.
pub fn expand(
    base: &RunConfig,
    axes: &[SweepAxis],
    explicit_grid: Option<GridSpec>,
    max_runs: usize,
) -> CliResult<Vec<RunConfig>> {
    let runs = axes
        .iter()
        .try_fold(1usize, |acc, a| acc.checked_mul(a.values.len()))
        .unwrap_or(usize::MAX);
    if runs > max_runs {
        return Err(CliError::usage(format!(
            "sweep has {runs} runs, above the cap of {max_runs} (raise it with --max-runs)"
        )));
    }
    let mut configs = vec![base.clone()];
    for a in axes {
        let mut next = Vec::with_capacity(configs.len() * a.values.len());
        for c in &configs {
            for &v in &a.values {
                next.push(apply(c, a.axis, v)?);
            }
        }
        configs = next;
    }
    for c in &mut configs {
        c.grid = explicit_grid.unwrap_or_else(|| GridSpec::default_for(&c.params));
    }
    Ok(configs)
}

fn axis_value(config: &RunConfig, axis: Axis) -> f64 {
    let p = &config.params;
    match axis {
        Axis::Gamma => p.gamma(),
        Axis::OmegaA => p.omega_a(),
        Axis::OmegaB => p.omega_b(),
        Axis::Delta => p.delta(),
        Axis::Theta => p.theta(),
        Axis::Phi => p.phi(),
        Axis::Gamma12 => p.gamma12(),
    }
}

/// One row per computed curve: the swept values, and where the spectrum is lowest.
pub fn summary(axes: &[SweepAxis], computed: &[Computed], format: Format) -> String {
    let mut header: Vec<String> = vec!["run".into()];
    header.extend(axes.iter().map(|a| a.axis.name().to_string()));
    header.extend(["method", "omega_at_min", "S_min", "file"].map(String::from));
    let rows: Vec<Vec<String>> = computed
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let (w, s) = c.result.minimum();
            let mut row = vec![k.to_string()];
            row.extend(axes.iter().map(|a| number(axis_value(&c.config, a.axis))));
            let file = c
                .path()
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default();
            row.extend([c.result.method.name().to_string(), number(w), number(s), file]);
            row
        })
        .collect();
    match format {
        Format::Csv => {
            let mut out = header.join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .into_iter()
                .map(|row| {
                    let obj: serde_json::Map<String, Value> =
                        header.iter().cloned().zip(row.into_iter().map(Value::String)).collect();
                    Value::Object(obj)
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&json!({ "runs": records })).expect("plain values serialize");
            text.push('\n');
            text
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse_with_endpoints() {
        let a: SweepAxis = "phi=0:1:5".parse().unwrap();
        assert_eq!(a.axis, Axis::Phi);
        assert_eq!(a.values, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let single: SweepAxis = "omega-b=2:2:1".parse().unwrap();
        assert_eq!(single.values, vec![2.0]);
    }

    #[test]
    fn bad_ranges_are_refused() {
        for text in [
            "phi=0:1:0",
            "phi=0:1",
            "phi",
            "spin=0:1:3",
            "phi=a:1:3",
            "phi=0:inf:3",
            "phi=0:1:1",
        ] {
            assert!(text.parse::<SweepAxis>().is_err(), "{text}");
        }
    }
}
