//! Parameter sets of the published figures, one entry per plotted curve.

use std::f64::consts::FRAC_PI_2;

use vicsqueeze_core::{CrossDamping, Method, SystemParams, Transition};

use crate::config::{GridSpec, OutputSpec, PresetTag, RunConfig};
use crate::error::{CliError, CliResult};

pub const PRESET_NAMES: [&str; 9] = [
    "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b", "fig6",
];

#[derive(Debug, Clone, PartialEq)]
pub struct PresetCurve {
    pub name: &'static str,
    pub label: String,
    pub params: SystemParams,
    pub transition: Transition,
    pub grid: GridSpec,
}

struct Drive {
    omega_a: f64,
    omega_b: f64,
    delta: f64,
    theta: f64,
    phi: f64,
    cross_damping: CrossDamping,
}

impl Drive {
    fn new(omega_a: f64, omega_b: f64, delta: f64) -> Self {
        Drive {
            omega_a,
            omega_b,
            delta,
            theta: 0.0,
            phi: 0.0,
            cross_damping: CrossDamping::Auto,
        }
    }

    fn theta(self, theta: f64) -> Self {
        Drive { theta, ..self }
    }

    fn phi(self, phi: f64) -> Self {
        Drive { phi, ..self }
    }

    fn without_vic(self) -> Self {
        Drive {
            cross_damping: CrossDamping::Off,
            ..self
        }
    }

    fn params(&self) -> SystemParams {
        SystemParams::builder()
            .omega_a(self.omega_a)
            .omega_b(self.omega_b)
            .delta(self.delta)
            .theta(self.theta)
            .phi(self.phi)
            .cross_damping(self.cross_damping)
            .build()
            .expect("preset parameters are valid")
    }
}

fn grid(half: f64, points: usize) -> GridSpec {
    GridSpec {
        omega_min: -half,
        omega_max: half,
        points,
    }
}

/// All curves of a figure, solid curve first.
pub fn preset_curves(name: &str) -> CliResult<Vec<PresetCurve>> {
    let Some(&name) = PRESET_NAMES.iter().find(|&&n| n == name) else {
        return Err(CliError::usage(format!(
            "unknown preset `{name}`; valid presets: {}",
            PRESET_NAMES.join(", ")
        )));
    };
    let curve = |suffix: &str, drive: Drive, transition: Transition, grid: GridSpec| PresetCurve {
        name,
        label: format!("{name}{suffix}"),
        params: drive.params(),
        transition,
        grid,
    };
    let pi = Transition::Pi;
    let sigma = Transition::Sigma;
    let curves = match name {
        "fig2a" => vec![
            curve("-omegab0.9", Drive::new(0.6, 0.9, 8.0), pi, grid(12.0, 1201)),
            curve("-omegab0", Drive::new(0.6, 0.0, 8.0), pi, grid(12.0, 1201)),
        ],
        "fig2b" => vec![
            curve("-omegab2", Drive::new(5.0, 2.0, 8.0), pi, grid(25.0, 2001)),
            curve("-omegab0", Drive::new(5.0, 0.0, 8.0), pi, grid(25.0, 2001)),
        ],
        "fig3a" | "fig3b" => {
            let theta = if name == "fig3a" { 0.0 } else { FRAC_PI_2 };
            let drive = || Drive::new(0.2, 0.6, 0.0).theta(theta);
            vec![
                curve("", drive(), pi, grid(3.0, 601)),
                curve("", drive().without_vic(), pi, grid(3.0, 601)),
            ]
        }
        "fig4a" | "fig4b" => {
            let theta = if name == "fig4a" { 0.0 } else { FRAC_PI_2 };
            let drive = || Drive::new(4.0, 12.0, 15.0).theta(theta);
            vec![
                curve("", drive(), pi, grid(40.0, 1601)),
                curve("", drive().without_vic(), pi, grid(40.0, 1601)),
            ]
        }
        "fig5a" => vec![
            curve(
                "-omegab0.02",
                Drive::new(0.02, 0.02, 0.0).theta(FRAC_PI_2),
                sigma,
                grid(1.0, 4001),
            ),
            curve(
                "-omegab0",
                Drive::new(0.02, 0.0, 0.0).theta(FRAC_PI_2),
                sigma,
                grid(1.0, 4001),
            ),
        ],
        "fig5b" => vec![
            curve(
                "-omegab4",
                Drive::new(1.0, 4.0, 0.0).theta(FRAC_PI_2),
                sigma,
                grid(8.0, 1601),
            ),
            curve(
                "-omegab0",
                Drive::new(1.0, 0.0, 0.0).theta(FRAC_PI_2),
                sigma,
                grid(8.0, 1601),
            ),
        ],
        "fig6" => vec![
            curve("", Drive::new(10.0, 15.0, 20.0).phi(FRAC_PI_2), sigma, grid(50.0, 2001)),
            curve("", Drive::new(10.0, 15.0, 20.0), sigma, grid(50.0, 2001)),
        ],
        _ => unreachable!("every preset name has curves"),
    };
    Ok(curves)
}

/// Run configurations for every curve of a preset.
pub fn preset_configs(
    name: &str,
    methods: &[Method],
    output: &OutputSpec,
    overridden: &[&'static str],
) -> CliResult<Vec<RunConfig>> {
    Ok(preset_curves(name)?
        .into_iter()
        .map(|curve| RunConfig {
            params: curve.params,
            transition: curve.transition,
            grid: curve.grid,
            methods: methods.to_vec(),
            output: output.clone(),
            preset: Some(PresetTag {
                name: curve.name,
                label: curve.label,
                overridden: overridden.to_vec(),
            }),
        })
        .collect())
}
