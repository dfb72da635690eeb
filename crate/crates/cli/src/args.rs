//! Command-line flags and their resolution into run configurations.

use std::path::PathBuf;

use clap::Parser;
use vicsqueeze_core::{CrossDamping, Method, SystemParams, Transition};

use crate::config::{
    parse_cross_damping, parse_format, parse_method, parse_transition, Format, GridSpec, OutputSpec, RunConfig,
};
use crate::error::{CliError, CliResult};
use crate::presets::preset_configs;
use crate::sweep::{expand, SweepAxis, DEFAULT_MAX_RUNS};

/// Squeezing spectra of a J=1/2 -> J=1/2 atom driven by two fields.
///
/// Rates and frequencies are in units of the total decay rate.
#[derive(Debug, Clone, Parser)]
#[command(name = "vicsqueeze", version)]
pub struct Cli {
    /// Total excited-state decay rate [default: 1]
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Rabi frequency of the pi-polarized field [default: 1]
    #[arg(long = "omega-a", allow_negative_numbers = true)]
    pub omega_a: Option<f64>,
    /// Rabi frequency of the sigma-polarized field [default: 0]
    #[arg(long = "omega-b", allow_negative_numbers = true)]
    pub omega_b: Option<f64>,
    /// Detuning of the sigma field [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Local-oscillator quadrature phase [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Relative phase of the two driving fields [default: 0]
    #[arg(long, allow_negative_numbers = true)]
    pub phi: Option<f64>,
    /// Cross-damping of the pi dipoles: auto, off, or a value [default: auto]
    #[arg(long, value_parser = parse_cross_damping, allow_negative_numbers = true)]
    pub gamma12: Option<CrossDamping>,
    /// pi or sigma [default: pi]
    #[arg(long, value_parser = parse_transition)]
    pub transition: Option<Transition>,
    /// Lower end of the frequency grid [default: from the parameters]
    #[arg(long = "omega-min", allow_negative_numbers = true)]
    pub omega_min: Option<f64>,
    /// Upper end of the frequency grid [default: from the parameters]
    #[arg(long = "omega-max", allow_negative_numbers = true)]
    pub omega_max: Option<f64>,
    /// Number of grid points, endpoints included [default: 1201]
    #[arg(long)]
    pub points: Option<usize>,
    /// exact, oracle, dressed; repeat or separate by commas [default: exact]
    #[arg(long, value_parser = parse_method, value_delimiter = ',', num_args = 1..)]
    pub method: Vec<Method>,
    /// One of fig2a, fig2b, fig3a, fig3b, fig4a, fig4b, fig5a, fig5b, fig6
    #[arg(long)]
    pub preset: Option<String>,
    /// Directory receiving the data files
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// csv or json
    #[arg(long, value_parser = parse_format, default_value = "csv")]
    pub format: Format,
    /// Write a gnuplot script next to the CSV files
    #[arg(long = "emit-plot-script")]
    pub emit_plot_script: bool,
    /// Sweep a parameter: NAME=START:STOP:COUNT, repeatable
    #[arg(long, allow_hyphen_values = true)]
    pub sweep: Vec<SweepAxis>,
    /// Largest number of runs a sweep may expand to
    #[arg(long = "max-runs", default_value_t = DEFAULT_MAX_RUNS)]
    pub max_runs: usize,
}

/// What the flags asked for.
#[derive(Debug, Clone)]
pub enum Plan {
    Runs(Vec<RunConfig>),
    Sweep {
        configs: Vec<RunConfig>,
        axes: Vec<SweepAxis>,
    },
}

impl Cli {
    fn output(&self) -> CliResult<OutputSpec> {
        if self.emit_plot_script && self.format != Format::Csv {
            return Err(CliError::usage("--emit-plot-script needs --format csv"));
        }
        Ok(OutputSpec {
            dir: self.out.clone(),
            format: self.format,
            plot_script: self.emit_plot_script,
        })
    }

    fn methods(&self) -> Vec<Method> {
        if self.method.is_empty() {
            vec![Method::ExactResolvent]
        } else {
            self.method.clone()
        }
    }

    /// Flags that a preset would replace, in flag order.
    fn given_model_flags(&self) -> Vec<&'static str> {
        let flags = [
            ("--gamma", self.gamma.is_some()),
            ("--omega-a", self.omega_a.is_some()),
            ("--omega-b", self.omega_b.is_some()),
            ("--delta", self.delta.is_some()),
            ("--theta", self.theta.is_some()),
            ("--phi", self.phi.is_some()),
            ("--gamma12", self.gamma12.is_some()),
            ("--transition", self.transition.is_some()),
            ("--omega-min", self.omega_min.is_some()),
            ("--omega-max", self.omega_max.is_some()),
            ("--points", self.points.is_some()),
        ];
        flags.iter().filter(|(_, given)| *given).map(|(f, _)| *f).collect()
    }

    fn params(&self) -> CliResult<SystemParams> {
        Ok(SystemParams::builder()
            .gamma(self.gamma.unwrap_or(1.0))
            .omega_a(self.omega_a.unwrap_or(1.0))
            .omega_b(self.omega_b.unwrap_or(0.0))
            .delta(self.delta.unwrap_or(0.0))
            .theta(self.theta.unwrap_or(0.0))
            .phi(self.phi.unwrap_or(0.0))
            .cross_damping(self.gamma12.unwrap_or(CrossDamping::Auto))
            .build()?)
    }

    /// The grid flags, completed from `fallback` when only some are given.
    fn explicit_grid(&self, fallback: GridSpec) -> CliResult<Option<GridSpec>> {
        if self.omega_min.is_none() && self.omega_max.is_none() && self.points.is_none() {
            return Ok(None);
        }
        GridSpec::new(
            self.omega_min.unwrap_or(fallback.omega_min),
            self.omega_max.unwrap_or(fallback.omega_max),
            self.points.unwrap_or(fallback.points),
        )
        .map(Some)
    }

    pub fn plan(&self) -> CliResult<Plan> {
        let output = self.output()?;
        let methods = self.methods();
        if let Some(name) = &self.preset {
            if !self.sweep.is_empty() {
                return Err(CliError::usage("--sweep cannot be combined with --preset"));
            }
            let configs = preset_configs(name, &methods, &output, &self.given_model_flags())?;
            return Ok(Plan::Runs(configs));
        }
        let params = self.params()?;
        let default_grid = GridSpec::default_for(&params);
        let explicit = self.explicit_grid(default_grid)?;
        let base = RunConfig {
            params,
            transition: self.transition.unwrap_or(Transition::Pi),
            grid: explicit.unwrap_or(default_grid),
            methods,
            output,
            preset: None,
        };
        if self.sweep.is_empty() {
            Ok(Plan::Runs(vec![base]))
        } else {
            let configs = expand(&base, &self.sweep, explicit, self.max_runs)?;
            Ok(Plan::Sweep {
                configs,
                axes: self.sweep.clone(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("vicsqueeze").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults_resolve_to_one_exact_pi_run() {
        let Plan::Runs(runs) = parse(&[]).plan().unwrap() else {
            panic!("expected plain runs")
        };
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].methods, vec![Method::ExactResolvent]);
        assert_eq!(runs[0].transition, Transition::Pi);
        assert_eq!(runs[0].params.omega_a(), 1.0);
        assert!(runs[0].params.vic_enabled());
    }

    #[test]
    fn negative_values_and_method_lists_parse() {
        let cli = parse(&[
            "--delta",
            "-3",
            "--gamma12",
            "-0.2",
            "--method",
            "exact,oracle",
            "--omega-min",
            "-4",
        ]);
        assert_eq!(cli.delta, Some(-3.0));
        assert_eq!(cli.gamma12, Some(CrossDamping::Explicit(-0.2)));
        assert_eq!(cli.method, vec![Method::ExactResolvent, Method::TimeDomainOracle]);
        let Plan::Runs(runs) = cli.plan().unwrap() else {
            panic!()
        };
        // The missing grid flags come from the default grid.
        assert_eq!(runs[0].grid.omega_min, -4.0);
        assert_eq!(runs[0].grid.points, 1201);
    }

    #[test]
    fn preset_records_the_flags_it_replaced() {
        let Plan::Runs(runs) = parse(&["--preset", "fig3a", "--omega-a", "7", "--points", "11"])
            .plan()
            .unwrap()
        else {
            panic!()
        };
        assert_eq!(runs.len(), 2);
        assert_eq!(runs[0].params.omega_a(), 0.2);
        assert_eq!(runs[0].grid.points, 601);
        assert_eq!(
            runs[0].preset.as_ref().unwrap().overridden,
            vec!["--omega-a", "--points"]
        );
    }

    #[test]
    fn sweeps_expand_in_declaration_order() {
        let Plan::Sweep { configs, .. } = parse(&["--sweep", "omega-b=0:1:3", "--sweep", "phi=0:1:2"])
            .plan()
            .unwrap()
        else {
            panic!()
        };
        let tuples: Vec<(f64, f64)> = configs.iter().map(|c| (c.params.omega_b(), c.params.phi())).collect();
        assert_eq!(
            tuples,
            vec![(0.0, 0.0), (0.0, 1.0), (0.5, 0.0), (0.5, 1.0), (1.0, 0.0), (1.0, 1.0)]
        );
    }

    #[test]
    fn invalid_combinations_are_usage_errors() {
        for args in [
            &["--preset", "fig3a", "--sweep", "phi=0:1:2"][..],
            &["--points", "1"],
            &["--omega-min", "2", "--omega-max", "1"],
            &["--format", "json", "--emit-plot-script"],
            &["--sweep", "phi=0:1:200", "--max-runs", "100"],
            &["--omega-a", "-1"],
            &["--gamma12", "0.9"],
            &["--preset", "fig9"],
        ] {
            let err = parse(args).plan().unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}: {err}");
        }
    }
}
