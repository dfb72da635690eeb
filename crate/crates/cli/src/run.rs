//! Spectrum computation for a resolved configuration, and writing its files.

use std::path::PathBuf;

use rayon::prelude::*;
use vicsqueeze_core::dressed::{sideband_spectrum_pi, sideband_spectrum_sigma, DressedModel};
use vicsqueeze_core::{time_domain_spectrum_oracle, Method, Sample, SpectrumEngine, SpectrumResult, Transition};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{file_name, plot_script, render, write_file};

/// One computed curve, ready to be written.
#[derive(Debug, Clone)]
pub struct Computed {
    pub config: RunConfig,
    pub result: SpectrumResult,
}

impl Computed {
    pub fn path(&self) -> PathBuf {
        self.config.output.dir.join(file_name(&self.config, self.result.method))
    }
}

pub fn compute(config: &RunConfig, method: Method) -> CliResult<SpectrumResult> {
    let grid = config.grid.grid()?;
    let (params, theta, phi) = (&config.params, config.theta(), config.phi());
    match method {
        Method::ExactResolvent => {
            let engine = SpectrumEngine::new(params, config.transition, theta, phi)?;
            let samples = grid
                .points()
                .par_iter()
                .map(|&w| engine.evaluate(w))
                .collect::<Result<Vec<Sample>, _>>()?;
            Ok(engine.assemble(&grid, &samples, method))
        }
        Method::TimeDomainOracle => Ok(time_domain_spectrum_oracle(
            params,
            &grid,
            theta,
            phi,
            config.transition,
        )?),
        Method::DressedApproximation => {
            let model = DressedModel::build(params)?;
            match config.transition {
                Transition::Pi => Ok(sideband_spectrum_pi(&model, &grid, theta)?),
                Transition::Sigma if theta == 0.0 => Ok(sideband_spectrum_sigma(&model, &grid, phi)?),
                Transition::Sigma => Err(CliError::usage("the dressed sigma sidebands exist only for --theta 0")),
                Transition::TwoLevel => Err(CliError::usage("no dressed model for the two-level atom")),
            }
        }
    }
}

/// All methods of all configurations; runs in parallel, results in input order.
pub fn compute_all(configs: &[RunConfig]) -> CliResult<Vec<Computed>> {
    let jobs: Vec<(&RunConfig, Method)> = configs
        .iter()
        .flat_map(|c| c.methods.iter().map(move |&m| (c, m)))
        .collect();
    let results = jobs.par_iter().map(|&(c, m)| compute(c, m)).collect::<Vec<_>>();
    jobs.iter()
        .zip(results)
        .map(|(&(c, _), r)| {
            r.map(|result| Computed {
                config: c.clone(),
                result,
            })
        })
        .collect()
}

/// Writes every curve in order and, if asked, a plot script next to them.
pub fn write_all(computed: &[Computed]) -> CliResult<Vec<PathBuf>> {
    let mut written = Vec::with_capacity(computed.len() + 1);
    for c in computed {
        let path = c.path();
        write_file(&path, &render(&c.config, &c.result))?;
        written.push(path);
    }
    if let Some(first) = computed.first() {
        let out = &first.config.output;
        if out.plot_script {
            if out.format != Format::Csv {
                return Err(CliError::usage("--emit-plot-script needs --format csv"));
            }
            let path = out.dir.join("plot.gp");
            write_file(&path, &plot_script(&written))?;
            written.push(path);
        }
    }
    Ok(written)
}
