//! Command-line front end: figure presets, parameter sweeps and reproducible
//! data files for the squeezing spectra computed by `vicsqueeze-core`.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod run;
pub mod sweep;

use std::path::PathBuf;

pub use args::{Cli, Plan};
pub use config::{Format, GridSpec, OutputSpec, RunConfig};
pub use error::{CliError, CliResult};
pub use presets::{preset_configs, preset_curves, PRESET_NAMES};

use vicsqueeze_core::Method;

/// Runs what the flags describe and returns the files written, in order.
pub fn execute(cli: &Cli) -> CliResult<Vec<PathBuf>> {
    match cli.plan()? {
        Plan::Runs(configs) => run::write_all(&run::compute_all(&configs)?),
        Plan::Sweep { configs, axes } => {
            let computed = run::compute_all(&configs)?;
            let mut written = run::write_all(&computed)?;
            let format = cli.format;
            let path = cli.out.join(format!("sweep_summary.{}", format.extension()));
            output::write_file(&path, &sweep::summary(&axes, &computed, format))?;
            written.push(path);
            Ok(written)
        }
    }
}

/// Every curve of a preset, written with the given methods and output settings.
pub fn run_preset(name: &str, methods: &[Method], output: &OutputSpec) -> CliResult<Vec<PathBuf>> {
    let configs = preset_configs(name, methods, output, &[])?;
    run::write_all(&run::compute_all(&configs)?)
}
