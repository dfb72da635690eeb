//! Data files: fixed 17-significant-digit formatting so re-runs are byte-identical.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use vicsqueeze_core::{Method, SpectrumResult};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Round-trip-safe decimal text of a float.
pub fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn angle_tag(x: f64) -> String {
    format!("{x:.4}")
}

/// `<label>__<transition>__theta<t>__phi<p>__vic<on|off>__<method>.<ext>`
pub fn file_name(config: &RunConfig, method: Method) -> String {
    let vic = if config.params.vic_enabled() { "on" } else { "off" };
    format!(
        "{}__{}__theta{}__phi{}__vic{}__{}.{}",
        config.label(),
        config.transition.name(),
        angle_tag(config.theta()),
        angle_tag(config.phi()),
        vic,
        method.name(),
        config.output.format.extension()
    )
}

/// Everything recorded alongside the data.
pub fn metadata(config: &RunConfig, result: &SpectrumResult) -> Vec<(&'static str, String)> {
    let (preset, overridden) = match &config.preset {
        Some(tag) => (
            tag.name.to_string(),
            if tag.overridden.is_empty() {
                "none".to_string()
            } else {
                tag.overridden.join(";")
            },
        ),
        None => ("none".to_string(), "none".to_string()),
    };
    let mut meta = vec![
        ("tool", "vicsqueeze".to_string()),
        ("version", VERSION.to_string()),
        ("method", result.method.name().to_string()),
        ("label", config.label()),
        ("preset", preset),
        ("preset_overrode", overridden),
    ];
    meta.extend(config.describe());
    meta.push(("max_imag_residue", number(result.max_imag_residue)));
    meta
}

pub fn render(config: &RunConfig, result: &SpectrumResult) -> String {
    match config.output.format {
        Format::Csv => render_csv(config, result),
        Format::Json => render_json(config, result),
    }
}

fn render_csv(config: &RunConfig, result: &SpectrumResult) -> String {
    let mut out = String::new();
    for (key, value) in metadata(config, result) {
        out.push_str(&format!("# {key}={value}\n"));
    }
    out.push_str("omega,S\n");
    for (w, s) in result.omega.iter().zip(&result.values) {
        out.push_str(&number(*w));
        out.push(',');
        out.push_str(&number(*s));
        out.push('\n');
    }
    out
}

fn render_json(config: &RunConfig, result: &SpectrumResult) -> String {
    let meta: Map<String, Value> = metadata(config, result)
        .into_iter()
        .map(|(k, v)| (k.to_string(), Value::String(v)))
        .collect();
    let strings = |xs: &[f64]| xs.iter().map(|&x| Value::String(number(x))).collect::<Vec<_>>();
    let doc = json!({
        "meta": meta,
        "omega": strings(&result.omega),
        "S": strings(&result.values),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("plain values serialize");
    text.push('\n');
    text
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| CliError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    let mut file = fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(contents.as_bytes()).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Gnuplot script plotting the given CSV files; the image is never rendered here.
pub fn plot_script(files: &[PathBuf]) -> String {
    let mut out = String::from(
        "# gnuplot script generated by vicsqueeze\n\
         set datafile separator \",\"\n\
         set xlabel \"omega / gamma\"\n\
         set ylabel \"S(omega)\"\n\
         set key outside\n\
         plot ",
    );
    let entries: Vec<String> = files
        .iter()
        .map(|f| {
            let name = f
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            format!(
                "\"{name}\" using 1:2 with lines title \"{}\" noenhanced",
                name.trim_end_matches(".csv")
            )
        })
        .collect();
    out.push_str(&entries.join(", \\\n     "));
    out.push('\n');
    out
}
