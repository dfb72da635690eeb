use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vicsqueeze"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn written(output: &Output) -> Vec<PathBuf> {
    String::from_utf8(output.stdout.clone())
        .unwrap()
        .lines()
        .map(PathBuf::from)
        .collect()
}

fn data_rows(path: &Path) -> Vec<(f64, f64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && *l != "omega,S")
        .map(|l| {
            let (w, s) = l.split_once(',').unwrap();
            (w.parse().unwrap(), s.parse().unwrap())
        })
        .collect()
}

#[test]
fn preset_writes_one_file_per_curve_with_full_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--preset", "fig4a"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let files = written(&out);
    let names: Vec<String> = files
        .iter()
        .map(|f| f.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    assert_eq!(
        names,
        [
            "fig4a__pi__theta0.0000__phi0.0000__vicon__exact.csv",
            "fig4a__pi__theta0.0000__phi0.0000__vicoff__exact.csv",
        ]
    );
    let text = fs::read_to_string(&files[0]).unwrap();
    for key in [
        "version=",
        "method=exact",
        "preset=fig4a",
        "gamma=",
        "gamma12=",
        "omega_a=4.0",
        "omega_b=1.2",
        "delta=1.5",
        "theta=",
        "phi=",
        "omega_min=-4.0",
        "omega_max=4.0",
        "points=1601",
    ] {
        assert!(text.contains(key), "missing {key}");
    }
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "omega,S");
    assert_eq!(data_rows(&files[0]).len(), 1601);
}

#[test]
fn rerunning_a_preset_is_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = written(&run(&["--preset", "fig2a", "--emit-plot-script"], a.path()));
    let second = written(&run(&["--preset", "fig2a", "--emit-plot-script"], b.path()));
    assert_eq!(first.len(), 3);
    for (x, y) in first.iter().zip(&second) {
        assert_eq!(x.file_name(), y.file_name());
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap());
    }
}

#[test]
fn json_output_has_meta_and_string_arrays() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "--omega-a",
            "0.5",
            "--points",
            "5",
            "--omega-min",
            "-1",
            "--omega-max",
            "1",
            "--format",
            "json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let files = written(&out);
    assert_eq!(files.len(), 1);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&files[0]).unwrap()).unwrap();
    assert_eq!(doc["meta"]["method"], "exact");
    assert_eq!(doc["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["meta"]["omega_a"], "5.0000000000000000e-1");
    let omega = doc["omega"].as_array().unwrap();
    let s = doc["S"].as_array().unwrap();
    assert_eq!(omega.len(), 5);
    assert_eq!(s.len(), 5);
    assert_eq!(omega[2], "0.0000000000000000e0");
    // Even spectrum, and the strings parse back.
    let first: f64 = s[0].as_str().unwrap().parse().unwrap();
    let last: f64 = s[4].as_str().unwrap().parse().unwrap();
    assert_eq!(first, last);
}

#[test]
fn csv_values_match_the_library() {
    use vicsqueeze_core::{squeezing_spectrum_pi, FrequencyGrid, SystemParams, Vic};
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "--omega-a",
            "0.2",
            "--omega-b",
            "0.6",
            "--omega-min",
            "-3",
            "--omega-max",
            "3",
            "--points",
            "61",
        ],
        dir.path(),
    );
    let rows = data_rows(&written(&out)[0]);
    let params = SystemParams::builder().omega_a(0.2).omega_b(0.6).build().unwrap();
    let grid = FrequencyGrid::uniform(-3.0, 3.0, 61).unwrap();
    let direct = squeezing_spectrum_pi(&params, &grid, 0.0, Vic::On).unwrap();
    for ((w, s), (dw, ds)) in rows.iter().zip(direct.omega.iter().zip(&direct.values)) {
        assert_eq!(w, dw);
        assert_eq!(s, ds);
    }
}

#[test]
fn exit_codes_separate_bad_input_from_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(args, dir.path()).status.code();
    assert_eq!(code(&["--preset", "fig7"]), Some(2));
    assert_eq!(code(&["--omega-min", "1", "--omega-max", "0"]), Some(2));
    assert_eq!(code(&["--method", "fourier"]), Some(2));
    assert_eq!(code(&["--transition", "delta"]), Some(2));
    assert_eq!(code(&["--sweep", "phi=0:1:0"]), Some(2));
    // No driving at all leaves every population dark: no unique steady state.
    assert_eq!(code(&["--omega-a", "0", "--omega-b", "0"]), Some(3));
    assert_eq!(code(&["--omega-a", "1", "--points", "3"]), Some(0));

    let msg = String::from_utf8(run(&["--preset", "fig7"], dir.path()).stderr).unwrap();
    assert!(msg.contains("fig2a") && msg.contains("fig6"));
}

#[test]
fn sweep_writes_one_record_per_tuple_and_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--transition",
        "sigma",
        "--omega-a",
        "10",
        "--omega-b",
        "15",
        "--delta",
        "20",
        "--omega-min",
        "-50",
        "--omega-max",
        "50",
        "--points",
        "401",
        "--sweep",
        "phi=0:1.5707963267948966:9",
    ];
    let out = run(&args, dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let files = written(&out);
    assert_eq!(files.len(), 10);
    let summary = fs::read_to_string(files.last().unwrap()).unwrap();
    let lines: Vec<&str> = summary.lines().collect();
    assert_eq!(lines[0], "run,phi,method,omega_at_min,S_min,file");
    assert_eq!(lines.len(), 10);
    for (k, line) in lines[1..].iter().enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0], k.to_string());
        let (w, s): (f64, f64) = (cols[3].parse().unwrap(), cols[4].parse().unwrap());
        let rows = data_rows(&dir.path().join(cols[5]));
        let min = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        assert_eq!(s, min);
        assert!(rows.iter().any(|r| r.0 == w && r.1 == s));
    }
}

#[test]
fn single_point_sweep_equals_direct_run() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let base = ["--omega-a", "1", "--omega-b", "2", "--points", "101"];
    let direct = written(&run(&[&base[..], &["--phi", "0.3"]].concat(), a.path()));
    let swept = written(&run(&[&base[..], &["--sweep", "phi=0.3:0.3:1"]].concat(), b.path()));
    assert_eq!(direct.len(), 1);
    assert_eq!(swept.len(), 2);
    assert_eq!(direct[0].file_name(), swept[0].file_name());
    assert_eq!(fs::read(&direct[0]).unwrap(), fs::read(&swept[0]).unwrap());
}

#[test]
fn sweep_cap_is_enforced() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--sweep", "phi=0:1:101", "--sweep", "theta=0:1:100"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("10000"));
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn methods_agree_where_their_assumptions_hold() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &[
            "--omega-a",
            "0.2",
            "--omega-b",
            "0.6",
            "--omega-min",
            "-3",
            "--omega-max",
            "3",
            "--points",
            "31",
            "--method",
            "exact,oracle",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let files = written(&out);
    assert!(files[0].to_string_lossy().ends_with("__exact.csv"));
    assert!(files[1].to_string_lossy().ends_with("__oracle.csv"));
    for ((_, a), (_, b)) in data_rows(&files[0]).iter().zip(&data_rows(&files[1])) {
        assert!((a - b).abs() <= 1e-6);
    }
}
