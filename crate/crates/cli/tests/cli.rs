//! End-to-end tests of the `pstel` binary: flag handling, exit codes, file
//! formats and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pstel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pstel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("pstel-cli-tests").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn eval_reference_point() {
    let out = pstel(&["eval", "--detector", "spd", "--lambda", "0.56", "--T", "0.77", "--eta", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let r_line = text.lines().find(|l| l.starts_with("R ")).unwrap();
    let r: f64 = r_line.split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!((r - 9.5e-4).abs() < 0.05 * 9.5e-4, "{r_line}");
}

#[test]
fn eval_classical_point_and_json() {
    let out = pstel(&["eval", "--detector", "spd", "--lambda", "0", "--T", "0.5", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["F"].as_f64().unwrap(), 0.5);
    assert_eq!(v["P"].as_f64().unwrap(), 0.0);
    assert_eq!(v["R"].as_f64().unwrap(), 0.0);
}

#[test]
fn exit_codes_are_distinct() {
    // domain violation
    let out = pstel(&["eval", "--detector", "spd", "--lambda", "1.2", "--T", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    // usage: unknown flag (clap)
    let out = pstel(&["eval", "--detector", "spd", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // usage: missing required value
    let out = pstel(&["eval", "--detector", "spd", "--T", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    // io: unwritable output path
    let out = pstel(&["fvsn", "--steps", "5", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn sweep_smoke_and_round_trip() {
    let out = pstel(&[
        "sweep", "--detector", "onoff", "--lambda", "0.2:0.6:2", "--T", "0.5:0.9:2",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, ["lambda", "T", "eta", "detector", "F", "P", "dF", "R"]);
    assert_eq!(rows.len(), 4);
    // λ-major then T ordering
    let l: Vec<f64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    let t: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(l, [0.2, 0.2, 0.6, 0.6]);
    assert_eq!(t, [0.5, 0.9, 0.5, 0.9]);
    // every numeric field re-parses to the exact value the sweep computed
    for row in &rows {
        let lam: f64 = row[0].parse().unwrap();
        let tr: f64 = row[1].parse().unwrap();
        let eta: f64 = row[2].parse().unwrap();
        let params =
            pstel_core::ResourceParams::new(pstel_core::DetectorKind::OnOff, lam, tr, eta).unwrap();
        let m = pstel_core::Metrics::evaluate(&params);
        assert_eq!(row[4].parse::<f64>().unwrap(), m.fidelity, "F at ({lam}, {tr})");
        assert_eq!(row[5].parse::<f64>().unwrap(), m.success_prob);
        assert_eq!(row[6].parse::<f64>().unwrap(), m.delta_f);
        assert_eq!(row[7].parse::<f64>().unwrap(), m.merit);
    }
}

#[test]
fn sweep_spd_has_photon_columns() {
    let out = pstel(&["sweep", "--detector", "spd", "--lambda", "0.3", "--T", "0.5:0.9:3"]);
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        ["lambda", "T", "eta", "detector", "F", "P", "dF", "R", "N", "dN"]
    );
    assert_eq!(rows.len(), 3);
}

#[test]
fn sweep_quantities_subset() {
    let out = pstel(&[
        "sweep", "--detector", "spd", "--lambda", "0.2:0.6:2", "--T", "0.9",
        "--quantities", "F,dN",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, ["lambda", "T", "eta", "detector", "F", "dN"]);
    assert_eq!(rows.len(), 2);
    // photon columns are undefined for the on-off detector
    let out = pstel(&["sweep", "--detector", "onoff", "--lambda", "0.3", "--T", "0.9", "--quantities", "N"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_fidelity_curves_order_at_t09() {
    // SPD yields better fidelity than on-off along the λ axis at T = 0.9
    let spd = pstel(&["sweep", "--detector", "spd", "--lambda", "0.05:0.9:18", "--T", "0.9"]);
    let onoff = pstel(&["sweep", "--detector", "onoff", "--lambda", "0.05:0.9:18", "--T", "0.9"]);
    let (_, spd_rows) = parse_csv(&stdout(&spd));
    let (_, onoff_rows) = parse_csv(&stdout(&onoff));
    for (s, o) in spd_rows.iter().zip(&onoff_rows) {
        let fs: f64 = s[4].parse().unwrap();
        let fo: f64 = o[4].parse().unwrap();
        assert!(fs > fo);
    }
}

#[test]
fn sweep_eta_axis_regenerates_efficiency_rolloff() {
    // λ = 0.5 fixed, η swept: fidelity decreases as η decreases
    for t in ["0.90", "0.99"] {
        let out = pstel(&[
            "sweep", "--detector", "spd", "--lambda", "0.5", "--T", t, "--eta", "0.3:1:29",
        ]);
        let (_, rows) = parse_csv(&stdout(&out));
        assert_eq!(rows.len(), 29);
        let f: Vec<f64> = rows.iter().map(|r| r[4].parse().unwrap()).collect();
        for w in f.windows(2) {
            assert!(w[1] >= w[0] - 1e-12, "fidelity should rise with eta");
        }
    }
}

#[test]
fn contours_refine_to_tolerance() {
    let dir = tmpdir("contours");
    let path = dir.join("df.csv");
    let out = pstel(&[
        "contours", "--detector", "spd", "--quantity", "dF", "--level", "0",
        "--grid", "96x96", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(header, ["level", "polyline", "lambda", "T"]);
    assert!(rows.len() > 20);
    for row in &rows {
        let l: f64 = row[2].parse().unwrap();
        let t: f64 = row[3].parse().unwrap();
        let df = pstel_core::closed_form::delta_f(pstel_core::DetectorKind::Spd, l, t, 1.0).unwrap();
        assert!(df.abs() < 1e-8, "|dF| = {} at ({l}, {t})", df.abs());
    }
}

#[test]
fn contours_empty_when_level_unreachable() {
    let out = pstel(&[
        "contours", "--detector", "spd", "--quantity", "dF", "--level", "5", "--grid", "48x48",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    assert!(rows.is_empty());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("warning"), "stderr: {err}");
}

#[test]
fn contours_reject_dn_for_onoff() {
    let out = pstel(&["contours", "--detector", "onoff", "--quantity", "dN"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fvsn_curve_properties() {
    let out = pstel(&["fvsn", "--steps", "40"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, ["N", "F", "state"]);
    let curve = |name: &str| -> Vec<(f64, f64)> {
        rows.iter()
            .filter(|r| r[2] == name)
            .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
            .collect()
    };
    for name in ["tmsv", "sps"] {
        let c = curve(name);
        assert_eq!(c[0], (0.0, 0.5), "{name} must start at the vacuum point");
        for w in c.windows(2) {
            assert!(w[1].0 >= w[0].0 && w[1].1 >= w[0].1, "{name} not monotone");
        }
    }
}

#[test]
fn table2_reports_four_rows_and_verdict() {
    let out = pstel(&["table2", "--grid", "128"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = |det: &str| {
        text.lines()
            .filter(|l| l.starts_with(det) && l.contains('|'))
            .count()
    };
    assert_eq!(row("onoff"), 2);
    assert_eq!(row("spd"), 2);
    assert!(text.contains("spd maximizes R"));
}

#[test]
fn table2_json_is_machine_readable() {
    let out = pstel(&["table2", "--grid", "128", "--json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert!(row["converged"].as_bool().unwrap());
        let r = row["r_max"].as_f64().unwrap();
        assert!(r > 0.0 && r < 1e-2);
    }
}

#[test]
fn oracle_check_is_deterministic() {
    let args = ["oracle-check", "--samples", "2", "--seed", "7"];
    let a = pstel(&args);
    let b = pstel(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "same seed must give identical reports");
    let c = pstel(&["oracle-check", "--samples", "2", "--seed", "8"]);
    assert_ne!(stdout(&a), stdout(&c), "different seed should move the samples");
}

#[test]
fn oracle_check_surfaces_truncation_errors() {
    // a cutoff too small for the sampled squeezing must fail loudly
    let out = pstel(&["oracle-check", "--samples", "2", "--seed", "7", "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("failed"), "{text}");
    assert!(text.contains("truncation") || text.contains("tail"), "{text}");
}

#[test]
fn config_file_defaults_and_precedence() {
    let dir = tmpdir("config");
    let path = dir.join("defaults.conf");
    std::fs::write(&path, "detector=spd\nlambda=0.5\nT=0.9\neta=1\n").unwrap();
    let from_config = pstel(&["eval", "--config", path.to_str().unwrap()]);
    assert!(from_config.status.success());
    assert!(stdout(&from_config).contains("lambda    0.5"));
    // command line overrides the file
    let overridden = pstel(&["eval", "--config", path.to_str().unwrap(), "--lambda", "0.2"]);
    assert!(stdout(&overridden).contains("lambda    0.2"));
}

#[test]
fn emit_plot_writes_script_next_to_csv() {
    let dir = tmpdir("plots");
    let path = dir.join("sweep.csv");
    let out = pstel(&[
        "sweep", "--detector", "spd", "--lambda", "0.1:0.9:5", "--T", "0.9",
        "--out", path.to_str().unwrap(), "--emit-plot",
    ]);
    assert!(out.status.success());
    let script = dir.join("sweep.py");
    assert!(script.exists());
    let body = std::fs::read_to_string(script).unwrap();
    assert!(body.contains("sweep.csv"));
}
