//! Closed-form ↔ simulator comparison over deterministically sampled points.

use clap::Args;
use serde::Serialize;

use pstel_core::validate::{oracle_check, CaseReport, OracleCheckConfig};

use crate::config::Config;
use crate::{CliError, JsonFlag};

#[derive(Args, Debug)]
pub struct OracleCheckArgs {
    /// Points per (detector, η) case (default 25)
    #[arg(long)]
    samples: Option<usize>,
    /// Sampling seed; identical seeds give identical reports
    #[arg(long)]
    seed: Option<u64>,
    /// Fixed Fock cutoff; omit to select automatically per point
    #[arg(long)]
    nmax: Option<usize>,
    /// Fidelity tolerance (default 1e-6)
    #[arg(long)]
    tol: Option<f64>,
    /// Heralding-probability tolerance (default 1e-8)
    #[arg(long)]
    tol_p: Option<f64>,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Serialize)]
struct CaseJson {
    detector: &'static str,
    eta: f64,
    samples: usize,
    max_f_dev: f64,
    max_p_dev: f64,
    worst_f_point: (f64, f64),
    worst_p_point: (f64, f64),
    failures: Vec<String>,
    passed: bool,
}

impl From<&CaseReport> for CaseJson {
    fn from(r: &CaseReport) -> Self {
        CaseJson {
            detector: r.detector.as_str(),
            eta: r.eta,
            samples: r.samples,
            max_f_dev: r.max_f_dev,
            max_p_dev: r.max_p_dev,
            worst_f_point: r.worst_f_point,
            worst_p_point: r.worst_p_point,
            failures: r
                .failures
                .iter()
                .map(|((l, t), msg)| format!("({l:.4}, {t:.4}): {msg}"))
                .collect(),
            passed: r.passed,
        }
    }
}

pub fn run(args: OracleCheckArgs, cfg: &Config) -> Result<(), CliError> {
    let defaults = OracleCheckConfig::default();
    let config = OracleCheckConfig {
        samples: cfg.resolve(args.samples, "samples")?.unwrap_or(defaults.samples),
        seed: cfg.resolve(args.seed, "seed")?.unwrap_or(defaults.seed),
        n_max: cfg.resolve(args.nmax, "nmax")?.or(defaults.n_max),
        tol_fidelity: cfg.resolve(args.tol, "tol")?.unwrap_or(defaults.tol_fidelity),
        tol_prob: cfg.resolve(args.tol_p, "tol-p")?.unwrap_or(defaults.tol_prob),
        ..defaults
    };

    let reports = oracle_check(&config);
    let all_passed = reports.iter().all(|r| r.passed);

    if args.json.json {
        let rows: Vec<CaseJson> = reports.iter().map(CaseJson::from).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).map_err(|e| CliError::Io(format!("json: {e}")))?
        );
    } else {
        println!(
            "{:<8} {:>5} {:>8} {:>12} {:>12} {:>18} {:>18}  status",
            "detector", "eta", "samples", "max|dF|", "max|dP|", "worst dF at", "worst dP at"
        );
        for r in &reports {
            println!(
                "{:<8} {:>5.2} {:>8} {:>12.3e} {:>12.3e} {:>18} {:>18}  {}",
                r.detector.as_str(),
                r.eta,
                r.samples,
                r.max_f_dev,
                r.max_p_dev,
                format!("({:.3}, {:.3})", r.worst_f_point.0, r.worst_f_point.1),
                format!("({:.3}, {:.3})", r.worst_p_point.0, r.worst_p_point.1),
                if r.passed { "ok" } else { "FAIL" }
            );
            for ((l, t), msg) in &r.failures {
                println!("    point ({l:.4}, {t:.4}) failed: {msg}");
            }
        }
        println!(
            "oracle-check: {} (|dF| < {:.0e}, |dP| < {:.0e}, seed {})",
            if all_passed {
                "all cases within tolerance"
            } else {
                "TOLERANCE EXCEEDED"
            },
            config.tol_fidelity,
            config.tol_prob,
            config.seed,
        );
    }

    if all_passed {
        Ok(())
    } else {
        Err(CliError::Validation(
            "oracle-check found deviations beyond tolerance".into(),
        ))
    }
}
