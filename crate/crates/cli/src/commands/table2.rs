//! The four standard optimization rows, with a side-by-side comparison
//! against the built-in reference optima.

use clap::Args;

use pstel_core::optimize::{self, OptimumRecord};
use pstel_core::params::DetectorKind;

use crate::config::Config;
use crate::{CliError, JsonFlag};

/// Reference optima: 10⁴×R_max, λ*, T*, ΔF, 10×P per row.
pub const REFERENCE: [(DetectorKind, f64, f64, f64, f64, f64, f64); 4] = [
    (DetectorKind::OnOff, 1.00, 3.9, 0.49, 0.84, 0.033, 0.12),
    (DetectorKind::OnOff, 0.60, 1.1, 0.47, 0.85, 0.032, 0.04),
    (DetectorKind::Spd, 1.00, 9.5, 0.56, 0.77, 0.037, 0.26),
    (DetectorKind::Spd, 0.95, 7.6, 0.55, 0.77, 0.036, 0.21),
];

#[derive(Args, Debug)]
pub struct Table2Args {
    /// Scan resolution per axis, N or NxN (default 256)
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    json: JsonFlag,
}

pub fn run(args: Table2Args, cfg: &Config) -> Result<(), CliError> {
    let grid_spec = args
        .grid
        .or_else(|| cfg.raw("grid").map(str::to_string))
        .unwrap_or_else(|| "256".to_string());
    let (resolution, _) = super::parse_grid(&grid_spec)?;

    let mut records = Vec::new();
    for &(det, eta, ..) in &REFERENCE {
        records.push(optimize::optimize(det, eta, resolution)?);
    }

    if args.json.json {
        let rows: Vec<super::optimize::RecordJson> =
            records.iter().map(super::optimize::RecordJson::from).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&rows).map_err(|e| CliError::Io(format!("json: {e}")))?
        );
        return Ok(());
    }

    println!(
        "{:<8} {:>5} | {:>8} {:>6} {:>7} | {:>7} {:>5} | {:>7} {:>5} | {:>7} {:>6} | {:>7} {:>5}",
        "detector", "eta", "1e4*R", "ref", "diff", "lambda*", "ref", "T*", "ref", "dF", "ref", "10*P", "ref"
    );
    for (rec, (_, _, ref_r, ref_l, ref_t, ref_df, ref_p)) in records.iter().zip(REFERENCE) {
        let r4 = rec.r_max * 1e4;
        println!(
            "{:<8} {:>5.2} | {:>8.3} {:>6.1} {:>+6.1}% | {:>7.3} {:>5.2} | {:>7.3} {:>5.2} | {:>7.4} {:>6.3} | {:>7.3} {:>5.2}",
            rec.detector.as_str(),
            rec.eta,
            r4,
            ref_r,
            (r4 / ref_r - 1.0) * 100.0,
            rec.lambda_star,
            ref_l,
            rec.t_star,
            ref_t,
            rec.delta_f_at_opt,
            ref_df,
            rec.p_at_opt * 10.0,
            ref_p,
        );
    }
    summarize(&records);
    Ok(())
}

fn summarize(records: &[OptimumRecord]) {
    let spd: f64 = records
        .iter()
        .filter(|r| r.detector == DetectorKind::Spd)
        .map(|r| r.r_max)
        .fold(f64::NEG_INFINITY, f64::max);
    let onoff: f64 = records
        .iter()
        .filter(|r| r.detector == DetectorKind::OnOff)
        .map(|r| r.r_max)
        .fold(f64::NEG_INFINITY, f64::max);
    if spd > onoff {
        println!("spd maximizes R: {:.3e} vs {:.3e} for onoff", spd, onoff);
    } else {
        println!("onoff maximizes R: {:.3e} vs {:.3e} for spd", onoff, spd);
    }
}
