//! Point evaluation.

use clap::Args;
use serde::Serialize;

use pstel_core::closed_form;
use pstel_core::params::{DetectorKind, Metrics, ResourceParams};

use crate::config::Config;
use crate::{CliError, JsonFlag};

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Detector kind: spd or onoff
    #[arg(long)]
    detector: Option<String>,
    /// Squeezing λ = tanh r, 0 ≤ λ < 1
    #[arg(long)]
    lambda: Option<f64>,
    /// Beam-splitter transmissivity, 0 < T ≤ 1
    #[arg(long = "T")]
    transmissivity: Option<f64>,
    /// Detector efficiency, 0 < η ≤ 1 (default 1)
    #[arg(long)]
    eta: Option<f64>,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Serialize)]
struct EvalRecord {
    detector: &'static str,
    lambda: f64,
    #[serde(rename = "T")]
    transmissivity: f64,
    eta: f64,
    #[serde(rename = "F")]
    fidelity: f64,
    #[serde(rename = "P")]
    success_prob: f64,
    #[serde(rename = "dF")]
    delta_f: f64,
    #[serde(rename = "R")]
    merit: f64,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    mean_photon: Option<f64>,
    #[serde(rename = "dN", skip_serializing_if = "Option::is_none")]
    delta_photon: Option<f64>,
}

pub fn run(args: EvalArgs, cfg: &Config) -> Result<(), CliError> {
    let detector = super::resolve_detector(args.detector, cfg)?;
    let lambda = cfg
        .resolve(args.lambda, "lambda")?
        .ok_or_else(|| CliError::Usage("--lambda is required".into()))?;
    let t = cfg
        .resolve(args.transmissivity, "T")?
        .ok_or_else(|| CliError::Usage("--T is required".into()))?;
    let eta = cfg.resolve(args.eta, "eta")?.unwrap_or(1.0);

    let params = ResourceParams::new(detector, lambda, t, eta)?;
    let metrics = Metrics::evaluate(&params);
    let (mean_photon, delta_photon) = match detector {
        DetectorKind::Spd => (
            Some(closed_form::n_sps(lambda, t)?),
            Some(closed_form::delta_n_sps(lambda, t)?),
        ),
        DetectorKind::OnOff => (None, None),
    };
    let record = EvalRecord {
        detector: detector.as_str(),
        lambda,
        transmissivity: t,
        eta,
        fidelity: metrics.fidelity,
        success_prob: metrics.success_prob,
        delta_f: metrics.delta_f,
        merit: metrics.merit,
        mean_photon,
        delta_photon,
    };

    if args.json.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&record)
                .map_err(|e| CliError::Io(format!("json: {e}")))?
        );
    } else {
        println!("detector  {}", record.detector);
        println!("lambda    {}", record.lambda);
        println!("T         {}", record.transmissivity);
        println!("eta       {}", record.eta);
        println!("F         {:.12}", record.fidelity);
        println!("P         {:.12}", record.success_prob);
        println!("dF        {:.12}", record.delta_f);
        println!("R         {:.6e}", record.merit);
        if let (Some(n), Some(dn)) = (record.mean_photon, record.delta_photon) {
            println!("N         {n:.12}");
            println!("dN        {dn:.12}");
        }
    }
    Ok(())
}
