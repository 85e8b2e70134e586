//! Single-case maximization of R.

use clap::Args;
use serde::Serialize;

use pstel_core::optimize::{self, OptimumRecord};

use crate::config::Config;
use crate::{CliError, JsonFlag};

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    /// Detector kind: spd or onoff
    #[arg(long)]
    detector: Option<String>,
    /// Detector efficiency (default 1)
    #[arg(long)]
    eta: Option<f64>,
    /// Scan resolution per axis, N or NxN (default 256)
    #[arg(long)]
    grid: Option<String>,
    /// Simplex coordinate tolerance (default 1e-10)
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    json: JsonFlag,
}

#[derive(Serialize)]
pub struct RecordJson {
    pub detector: &'static str,
    pub eta: f64,
    pub lambda_star: f64,
    pub t_star: f64,
    pub r_max: f64,
    pub delta_f: f64,
    pub p: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl From<&OptimumRecord> for RecordJson {
    fn from(r: &OptimumRecord) -> Self {
        RecordJson {
            detector: r.detector.as_str(),
            eta: r.eta,
            lambda_star: r.lambda_star,
            t_star: r.t_star,
            r_max: r.r_max,
            delta_f: r.delta_f_at_opt,
            p: r.p_at_opt,
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }
}

pub fn run(args: OptimizeArgs, cfg: &Config) -> Result<(), CliError> {
    let detector = super::resolve_detector(args.detector, cfg)?;
    let eta = cfg.resolve(args.eta, "eta")?.unwrap_or(1.0);
    let grid_spec = args
        .grid
        .or_else(|| cfg.raw("grid").map(str::to_string))
        .unwrap_or_else(|| "256".to_string());
    let (resolution, _) = super::parse_grid(&grid_spec)?;
    let tol = cfg
        .resolve(args.tol, "tol")?
        .unwrap_or(optimize::DEFAULT_REFINE_TOL);

    let scan = optimize::grid_scan(detector, eta, resolution)?;
    let record = optimize::refine(
        detector,
        eta,
        (scan.lambda_star, scan.t_star),
        tol,
        optimize::DEFAULT_REFINE_BUDGET,
    )?;

    if args.json.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&RecordJson::from(&record))
                .map_err(|e| CliError::Io(format!("json: {e}")))?
        );
    } else {
        println!("detector     {}", record.detector);
        println!("eta          {}", record.eta);
        println!("lambda*      {:.6}", record.lambda_star);
        println!("T*           {:.6}", record.t_star);
        println!("R_max        {:.6e}", record.r_max);
        println!("dF           {:.6}", record.delta_f_at_opt);
        println!("P            {:.6}", record.p_at_opt);
        println!("evaluations  {}", record.evaluations);
        println!("converged    {}", record.converged);
    }
    Ok(())
}
