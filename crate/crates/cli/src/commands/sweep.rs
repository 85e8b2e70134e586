//! Grid sweeps to CSV.

use clap::Args;

use pstel_core::params::DetectorKind;
use pstel_core::sweep::{run_sweep, SweepAxis, SweepSpec};

use crate::config::Config;
use crate::output::{emit_plot_script, full, Csv, Sink};
use crate::CliError;

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Detector kind: spd or onoff
    #[arg(long)]
    detector: Option<String>,
    /// λ axis: `v`, `a:b` (steps from --grid) or `a:b:n`
    #[arg(long)]
    lambda: Option<String>,
    /// T axis, same forms as --lambda
    #[arg(long = "T")]
    transmissivity: Option<String>,
    /// η axis, same forms (default fixed 1)
    #[arg(long)]
    eta: Option<String>,
    /// Default steps for λ and T ranges, as AxB
    #[arg(long)]
    grid: Option<String>,
    /// Comma-separated subset of {F,P,dF,R,N,dN} to emit (default: all
    /// applicable to the detector)
    #[arg(long)]
    quantities: Option<String>,
    /// Output CSV path, `-` for stdout
    #[arg(long, default_value = "-")]
    out: String,
    /// Also write a plotting script next to the CSV
    #[arg(long)]
    emit_plot: bool,
}

pub fn run(args: SweepArgs, cfg: &Config) -> Result<(), CliError> {
    let detector = super::resolve_detector(args.detector, cfg)?;
    let grid_spec = args
        .grid
        .or_else(|| cfg.raw("grid").map(str::to_string))
        .unwrap_or_else(|| "50x50".to_string());
    let (steps_l, steps_t) = super::parse_grid(&grid_spec)?;

    let axis = |flag: Option<String>, key: &str, fallback: f64, steps: usize| {
        let raw = flag.or_else(|| cfg.raw(key).map(str::to_string));
        match raw {
            Some(s) => super::parse_axis(&s, steps),
            None => Ok(SweepAxis::fixed(fallback)),
        }
    };
    let spec = SweepSpec {
        detector,
        lambda: axis(args.lambda, "lambda", 0.5, steps_l)?,
        transmissivity: axis(args.transmissivity, "T", 0.9, steps_t)?,
        eta: axis(args.eta, "eta", 1.0, steps_l)?,
    };

    let rows = run_sweep(&spec)?;
    let with_photons = detector == DetectorKind::Spd;
    let all: &[&str] = if with_photons {
        &["F", "P", "dF", "R", "N", "dN"]
    } else {
        &["F", "P", "dF", "R"]
    };
    let quantities: Vec<&str> = match args
        .quantities
        .as_deref()
        .or_else(|| cfg.raw("quantities"))
    {
        None => all.to_vec(),
        Some(list) => {
            let mut picked = Vec::new();
            for q in list.split(',').map(str::trim) {
                if !all.contains(&q) {
                    return Err(CliError::Usage(format!(
                        "unknown quantity `{q}` for {detector} (choose from {})",
                        all.join(",")
                    )));
                }
                picked.push(all.iter().copied().find(|a| *a == q).unwrap());
            }
            picked
        }
    };

    let mut header = vec!["lambda", "T", "eta", "detector"];
    header.extend(&quantities);
    let mut csv = Csv::new(&header);
    for row in &rows {
        let mut fields = vec![
            full(row.lambda),
            full(row.transmissivity),
            full(row.eta),
            row.detector.as_str().to_string(),
        ];
        for q in &quantities {
            fields.push(full(match *q {
                "F" => row.metrics.fidelity,
                "P" => row.metrics.success_prob,
                "dF" => row.metrics.delta_f,
                "R" => row.metrics.merit,
                "N" => row.mean_photon.expect("spd rows carry N"),
                "dN" => row.delta_photon.expect("spd rows carry dN"),
                _ => unreachable!(),
            }));
        }
        csv.row(&fields);
    }

    let sink = Sink::parse(&args.out);
    sink.write_all(&csv.finish())?;
    if args.emit_plot {
        let Some(path) = sink.path() else {
            return Err(CliError::Usage(
                "--emit-plot needs --out pointing at a file".into(),
            ));
        };
        let x = if spec.lambda.steps > 1 {
            "lambda"
        } else if spec.transmissivity.steps > 1 {
            "T"
        } else {
            "eta"
        };
        let script = emit_plot_script(path, x, &quantities, None)?;
        eprintln!("wrote plot script {}", script.display());
    }
    Ok(())
}
