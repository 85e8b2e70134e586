//! Level-set polylines of ΔF or ΔN over the (λ, T) plane, to CSV.

use clap::Args;

use pstel_core::closed_form;
use pstel_core::contour::extract_contours;
use pstel_core::params::DetectorKind;

use crate::config::Config;
use crate::output::{emit_plot_script, full, Csv, Sink};
use crate::CliError;

#[derive(Args, Debug)]
pub struct ContoursArgs {
    /// Detector kind: spd or onoff
    #[arg(long)]
    detector: Option<String>,
    /// Quantity whose level set to extract: dF or dN (dN is SPD-only)
    #[arg(long)]
    quantity: Option<String>,
    /// Contour level (default 0)
    #[arg(long)]
    level: Option<f64>,
    /// Detector efficiency entering dF (default 1)
    #[arg(long)]
    eta: Option<f64>,
    /// Sampling lattice, AxB (default 256x256)
    #[arg(long)]
    grid: Option<String>,
    /// Output CSV path, `-` for stdout
    #[arg(long, default_value = "-")]
    out: String,
    /// Also write a plotting script next to the CSV
    #[arg(long)]
    emit_plot: bool,
}

pub fn run(args: ContoursArgs, cfg: &Config) -> Result<(), CliError> {
    let detector = super::resolve_detector(args.detector, cfg)?;
    let quantity = args
        .quantity
        .or_else(|| cfg.raw("quantity").map(str::to_string))
        .ok_or_else(|| CliError::Usage("--quantity {dF|dN} is required".into()))?;
    let level = cfg.resolve(args.level, "level")?.unwrap_or(0.0);
    let eta = cfg.resolve(args.eta, "eta")?.unwrap_or(1.0);
    let grid_spec = args
        .grid
        .or_else(|| cfg.raw("grid").map(str::to_string))
        .unwrap_or_else(|| "256x256".to_string());
    let grid = super::parse_grid(&grid_spec)?;

    let lambda_range = (0.01, 0.95);
    let t_range = (0.05, 0.999);
    let field: Box<dyn Fn(f64, f64) -> f64> = match quantity.as_str() {
        "dF" | "df" => {
            Box::new(move |l, t| closed_form::delta_f(detector, l, t, eta).expect("in domain"))
        }
        "dN" | "dn" => {
            if detector != DetectorKind::Spd {
                return Err(CliError::Usage(
                    "dN has a closed form only for the spd detector".into(),
                ));
            }
            Box::new(|l, t| closed_form::delta_n_sps(l, t).expect("in domain"))
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown quantity `{other}` (expected dF or dN)"
            )))
        }
    };

    let polylines = extract_contours(field, lambda_range, t_range, grid, level)?;
    if polylines.is_empty() {
        eprintln!(
            "warning: {quantity} never crosses level {level} on the sampled grid; writing an empty polyline"
        );
    }

    let mut csv = Csv::new(&["level", "polyline", "lambda", "T"]);
    for (idx, line) in polylines.iter().enumerate() {
        for (lambda, t) in &line.points {
            csv.row(&[full(line.level), idx.to_string(), full(*lambda), full(*t)]);
        }
    }
    let sink = Sink::parse(&args.out);
    sink.write_all(&csv.finish())?;
    if args.emit_plot {
        let Some(path) = sink.path() else {
            return Err(CliError::Usage(
                "--emit-plot needs --out pointing at a file".into(),
            ));
        };
        let script = emit_plot_script(path, "lambda", &["T"], Some("polyline"))?;
        eprintln!("wrote plot script {}", script.display());
    }
    Ok(())
}
