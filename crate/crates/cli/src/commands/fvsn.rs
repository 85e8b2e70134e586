//! Fidelity versus mean photon number, for the bare squeezed vacuum and the
//! unit-transmissivity subtracted state.

use clap::Args;

use pstel_core::sweep::fvsn_curves;

use crate::config::Config;
use crate::output::{emit_plot_script, full, Csv, Sink};
use crate::CliError;

#[derive(Args, Debug)]
pub struct FvsnArgs {
    /// Largest squeezing to sweep to (default 0.9)
    #[arg(long)]
    lambda_max: Option<f64>,
    /// Samples per curve (default 200)
    #[arg(long)]
    steps: Option<usize>,
    /// Output CSV path, `-` for stdout
    #[arg(long, default_value = "-")]
    out: String,
    /// Also write a plotting script next to the CSV
    #[arg(long)]
    emit_plot: bool,
}

pub fn run(args: FvsnArgs, cfg: &Config) -> Result<(), CliError> {
    let lambda_max = cfg.resolve(args.lambda_max, "lambda-max")?.unwrap_or(0.9);
    let steps = cfg.resolve(args.steps, "steps")?.unwrap_or(200);
    let points = fvsn_curves(lambda_max, steps)?;

    let mut csv = Csv::new(&["N", "F", "state"]);
    for p in &points {
        csv.row(&[
            full(p.mean_photon),
            full(p.fidelity),
            p.state.as_str().to_string(),
        ]);
    }
    let sink = Sink::parse(&args.out);
    sink.write_all(&csv.finish())?;
    if args.emit_plot {
        let Some(path) = sink.path() else {
            return Err(CliError::Usage(
                "--emit-plot needs --out pointing at a file".into(),
            ));
        };
        let script = emit_plot_script(path, "N", &["F"], Some("state"))?;
        eprintln!("wrote plot script {}", script.display());
    }
    Ok(())
}
