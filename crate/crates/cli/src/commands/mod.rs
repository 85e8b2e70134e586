pub mod contours;
pub mod eval;
pub mod fvsn;
pub mod optimize;
pub mod oracle_check;
pub mod sweep;
pub mod table2;

use pstel_core::params::DetectorKind;
use pstel_core::sweep::SweepAxis;

use crate::config::Config;
use crate::CliError;

/// Detector flag with config fallback; required one way or the other.
pub fn resolve_detector(flag: Option<String>, cfg: &Config) -> Result<DetectorKind, CliError> {
    let raw = flag
        .or_else(|| cfg.raw("detector").map(str::to_string))
        .ok_or_else(|| CliError::Usage("--detector {spd|onoff} is required".into()))?;
    raw.parse::<DetectorKind>()
        .map_err(|_| CliError::Usage(format!("unknown detector `{raw}` (expected spd or onoff)")))
}

/// Parse an axis: `v` (fixed), `a:b` (range, steps supplied elsewhere) or
/// `a:b:n` (explicit step count).
pub fn parse_axis(spec: &str, default_steps: usize) -> Result<SweepAxis, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("cannot parse `{s}` as a number in `{spec}`")))
    };
    match parts.as_slice() {
        [v] => Ok(SweepAxis::fixed(num(v)?)),
        [a, b] => SweepAxis::range(num(a)?, num(b)?, default_steps).map_err(CliError::from),
        [a, b, n] => {
            let steps = n
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("bad step count `{n}` in `{spec}`")))?;
            SweepAxis::range(num(a)?, num(b)?, steps).map_err(CliError::from)
        }
        _ => Err(CliError::Usage(format!(
            "axis `{spec}` must be `v`, `a:b` or `a:b:steps`"
        ))),
    }
}

/// Parse `AxB` (or a single `N` meaning `NxN`) grid shapes.
pub fn parse_grid(spec: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("grid `{spec}` must look like 256x256"));
    match spec.split_once(['x', 'X']) {
        Some((a, b)) => Ok((
            a.parse().map_err(|_| bad())?,
            b.parse().map_err(|_| bad())?,
        )),
        None => {
            let n: usize = spec.parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}
