//! Grid sweeps over (λ, T, η) and the fidelity-vs-photon-number curves.

use crate::closed_form;
use crate::error::{Error, Result};
use crate::params::{DetectorKind, Metrics, ResourceParams};

/// One sweep axis: either a fixed value or `steps ≥ 2` uniform points over
/// [start, end].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepAxis {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn fixed(value: f64) -> Self {
        SweepAxis {
            start: value,
            end: value,
            steps: 1,
        }
    }

    pub fn range(start: f64, end: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::param("steps", steps as f64, "range axes need steps >= 2"));
        }
        if end.is_nan() || start.is_nan() || end <= start {
            return Err(Error::param("range", end, "end must exceed start"));
        }
        Ok(SweepAxis { start, end, steps })
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let denom = (self.steps.max(2) - 1) as f64;
        (0..self.steps).map(move |i| {
            if self.steps == 1 {
                self.start
            } else {
                self.start + (self.end - self.start) * i as f64 / denom
            }
        })
    }
}

/// A sweep request: detector plus one axis per parameter. Fixed axes have a
/// single step, so 1-D and 2-D sweeps are special cases.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub detector: DetectorKind,
    pub lambda: SweepAxis,
    pub transmissivity: SweepAxis,
    pub eta: SweepAxis,
}

/// One output row. Photon-number columns are present only for the SPD,
/// whose heralded mean photon number has a closed form.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub lambda: f64,
    pub transmissivity: f64,
    pub eta: f64,
    pub detector: DetectorKind,
    pub metrics: Metrics,
    pub mean_photon: Option<f64>,
    pub delta_photon: Option<f64>,
}

/// Evaluate the sweep in λ-major order (then T, then η innermost).
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    validate_axis(&spec.lambda, "lambda", 0.0, 0.95)?;
    validate_axis(&spec.transmissivity, "T", 0.001, 1.0)?;
    validate_axis(&spec.eta, "eta", 0.001, 1.0)?;
    let mut rows =
        Vec::with_capacity(spec.lambda.steps * spec.transmissivity.steps * spec.eta.steps);
    for lambda in spec.lambda.values() {
        for t in spec.transmissivity.values() {
            for eta in spec.eta.values() {
                let params = ResourceParams::new(spec.detector, lambda, t, eta)?;
                let metrics = Metrics::evaluate(&params);
                assert!(
                    metrics.fidelity.is_finite()
                        && metrics.success_prob.is_finite()
                        && metrics.merit.is_finite(),
                    "non-finite metrics at ({lambda}, {t}, {eta})"
                );
                let (mean_photon, delta_photon) = match spec.detector {
                    DetectorKind::Spd => (
                        Some(closed_form::n_sps(lambda, t)?),
                        Some(closed_form::delta_n_sps(lambda, t)?),
                    ),
                    DetectorKind::OnOff => (None, None),
                };
                rows.push(SweepRow {
                    lambda,
                    transmissivity: t,
                    eta,
                    detector: spec.detector,
                    metrics,
                    mean_photon,
                    delta_photon,
                });
            }
        }
    }
    Ok(rows)
}

fn validate_axis(axis: &SweepAxis, name: &'static str, lo: f64, hi: f64) -> Result<()> {
    for v in [axis.start, axis.end] {
        if !(v >= lo && v <= hi) {
            return Err(Error::param(name, v, "sweep range outside parameter domain"));
        }
    }
    Ok(())
}

/// Which family a fidelity-vs-photon-number sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveState {
    Tmsv,
    Sps,
}

impl CurveState {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveState::Tmsv => "tmsv",
            CurveState::Sps => "sps",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FvsnPoint {
    pub mean_photon: f64,
    pub fidelity: f64,
    pub state: CurveState,
}

/// Parametric (⟨N̂⟩, F) curves over λ: the bare squeezed vacuum, and the
/// unit-transmissivity subtracted state ∝ â₁â₂|TMSV⟩. Both start at the
/// vacuum point (0, 1/2).
pub fn fvsn_curves(lambda_max: f64, steps: usize) -> Result<Vec<FvsnPoint>> {
    crate::params::check_lambda(lambda_max)?;
    if steps < 2 {
        return Err(Error::param("steps", steps as f64, "steps >= 2"));
    }
    let mut points = Vec::with_capacity(2 * steps);
    for state in [CurveState::Tmsv, CurveState::Sps] {
        for i in 0..steps {
            let lambda = lambda_max * i as f64 / (steps - 1) as f64;
            let (n, f) = match state {
                CurveState::Tmsv => (closed_form::n_tmsv(lambda)?, closed_form::f_tmsv(lambda)?),
                CurveState::Sps => (
                    closed_form::n_sps(lambda, 1.0)?,
                    closed_form::f_limit_t1(lambda)?,
                ),
            };
            points.push(FvsnPoint {
                mean_photon: n,
                fidelity: f,
                state,
            });
        }
    }
    Ok(points)
}

/// Linear interpolation of fidelity at a given mean photon number along one
/// curve (photon number is strictly increasing in λ on both curves).
pub fn interpolate_fidelity(points: &[FvsnPoint], state: CurveState, n: f64) -> Option<f64> {
    let curve: Vec<&FvsnPoint> = points.iter().filter(|p| p.state == state).collect();
    for pair in curve.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if n >= a.mean_photon && n <= b.mean_photon {
            let span = b.mean_photon - a.mean_photon;
            if span == 0.0 {
                return Some(a.fidelity);
            }
            let w = (n - a.mean_photon) / span;
            return Some(a.fidelity + w * (b.fidelity - a.fidelity));
        }
    }
    None
}
