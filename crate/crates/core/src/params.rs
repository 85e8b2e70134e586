//! Parameter-space types shared by every evaluation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The heralding detector placed on each tapped beam-splitter port.
///
/// `Spd` projects onto the one-photon outcome (single photon detector);
/// `OnOff` fires on "at least one photon" and cannot resolve number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectorKind {
    Spd,
    OnOff,
}

impl DetectorKind {
    pub const ALL: [DetectorKind; 2] = [DetectorKind::Spd, DetectorKind::OnOff];

    pub fn as_str(self) -> &'static str {
        match self {
            DetectorKind::Spd => "spd",
            DetectorKind::OnOff => "onoff",
        }
    }
}

impl fmt::Display for DetectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DetectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spd" => Ok(DetectorKind::Spd),
            "onoff" | "on-off" => Ok(DetectorKind::OnOff),
            _ => Err(Error::param("detector", f64::NAN, "one of {spd, onoff}")),
        }
    }
}

/// One point in parameter space: squeezing λ = tanh r, beam-splitter
/// transmissivity T, detector efficiency η, and the detector kind.
///
/// Domain: 0 ≤ λ < 1, 0 < T ≤ 1, 0 < η ≤ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceParams {
    pub lambda: f64,
    pub transmissivity: f64,
    pub eta: f64,
    pub detector: DetectorKind,
}

impl ResourceParams {
    pub fn new(detector: DetectorKind, lambda: f64, transmissivity: f64, eta: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if !(transmissivity > 0.0 && transmissivity <= 1.0) {
            return Err(Error::param("T", transmissivity, "0 < T <= 1"));
        }
        check_eta(eta)?;
        Ok(ResourceParams {
            lambda,
            transmissivity,
            eta,
            detector,
        })
    }

    /// Effective transmissivity 1 − η(1−T): a beam-splitter tap followed by
    /// a detector of efficiency η heralds with the same probability as an
    /// ideal detector behind a tap of this transmissivity.
    pub fn t_eff(&self) -> f64 {
        1.0 - self.eta * (1.0 - self.transmissivity)
    }
}

/// All figure-of-merit outputs at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub fidelity: f64,
    pub success_prob: f64,
    pub delta_f: f64,
    /// R = P · ΔF, always stored as the exact product of the two fields.
    pub merit: f64,
}

impl Metrics {
    pub fn evaluate(params: &ResourceParams) -> Metrics {
        crate::closed_form::metrics(params)
    }
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::param("lambda", lambda, "0 <= lambda < 1"));
    }
    Ok(())
}

/// Closed-form expressions stay finite on the closed interval [0, 1], so the
/// scalar evaluators admit T = 0 even though heralding setups require T > 0.
pub(crate) fn check_t_closed(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::param("T", t, "0 <= T <= 1"));
    }
    Ok(())
}

pub(crate) fn check_eta(eta: f64) -> Result<()> {
    if eta.is_nan() || eta <= 0.0 || eta > 1.0 {
        return Err(Error::param("eta", eta, "0 < eta <= 1"));
    }
    Ok(())
}
