//! Diagonal detector POVM elements in the number basis.

use crate::error::{Error, Result};
use crate::params::{check_eta, DetectorKind};

/// The heralding POVM element of one detector, diagonal in photon number:
/// Π = Σ_n w_n |n⟩⟨n| with 0 ≤ w_n ≤ 1.
///
/// A detector of efficiency η behaves as a beam splitter of transmissivity η
/// feeding an ideal detector, which gives
///
/// - SPD:    w_n = n η (1−η)^{n−1}   (w_0 = 0)
/// - on-off: w_n = 1 − (1−η)^n
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorPovm {
    pub detector: DetectorKind,
    pub eta: f64,
    weights: Vec<f64>,
}

/// POVM weights for the heralding outcome of `detector` at efficiency `eta`,
/// over photon numbers 0..=n_max.
pub fn build_povm(detector: DetectorKind, eta: f64, n_max: usize) -> Result<DetectorPovm> {
    check_eta(eta)?;
    if n_max < 1 {
        return Err(Error::param("n_max", n_max as f64, "n_max >= 1"));
    }
    let loss = 1.0 - eta;
    let weights: Vec<f64> = (0..=n_max)
        .map(|n| match detector {
            DetectorKind::Spd => {
                if n == 0 {
                    0.0
                } else {
                    n as f64 * eta * loss.powi(n as i32 - 1)
                }
            }
            DetectorKind::OnOff => 1.0 - loss.powi(n as i32),
        })
        .collect();
    Ok(DetectorPovm {
        detector,
        eta,
        weights,
    })
}

impl DetectorPovm {
    pub fn weight(&self, n: usize) -> f64 {
        self.weights[n]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_max(&self) -> usize {
        self.weights.len() - 1
    }
}
