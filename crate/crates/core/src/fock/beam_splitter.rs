//! Beam-splitter amplitudes on photon-number sectors with a vacuum ancilla.

use crate::error::{Error, Result};

/// Amplitudes b⁽ⁿ⁾_k for |n, 0⟩ → |n−k, k⟩ under a beam splitter of
/// transmissivity T:
///
/// b⁽ⁿ⁾_k = √( C(n,k) T^{n−k} (1−T)^k )
///
/// Relative phases between outcomes are irrelevant here because the ancilla
/// is measured with a number-diagonal POVM, so the amplitudes are kept real
/// and non-negative. Each sector is unitary: Σ_k (b⁽ⁿ⁾_k)² = 1.
#[derive(Debug, Clone)]
pub struct BeamSplitterKernel {
    pub transmissivity: f64,
    /// rows[n][k], 0 ≤ k ≤ n ≤ n_max
    rows: Vec<Vec<f64>>,
}

impl BeamSplitterKernel {
    pub fn new(transmissivity: f64, n_max: usize) -> Result<Self> {
        if !(transmissivity > 0.0 && transmissivity <= 1.0) {
            return Err(Error::param("T", transmissivity, "0 < T <= 1"));
        }
        let t = transmissivity;
        let r = 1.0 - t;
        let mut rows = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = Vec::with_capacity(n + 1);
            // binomial C(n,k) by the multiplicative recurrence
            let mut binom = 1.0_f64;
            for k in 0..=n {
                if k > 0 {
                    binom *= (n - k + 1) as f64 / k as f64;
                }
                let amp2 = binom * t.powi((n - k) as i32) * r.powi(k as i32);
                row.push(amp2.sqrt());
            }
            rows.push(row);
        }
        Ok(BeamSplitterKernel {
            transmissivity,
            rows,
        })
    }

    /// Amplitude for |n, 0⟩ → |n−k, k⟩.
    pub fn amplitude(&self, n: usize, k: usize) -> f64 {
        self.rows[n][k]
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }
}
