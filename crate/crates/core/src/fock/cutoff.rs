//! Truncation control for the Fock-basis simulation.

use crate::error::{Error, Result};
use crate::params::check_lambda;

/// Smallest cutoff the automatic selection will return.
pub const N_MAX_FLOOR: usize = 20;
/// Largest cutoff the automatic selection will accept.
pub const N_MAX_CAP: usize = 80;
/// Default bound on the squeezed-vacuum probability tail past the cutoff.
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;

/// Maximum photon number kept per mode (inclusive), together with the tail
/// tolerance the cutoff is required to honor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCutoff {
    pub n_max: usize,
    pub tail_tol: f64,
}

impl FockCutoff {
    pub fn new(n_max: usize, tail_tol: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::param("n_max", n_max as f64, "n_max >= 1"));
        }
        if tail_tol.is_nan() || tail_tol <= 0.0 {
            return Err(Error::param("tail_tol", tail_tol, "tail_tol > 0"));
        }
        Ok(FockCutoff { n_max, tail_tol })
    }

    /// Smallest cutoff whose squeezed-vacuum tail λ^{2(n_max+1)}/(1−λ²)
    /// stays below `tail_tol`, clamped to [`N_MAX_FLOOR`] and capped at
    /// [`N_MAX_CAP`].
    pub fn auto(lambda: f64, tail_tol: f64) -> Result<Self> {
        check_lambda(lambda)?;
        if tail_tol.is_nan() || tail_tol <= 0.0 {
            return Err(Error::param("tail_tol", tail_tol, "tail_tol > 0"));
        }
        let mut n_max = N_MAX_FLOOR;
        while tail_bound(lambda, n_max) > tail_tol {
            n_max += 1;
            if n_max > N_MAX_CAP {
                return Err(Error::CutoffTooSmall {
                    n_max: N_MAX_CAP,
                    tail: tail_bound(lambda, N_MAX_CAP),
                    tol: tail_tol,
                });
            }
        }
        Ok(FockCutoff { n_max, tail_tol })
    }

    /// Verify this cutoff can hold a squeezed vacuum of the given λ.
    pub fn check_tail(&self, lambda: f64) -> Result<()> {
        let tail = tail_bound(lambda, self.n_max);
        if tail > self.tail_tol {
            return Err(Error::CutoffTooSmall {
                n_max: self.n_max,
                tail,
                tol: self.tail_tol,
            });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Probability mass of a two-mode squeezed vacuum past photon number
/// `n_max` per mode: Σ_{n>n_max} (1−λ²)λ^{2n} · 1/(1−λ²) ≤ λ^{2(n_max+1)}/(1−λ²).
pub fn tail_bound(lambda: f64, n_max: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let l2 = lambda * lambda;
    l2.powi(n_max as i32 + 1) / (1.0 - l2)
}
