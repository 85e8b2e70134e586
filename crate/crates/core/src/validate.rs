//! Closed-form ↔ Fock-simulator comparison harness.
//!
//! Samples parameter points deterministically from a seed, evaluates both
//! routes at each point and reports the worst deviations per
//! (detector, efficiency) case.

use crate::closed_form;
use crate::error::Result;
use crate::fock::{build_povm, subtract_photons, teleport_fidelity, tmsv_coeffs, FockCutoff};
use crate::params::DetectorKind;

/// Deterministic splitmix64 stream; identical seeds give identical samples
/// on every platform.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

#[derive(Debug, Clone)]
pub struct OracleCheckConfig {
    /// Points sampled per (detector, η) case.
    pub samples: usize,
    pub seed: u64,
    /// Fixed cutoff; `None` selects automatically per λ.
    pub n_max: Option<usize>,
    pub tol_fidelity: f64,
    pub tol_prob: f64,
    /// Sampling box. λ is kept below the largest squeezing the cutoff cap
    /// honors at the default tail tolerance.
    pub lambda_range: (f64, f64),
    pub t_range: (f64, f64),
    /// Detector efficiencies exercised per detector kind.
    pub etas: Vec<f64>,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig {
            samples: 25,
            seed: 20240915,
            n_max: None,
            tol_fidelity: 1e-6,
            tol_prob: 1e-8,
            lambda_range: (0.05, 0.80),
            t_range: (0.30, 0.99),
            etas: vec![1.0, 0.95, 0.6],
        }
    }
}

/// Both routes evaluated at one sampled point.
#[derive(Debug, Clone)]
pub struct PointComparison {
    pub lambda: f64,
    pub transmissivity: f64,
    pub n_max: usize,
    pub f_oracle: f64,
    pub f_closed: f64,
    pub p_oracle: f64,
    pub p_closed: f64,
}

/// Worst-case deviations for one (detector, η) case.
#[derive(Debug, Clone)]
pub struct CaseReport {
    pub detector: DetectorKind,
    pub eta: f64,
    pub samples: usize,
    pub max_f_dev: f64,
    pub max_p_dev: f64,
    pub worst_f_point: (f64, f64),
    pub worst_p_point: (f64, f64),
    /// Points that failed to evaluate, with the error text.
    pub failures: Vec<((f64, f64), String)>,
    pub passed: bool,
}

/// Compare both routes at one point.
pub fn compare_point(
    detector: DetectorKind,
    lambda: f64,
    transmissivity: f64,
    eta: f64,
    n_max: Option<usize>,
) -> Result<PointComparison> {
    let cutoff = match n_max {
        Some(n) => {
            let c = FockCutoff::new(n, crate::fock::cutoff::DEFAULT_TAIL_TOL)?;
            c.check_tail(lambda)?;
            c
        }
        None => FockCutoff::auto(lambda, crate::fock::cutoff::DEFAULT_TAIL_TOL)?,
    };
    let state = tmsv_coeffs(lambda, cutoff)?;
    let povm = build_povm(detector, eta, cutoff.n_max)?;
    let resource = subtract_photons(&state, transmissivity, &povm, &povm)?;
    let f_oracle = teleport_fidelity(&resource)?.value;
    let f_closed = closed_form::fidelity(detector, lambda, transmissivity, eta)?;
    let p_closed = closed_form::p_eta(detector, lambda, transmissivity, eta)?;
    Ok(PointComparison {
        lambda,
        transmissivity,
        n_max: cutoff.n_max,
        f_oracle,
        f_closed,
        p_oracle: resource.herald_prob,
        p_closed,
    })
}

/// Run the full comparison: `samples` points per (detector, η) case, all
/// points evaluated concurrently, reports merged in a fixed order.
pub fn oracle_check(cfg: &OracleCheckConfig) -> Vec<CaseReport> {
    let mut cases = Vec::new();
    for detector in DetectorKind::ALL {
        for &eta in &cfg.etas {
            cases.push((detector, eta));
        }
    }

    // sample all points up front so the stream is independent of scheduling
    let mut rng = SplitMix64::new(cfg.seed);
    let mut jobs = Vec::new();
    for &(detector, eta) in &cases {
        for _ in 0..cfg.samples {
            let lambda = rng.uniform(cfg.lambda_range.0, cfg.lambda_range.1);
            let t = rng.uniform(cfg.t_range.0, cfg.t_range.1);
            jobs.push((detector, eta, lambda, t));
        }
    }

    let mut results: Vec<Option<std::result::Result<PointComparison, String>>> =
        vec![None; jobs.len()];
    let n_threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(jobs.len().max(1));
    let chunk = jobs.len().div_ceil(n_threads);
    std::thread::scope(|scope| {
        for (job_chunk, res_chunk) in jobs.chunks(chunk).zip(results.chunks_mut(chunk)) {
            scope.spawn(move || {
                for ((detector, eta, lambda, t), slot) in job_chunk.iter().zip(res_chunk) {
                    let out = compare_point(*detector, *lambda, *t, *eta, cfg.n_max)
                        .map_err(|e| e.to_string());
                    *slot = Some(out);
                }
            });
        }
    });

    let mut reports = Vec::new();
    for (case_idx, &(detector, eta)) in cases.iter().enumerate() {
        let mut report = CaseReport {
            detector,
            eta,
            samples: cfg.samples,
            max_f_dev: 0.0,
            max_p_dev: 0.0,
            worst_f_point: (f64::NAN, f64::NAN),
            worst_p_point: (f64::NAN, f64::NAN),
            failures: Vec::new(),
            passed: true,
        };
        for i in 0..cfg.samples {
            let idx = case_idx * cfg.samples + i;
            let (_, _, lambda, t) = jobs[idx];
            match results[idx].take().expect("job evaluated") {
                Ok(cmp) => {
                    let f_dev = (cmp.f_oracle - cmp.f_closed).abs();
                    let p_dev = (cmp.p_oracle - cmp.p_closed).abs();
                    if f_dev > report.max_f_dev {
                        report.max_f_dev = f_dev;
                        report.worst_f_point = (lambda, t);
                    }
                    if p_dev > report.max_p_dev {
                        report.max_p_dev = p_dev;
                        report.worst_p_point = (lambda, t);
                    }
                }
                Err(msg) => report.failures.push(((lambda, t), msg)),
            }
        }
        report.passed = report.failures.is_empty()
            && report.max_f_dev < cfg.tol_fidelity
            && report.max_p_dev < cfg.tol_prob;
        reports.push(report);
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = SplitMix64::new(8);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn uniform_stays_in_range() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..1000 {
            let x = rng.uniform(0.3, 0.99);
            assert!((0.3..0.99).contains(&x));
        }
    }
}
