//! Closed-form fidelities, heralding probabilities, photon numbers and the
//! figure of merit R = P·ΔF, as pure functions of the resource parameters.
//!
//! Every expression here is independently cross-checked against the
//! truncated Fock-space simulator in [`crate::fock`]; the `oracle-check`
//! command and the acceptance suite run that comparison end to end.

use crate::error::Result;
use crate::params::{check_eta, check_lambda, check_t_closed, DetectorKind, Metrics, ResourceParams};

/// Teleportation fidelity of a coherent state using the bare two-mode
/// squeezed vacuum resource: F = (λ+1)/2.
///
/// The classical benchmark without entanglement is 1/2, attained at λ = 0.
pub fn f_tmsv(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok((lambda + 1.0) / 2.0)
}

/// Fidelity with the resource heralded by ideal single photon detectors on
/// both tapped ports.
///
/// F = (λT+1)³ (2 − λT(2−λT)) / (4 (λ²T²+1))
pub fn f_sps_ideal(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    Ok(f_sps_ideal_raw(lambda, t))
}

fn f_sps_ideal_raw(lambda: f64, t: f64) -> f64 {
    let lt = lambda * t;
    (lt + 1.0).powi(3) * (2.0 - lt * (2.0 - lt)) / (4.0 * (lt * lt + 1.0))
}

/// Fidelity with the resource heralded by ideal on-off detectors on both
/// tapped ports.
///
/// F = (λ+1)(λT+1)(2−(2−λ)λT)(1−λ²T)
///     / [2 (λ(1−T)+1) (λ²T+1) (2 − λT(λ(1−T)+2))]
pub fn f_ips_ideal(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    Ok(f_ips_ideal_raw(lambda, t))
}

fn f_ips_ideal_raw(lambda: f64, t: f64) -> f64 {
    let lt = lambda * t;
    let l2 = lambda * lambda;
    let num = (lambda + 1.0) * (lt + 1.0) * (2.0 - (2.0 - lambda) * lt) * (1.0 - l2 * t);
    let den = 2.0
        * (lambda * (1.0 - t) + 1.0)
        * (l2 * t + 1.0)
        * (2.0 - lt * (lambda * (1.0 - t) + 2.0));
    num / den
}

/// Heralding probability of the two-sided single-photon subtraction.
///
/// P = λ² (1−λ²) (1−T)² (λ²T²+1) / (1−λ²T²)³
pub fn p_sps_ideal(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    Ok(p_sps_ideal_raw(lambda, t))
}

fn p_sps_ideal_raw(lambda: f64, t: f64) -> f64 {
    let l2 = lambda * lambda;
    let l2t2 = l2 * t * t;
    let omt = 1.0 - t;
    l2 * (1.0 - l2) * omt * omt * (l2t2 + 1.0) / (1.0 - l2t2).powi(3)
}

/// Heralding probability of the two-sided on-off subtraction.
///
/// P = λ² (1−T)² (λ²T+1) / [(1−λ²T)(1−λ²T²)]
pub fn p_ips_ideal(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    Ok(p_ips_ideal_raw(lambda, t))
}

fn p_ips_ideal_raw(lambda: f64, t: f64) -> f64 {
    let l2 = lambda * lambda;
    let omt = 1.0 - t;
    let l2t = l2 * t;
    l2 * omt * omt * (l2t + 1.0) / ((1.0 - l2t) * (1.0 - l2t * t))
}

/// Fidelity with single photon detectors of efficiency η on the tapped
/// ports. Reduces to [`f_sps_ideal`] at η = 1.
pub fn f_sps_eta(lambda: f64, t: f64, eta: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    check_eta(eta)?;
    Ok(f_sps_eta_raw(lambda, t, eta))
}

fn f_sps_eta_raw(lambda: f64, t: f64, eta: f64) -> f64 {
    let omt = 1.0 - t;
    // λ·T_eff with T_eff = 1 − η(1−T)
    let lte = lambda - eta * lambda * omt;
    let inner = 2.0 * eta * eta * omt * omt - 2.0 * eta * (2.0 - t) * omt - (2.0 - t) * t + 2.0;
    let num = (lte + 1.0).powi(3) * (lambda * lambda * inner - 2.0 * lambda * t + 2.0);
    let den = 4.0 * ((1.0 - eta) * lambda * omt + 1.0).powi(3) * (lte * lte + 1.0);
    num / den
}

/// Fidelity with on-off detectors of efficiency η on the tapped ports.
/// Reduces to [`f_ips_ideal`] at η = 1.
pub fn f_ips_eta(lambda: f64, t: f64, eta: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    check_eta(eta)?;
    Ok(f_ips_eta_raw(lambda, t, eta))
}

fn f_ips_eta_raw(lambda: f64, t: f64, eta: f64) -> f64 {
    let l2 = lambda * lambda;
    let omt = 1.0 - t;
    let te = 1.0 - eta * omt; // T_eff
    let num = (lambda + 1.0)
        * (1.0 + lambda - omt * eta * lambda)
        * (1.0 - te * l2)
        * (2.0 - lambda * (-2.0 * lambda - lambda * (2.0 - t) * ((1.0 - eta) * (-t) - eta) + 2.0 * t));
    let den = 2.0
        * (lambda * omt + 1.0)
        * ((1.0 - eta) * lambda * omt + 1.0)
        * (2.0 - l2 * omt * (2.0 - eta * (2.0 - t)) - 2.0 * lambda * t)
        * (l2 * te + 1.0);
    num / den
}

/// Heralding probability with detectors of efficiency η: the ideal-detector
/// expression evaluated at T_eff = 1 − η(1−T). Unlike the fidelity, this
/// substitution is exact for the success probability.
pub fn p_eta(detector: DetectorKind, lambda: f64, t: f64, eta: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    check_eta(eta)?;
    let t_eff = 1.0 - eta * (1.0 - t);
    Ok(match detector {
        DetectorKind::Spd => p_sps_ideal_raw(lambda, t_eff),
        DetectorKind::OnOff => p_ips_ideal_raw(lambda, t_eff),
    })
}

/// Fidelity with detectors of efficiency η, dispatched on the detector kind.
pub fn fidelity(detector: DetectorKind, lambda: f64, t: f64, eta: f64) -> Result<f64> {
    match detector {
        DetectorKind::Spd => f_sps_eta(lambda, t, eta),
        DetectorKind::OnOff => f_ips_eta(lambda, t, eta),
    }
}

/// Fidelity enhancement over the bare squeezed-vacuum resource:
/// ΔF = F(λ,T,η) − F_TMSV(λ). May be negative.
pub fn delta_f(detector: DetectorKind, lambda: f64, t: f64, eta: f64) -> Result<f64> {
    Ok(fidelity(detector, lambda, t, eta)? - f_tmsv(lambda)?)
}

/// Figure of merit R = P · ΔF, the product of heralding probability and
/// fidelity enhancement.
pub fn merit_r(detector: DetectorKind, lambda: f64, t: f64, eta: f64) -> Result<f64> {
    Ok(p_eta(detector, lambda, t, eta)? * delta_f(detector, lambda, t, eta)?)
}

/// All metrics at a validated parameter point. Infallible: the params type
/// already guarantees the domain.
pub fn metrics(params: &ResourceParams) -> Metrics {
    let (l, t, eta) = (params.lambda, params.transmissivity, params.eta);
    let f = match params.detector {
        DetectorKind::Spd => f_sps_eta_raw(l, t, eta),
        DetectorKind::OnOff => f_ips_eta_raw(l, t, eta),
    };
    let t_eff = 1.0 - eta * (1.0 - t);
    let p = match params.detector {
        DetectorKind::Spd => p_sps_ideal_raw(l, t_eff),
        DetectorKind::OnOff => p_ips_ideal_raw(l, t_eff),
    };
    let df = f - (l + 1.0) / 2.0;
    Metrics {
        fidelity: f,
        success_prob: p,
        delta_f: df,
        merit: p * df,
    }
}

/// Common unit-transmissivity limit of both heralded fidelities:
/// F = (λ+1)³ (2−(2−λ)λ) / (4(λ²+1))
pub fn f_limit_t1(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok((lambda + 1.0).powi(3) * (2.0 - (2.0 - lambda) * lambda) / (4.0 * (lambda * lambda + 1.0)))
}

/// Mean photon number of the two-mode squeezed vacuum: ⟨N⟩ = 2λ²/(1−λ²).
pub fn n_tmsv(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let l2 = lambda * lambda;
    Ok(2.0 * l2 / (1.0 - l2))
}

/// Mean photon number of the SPD-heralded resource:
/// ⟨N⟩ = 4λ²T²(λ²T²+2)/(1−λ⁴T⁴).
pub fn n_sps(lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t_closed(t)?;
    let x = lambda * lambda * t * t;
    Ok(4.0 * x * (x + 2.0) / (1.0 - x * x))
}

/// Mean-photon-number enhancement ΔN = ⟨N⟩_SPS − ⟨N⟩_TMSV of the
/// SPD-heralded resource over the bare one.
pub fn delta_n_sps(lambda: f64, t: f64) -> Result<f64> {
    Ok(n_sps(lambda, t)? - n_tmsv(lambda)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn tmsv_fidelity_anchors() {
        assert_eq!(f_tmsv(0.0).unwrap(), 0.5);
        assert_eq!(f_tmsv(0.5).unwrap(), 0.75);
        assert_abs_diff_eq!(f_tmsv(0.56).unwrap(), 0.78, epsilon = 1e-15);
        assert!(f_tmsv(1.0).is_err());
        assert!(f_tmsv(-0.2).is_err());
    }

    #[test]
    fn classical_benchmark_iff_lambda_positive() {
        assert_eq!(f_tmsv(0.0).unwrap(), 0.5);
        for i in 1..40 {
            let l = i as f64 / 41.0;
            assert!(f_tmsv(l).unwrap() > 0.5);
        }
    }

    // Expected values frozen from the Fock oracle at n_max = 40
    // (tests/oracle_equivalence.rs re-derives them live).
    #[test]
    fn sps_fidelity_values() {
        assert_abs_diff_eq!(f_sps_ideal(0.56, 0.77).unwrap(), 0.8180, epsilon = 1e-3);
        for t in [0.1, 0.5, 0.9, 1.0] {
            assert_eq!(f_sps_ideal(0.0, t).unwrap(), 0.5);
        }
        assert_eq!(
            f_sps_ideal(0.5, 1.0).unwrap(),
            f_limit_t1(0.5).unwrap(),
            "unit-T limit identity"
        );
    }

    #[test]
    fn ips_fidelity_values() {
        assert_abs_diff_eq!(f_ips_ideal(0.49, 0.84).unwrap(), 0.7803, epsilon = 1e-3);
        for t in [0.1, 0.5, 0.9] {
            assert_eq!(f_ips_ideal(0.0, t).unwrap(), 0.5);
        }
        // both heralded fidelities coincide as T → 1
        let lim = f_sps_ideal(0.5, 1.0).unwrap();
        assert_abs_diff_eq!(f_ips_ideal(0.5, 1.0 - 1e-7).unwrap(), lim, epsilon = 1e-6);
    }

    #[test]
    fn success_probability_values() {
        assert_abs_diff_eq!(p_sps_ideal(0.56, 0.77).unwrap(), 0.0250, epsilon = 5e-4);
        assert_abs_diff_eq!(p_ips_ideal(0.49, 0.84).unwrap(), 0.01114, epsilon = 2e-4);
        for l in [0.2, 0.5, 0.8] {
            assert_eq!(p_sps_ideal(l, 1.0).unwrap(), 0.0);
            assert_eq!(p_ips_ideal(l, 1.0).unwrap(), 0.0);
        }
        for t in [0.3, 0.7, 1.0] {
            assert_eq!(p_sps_ideal(0.0, t).unwrap(), 0.0);
            assert_eq!(p_ips_ideal(0.0, t).unwrap(), 0.0);
        }
    }

    #[test]
    fn eta_one_reduces_to_ideal() {
        for i in 0..20 {
            for j in 0..20 {
                let l = 0.02 + 0.93 * i as f64 / 19.0;
                let t = 0.05 + 0.95 * j as f64 / 19.0;
                assert_abs_diff_eq!(
                    f_sps_eta(l, t, 1.0).unwrap(),
                    f_sps_ideal(l, t).unwrap(),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    f_ips_eta(l, t, 1.0).unwrap(),
                    f_ips_ideal(l, t).unwrap(),
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    p_eta(DetectorKind::Spd, l, t, 1.0).unwrap(),
                    p_sps_ideal(l, t).unwrap(),
                    epsilon = 1e-15
                );
            }
        }
    }

    #[test]
    fn non_ideal_reference_rows() {
        // SPD at η = 0.95 and on-off at η = 0.60, at their optimal points
        let df_spd = delta_f(DetectorKind::Spd, 0.55, 0.77, 0.95).unwrap();
        assert_abs_diff_eq!(df_spd, 0.036, epsilon = 2e-3);
        let p_spd = p_eta(DetectorKind::Spd, 0.55, 0.77, 0.95).unwrap();
        assert_abs_diff_eq!(p_spd, 0.021, epsilon = 2e-3);
        let df_onoff = delta_f(DetectorKind::OnOff, 0.47, 0.85, 0.60).unwrap();
        assert_abs_diff_eq!(df_onoff, 0.032, epsilon = 3e-3);
    }

    #[test]
    fn delta_f_signs() {
        for t in [0.2, 0.6, 0.95] {
            assert_eq!(delta_f(DetectorKind::Spd, 0.0, t, 1.0).unwrap(), 0.0);
            assert_eq!(delta_f(DetectorKind::OnOff, 0.0, t, 1.0).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(
            delta_f(DetectorKind::Spd, 0.56, 0.77, 1.0).unwrap(),
            0.037,
            epsilon = 2e-3
        );
        assert!(delta_f(DetectorKind::Spd, 0.9, 0.3, 1.0).unwrap() < 0.0);
    }

    #[test]
    fn merit_values() {
        for t in [0.2, 0.6, 0.95] {
            assert_eq!(merit_r(DetectorKind::Spd, 0.0, t, 1.0).unwrap(), 0.0);
        }
        let r_spd = merit_r(DetectorKind::Spd, 0.56, 0.77, 1.0).unwrap();
        assert!((r_spd - 9.5e-4).abs() < 0.05 * 9.5e-4, "r_spd = {r_spd}");
        let r_onoff = merit_r(DetectorKind::OnOff, 0.49, 0.84, 1.0).unwrap();
        assert!((r_onoff - 3.9e-4).abs() < 0.05 * 3.9e-4, "r_onoff = {r_onoff}");
    }

    #[test]
    fn metrics_product_identity() {
        for (det, l, t, eta) in [
            (DetectorKind::Spd, 0.56, 0.77, 1.0),
            (DetectorKind::Spd, 0.55, 0.77, 0.95),
            (DetectorKind::OnOff, 0.49, 0.84, 1.0),
            (DetectorKind::OnOff, 0.47, 0.85, 0.60),
            (DetectorKind::Spd, 0.9, 0.3, 0.8),
        ] {
            let p = ResourceParams::new(det, l, t, eta).unwrap();
            let m = Metrics::evaluate(&p);
            assert_eq!(m.merit, m.success_prob * m.delta_f);
            assert!(m.fidelity >= 0.0 && m.fidelity <= 1.0);
            assert!(m.success_prob >= 0.0 && m.success_prob <= 1.0);
        }
    }

    #[test]
    fn unit_t_limit_values() {
        assert_eq!(f_limit_t1(0.0).unwrap(), 0.5);
        assert_eq!(f_limit_t1(0.5).unwrap(), f_sps_ideal(0.5, 1.0).unwrap());
        for i in 0..100 {
            let l = 0.99 * i as f64 / 99.0;
            assert_abs_diff_eq!(
                f_sps_ideal(l, 1.0).unwrap(),
                f_limit_t1(l).unwrap(),
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                f_ips_ideal(l, 1.0 - 1e-9).unwrap(),
                f_limit_t1(l).unwrap(),
                epsilon = 1e-6
            );
        }
    }

    #[test]
    fn mean_photon_numbers() {
        assert_eq!(n_tmsv(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(n_tmsv(0.5).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(n_sps(0.0, 0.7).unwrap(), 0.0);
        assert_eq!(n_sps(0.6, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(n_sps(0.5, 1.0).unwrap(), 2.4, epsilon = 1e-15);
    }

    #[test]
    fn photon_enhancement_signs() {
        assert_eq!(delta_n_sps(0.0, 0.5).unwrap(), 0.0);
        assert!(delta_n_sps(0.5, 1.0).unwrap() > 0.0);
        // high squeezing with a lossy tap removes more photons than it adds
        assert!(delta_n_sps(0.9, 0.3).unwrap() < 0.0);
    }

    #[test]
    fn ips_dominates_sps_probability() {
        for i in 0..50 {
            for j in 0..50 {
                let l = 0.01 + 0.94 * i as f64 / 49.0;
                let t = 0.05 + 0.949 * j as f64 / 49.0;
                assert!(
                    p_ips_ideal(l, t).unwrap() >= p_sps_ideal(l, t).unwrap(),
                    "violated at ({l}, {t})"
                );
            }
        }
    }

    #[test]
    fn outputs_finite_on_grid() {
        for i in 0..50 {
            for j in 0..50 {
                let l = 0.95 * i as f64 / 49.0;
                let t = 0.001 + 0.999 * j as f64 / 49.0;
                for det in DetectorKind::ALL {
                    for eta in [1.0, 0.95, 0.6, 0.3] {
                        let m = metrics(&ResourceParams::new(det, l, t, eta).unwrap());
                        assert!(m.fidelity.is_finite());
                        assert!(m.success_prob.is_finite());
                        assert!(m.merit.is_finite());
                    }
                }
            }
        }
    }
}
