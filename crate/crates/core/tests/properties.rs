//! Invariants over randomly drawn in-domain parameters.

use proptest::prelude::*;
use pstel_core::closed_form;
use pstel_core::fock::BeamSplitterKernel;
use pstel_core::params::{DetectorKind, Metrics, ResourceParams};

fn detector() -> impl Strategy<Value = DetectorKind> {
    prop_oneof![Just(DetectorKind::Spd), Just(DetectorKind::OnOff)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unit_eta_reduces_to_ideal(lambda in 0.0..0.95f64, t in 0.05..1.0f64) {
        let spd = (closed_form::f_sps_eta(lambda, t, 1.0).unwrap()
            - closed_form::f_sps_ideal(lambda, t).unwrap()).abs();
        let onoff = (closed_form::f_ips_eta(lambda, t, 1.0).unwrap()
            - closed_form::f_ips_ideal(lambda, t).unwrap()).abs();
        prop_assert!(spd < 1e-12);
        prop_assert!(onoff < 1e-12);
    }

    #[test]
    fn onoff_heralds_at_least_as_often(lambda in 0.0..0.95f64, t in 0.05..1.0f64) {
        prop_assert!(
            closed_form::p_ips_ideal(lambda, t).unwrap()
                >= closed_form::p_sps_ideal(lambda, t).unwrap()
        );
    }

    #[test]
    fn metrics_are_consistent(
        det in detector(),
        lambda in 0.0..0.95f64,
        t in 0.05..1.0f64,
        eta in 0.3..1.0f64,
    ) {
        let p = ResourceParams::new(det, lambda, t, eta).unwrap();
        let m = Metrics::evaluate(&p);
        prop_assert_eq!(m.merit, m.success_prob * m.delta_f);
        prop_assert!((0.0..=1.0).contains(&m.fidelity));
        prop_assert!((0.0..=1.0).contains(&m.success_prob));
        prop_assert!(m.delta_f.is_finite());
        // ΔF is the defining difference
        let f_tmsv = closed_form::f_tmsv(lambda).unwrap();
        prop_assert!((m.delta_f - (m.fidelity - f_tmsv)).abs() < 1e-15);
    }

    #[test]
    fn fidelity_nondecreasing_in_eta(
        det in detector(),
        lambda in 0.05..0.9f64,
        t in 0.1..0.999f64,
        eta in 0.3..0.999f64,
    ) {
        let step = 1e-3;
        let lo = closed_form::fidelity(det, lambda, t, eta).unwrap();
        let hi = closed_form::fidelity(det, lambda, t, eta + step).unwrap();
        prop_assert!(hi >= lo - 1e-12, "F(η+δ) = {} < F(η) = {}", hi, lo);
    }

    #[test]
    fn fidelity_peaks_at_unit_transmissivity(
        lambda in 0.0..0.95f64,
        t in 0.05..1.0f64,
    ) {
        let spd_limit = closed_form::f_sps_ideal(lambda, 1.0).unwrap();
        prop_assert!(closed_form::f_sps_ideal(lambda, t).unwrap() <= spd_limit + 1e-12);
        let onoff_limit = closed_form::f_ips_ideal(lambda, 1.0 - 1e-9).unwrap();
        prop_assert!(closed_form::f_ips_ideal(lambda, t).unwrap() <= onoff_limit + 1e-9);
    }

    #[test]
    fn beam_splitter_sectors_stay_unitary(t in 0.001..1.0f64) {
        let bs = BeamSplitterKernel::new(t, 40).unwrap();
        for n in 0..=40 {
            let norm: f64 = (0..=n).map(|k| bs.amplitude(n, k).powi(2)).sum();
            prop_assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn out_of_domain_is_rejected(
        det in detector(),
        lambda in prop_oneof![Just(-0.1f64), Just(1.0f64), Just(1.5f64)],
    ) {
        prop_assert!(ResourceParams::new(det, lambda, 0.5, 1.0).is_err());
        prop_assert!(closed_form::f_tmsv(lambda).is_err());
        prop_assert!(closed_form::merit_r(det, lambda, 0.5, 1.0).is_err());
    }
}
