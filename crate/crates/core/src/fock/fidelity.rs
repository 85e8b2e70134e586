//! Teleportation fidelity of a coherent input under the unit-gain
//! double-homodyne protocol, computed from the resource's two-mode
//! characteristic function.
//!
//! The teleported state's characteristic function is the input's times the
//! resource's two-mode one on the measurement-conjugate arguments,
//! χ_tel(ξ) = χ_in(ξ) · χ_E(ξ*, ξ), and for a pure coherent input the
//! overlap fidelity collapses to a single two-real-dimensional integral
//!
//!   F = (1/π) ∫ d²ξ e^{−|ξ|²} χ_E(ξ*, ξ),
//!
//! independent of the input amplitude. χ_E is assembled in the number basis
//! from displacement matrix elements. In polar coordinates with u = |ξ|²
//! the radial integrand is e^{−2u} times a polynomial of degree ≤ 2·n_max,
//! so Gauss-Laguerre nodes in v = 2u integrate it exactly at ~n_max nodes;
//! Gauss-Legendre nodes cover the angle, where conjugation symmetry halves
//! the range to [0, π]. The sign/conjugation convention is pinned by the
//! bare-TMSV anchor F = (λ+1)/2, re-verified inside every doubling pass.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::cutoff::FockCutoff;
use crate::fock::displacement::ReducedDisplacement;
use crate::fock::quadrature::{gauss_laguerre, gauss_legendre_on};
use crate::fock::state::{tmsv_coeffs, FockResource, HeraldFactorization};

#[derive(Debug, Clone, Copy)]
pub struct FidelityOptions {
    /// Accept once two successive node doublings agree to this.
    pub tol: f64,
    /// Required agreement of the TMSV anchor with (λ+1)/2.
    pub anchor_tol: f64,
    /// Doublings attempted before giving up.
    pub max_doublings: usize,
}

impl Default for FidelityOptions {
    fn default() -> Self {
        FidelityOptions {
            tol: 1e-9,
            anchor_tol: 1e-8,
            max_doublings: 3,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FidelityOutcome {
    pub value: f64,
    /// |change| across the final node doubling.
    pub error_estimate: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

/// Fidelity of teleporting a coherent state with `resource`, with default
/// convergence controls.
pub fn teleport_fidelity(resource: &FockResource) -> Result<FidelityOutcome> {
    teleport_fidelity_with(resource, FidelityOptions::default())
}

pub fn teleport_fidelity_with(
    resource: &FockResource,
    opts: FidelityOptions,
) -> Result<FidelityOutcome> {
    let n_max = resource.n_max;
    // anchor at the resource's own squeezing when known, else at the
    // stiffest squeezing this cutoff holds to a ~1e-12 tail
    let anchor_lambda = resource.tmsv_lambda.unwrap_or_else(|| {
        1e-12_f64
            .powf(1.0 / (n_max as f64 + 1.0))
            .sqrt()
            .min(0.7)
    });
    let anchor_target = (anchor_lambda + 1.0) / 2.0;
    let anchor_state = tmsv_coeffs(anchor_lambda, FockCutoff::new(n_max, 1.0)?)?;
    let anchor = FockResource::from_pure(anchor_state);

    let sources = [ChiSource::new(resource), ChiSource::new(&anchor)];

    let mut radial = n_max + 8;
    let mut angular = n_max + 9;
    let mut prev: Option<f64> = None;
    let mut last_estimate = f64::INFINITY;
    let mut last_value = f64::NAN;
    for _ in 0..=opts.max_doublings {
        let vals = integrate(&sources, n_max, radial, angular);
        let anchor_err = (vals[1] - anchor_target).abs();
        if let Some(prev_val) = prev {
            let estimate = (vals[0] - prev_val).abs();
            if estimate <= opts.tol && anchor_err <= opts.anchor_tol {
                return Ok(FidelityOutcome {
                    value: vals[0],
                    error_estimate: estimate,
                    radial_nodes: radial,
                    angular_nodes: angular,
                });
            }
            last_estimate = estimate;
        }
        prev = Some(vals[0]);
        last_value = vals[0];
        radial *= 2;
        angular *= 2;
    }
    Err(Error::QuadratureNonConvergence {
        value: last_value,
        estimate: last_estimate,
        tol: opts.tol,
    })
}

/// How to evaluate e^{|ξ|²} χ_E(ξ*, ξ) for one resource.
enum ChiSource<'a> {
    Ensemble(&'a FockResource),
    Factorized {
        f: &'a HeraldFactorization,
        herald: f64,
        nz1: Vec<usize>,
        nz2: Vec<usize>,
    },
}

impl<'a> ChiSource<'a> {
    fn new(resource: &'a FockResource) -> Self {
        match &resource.factorization {
            Some(f) => ChiSource::Factorized {
                f,
                herald: resource.herald_prob,
                nz1: nonzero_indices(&f.w1),
                nz2: nonzero_indices(&f.w2),
            },
            None => ChiSource::Ensemble(resource),
        }
    }

    fn chi(&self, d: &ReducedDisplacement) -> f64 {
        match self {
            ChiSource::Ensemble(r) => chi_ensemble(r, d),
            ChiSource::Factorized {
                f,
                herald,
                nz1,
                nz2,
            } => chi_factorized(f, *herald, nz1, nz2, d),
        }
    }
}

fn nonzero_indices(w: &[f64]) -> Vec<usize> {
    w.iter()
        .enumerate()
        .filter(|(_, v)| **v != 0.0)
        .map(|(i, _)| i)
        .collect()
}

/// Re Σ_k w̄_k ⟨φ_k| D̃(ξ*) ⊗ D̃(ξ) |φ_k⟩ over the explicit ensemble, using
/// D̃(ξ*) = conj(D̃(ξ)) elementwise.
fn chi_ensemble(resource: &FockResource, d: &ReducedDisplacement) -> f64 {
    let mut total = Complex64::ZERO;
    for comp in &resource.components {
        let amps = comp.amps.amps();
        let (r0, c0) = (comp.amps.row0, comp.amps.col0);
        let mut s = Complex64::ZERO;
        for (jp, ap) in amps.iter().enumerate() {
            for (j, a) in amps.iter().enumerate() {
                let dm = d.get(r0 + jp, r0 + j).conj();
                let dn = d.get(c0 + jp, c0 + j);
                s += (ap * a) * dm * dn;
            }
        }
        total += comp.weight * s;
    }
    total.re
}

/// The same quantity summed over all herald outcomes at once via the
/// factorization χ = Σ_{N'N} c_{N'} c_N U_{N'N} V_{N'N} / P, where
/// U_{N'N} = Σ_k w₁(k) b^{(N')}_k b^{(N)}_k conj(D̃[N'−k, N−k]) and V is its
/// mode-2 analogue without the conjugation.
fn chi_factorized(
    f: &HeraldFactorization,
    herald: f64,
    nz1: &[usize],
    nz2: &[usize],
    d: &ReducedDisplacement,
) -> f64 {
    let n = f.coeffs.len();
    let mut total = Complex64::ZERO;
    for np in 0..n {
        let cnp = f.coeffs[np];
        if cnp == 0.0 {
            continue;
        }
        for nn in 0..n {
            let c = cnp * f.coeffs[nn];
            if c == 0.0 {
                continue;
            }
            let lim = np.min(nn);
            let mut u = Complex64::ZERO;
            for &k in nz1 {
                if k > lim {
                    break;
                }
                let b = f.bs.amplitude(np, k) * f.bs.amplitude(nn, k);
                u += (f.w1[k] * b) * d.get(np - k, nn - k).conj();
            }
            let mut v = Complex64::ZERO;
            for &k in nz2 {
                if k > lim {
                    break;
                }
                let b = f.bs.amplitude(np, k) * f.bs.amplitude(nn, k);
                v += (f.w2[k] * b) * d.get(np - k, nn - k);
            }
            total += c * u * v;
        }
    }
    total.re / herald
}

/// Evaluate F = (1/2π) Σ_θ w_θ Σ_v w_v Re χ̃(√(v/2)·e^{iθ}) for every source
/// in one pass, sharing the displacement table per quadrature point.
fn integrate(sources: &[ChiSource<'_>], n_max: usize, radial: usize, angular: usize) -> Vec<f64> {
    let dim = n_max + 1;
    let (v_nodes, v_weights) = gauss_laguerre(radial);
    let (t_nodes, t_weights) = gauss_legendre_on(angular, 0.0, PI);

    let n_threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(angular);
    let mut per_theta = vec![vec![0.0_f64; sources.len()]; angular];

    std::thread::scope(|scope| {
        for (chunk_idx, chunk) in per_theta.chunks_mut(angular.div_ceil(n_threads)).enumerate() {
            let t_nodes = &t_nodes;
            let v_nodes = &v_nodes;
            let v_weights = &v_weights;
            let start = chunk_idx * angular.div_ceil(n_threads);
            scope.spawn(move || {
                let mut d = ReducedDisplacement::new(dim);
                for (local, acc) in chunk.iter_mut().enumerate() {
                    let theta = t_nodes[start + local];
                    for (v, wv) in v_nodes.iter().zip(v_weights) {
                        let rho = (v * 0.5).sqrt();
                        d.fill(Complex64::from_polar(rho, theta));
                        for (slot, source) in acc.iter_mut().zip(sources) {
                            *slot += wv * source.chi(&d);
                        }
                    }
                }
            });
        }
    });

    let mut out = vec![0.0; sources.len()];
    for (acc, wt) in per_theta.iter().zip(&t_weights) {
        for (o, a) in out.iter_mut().zip(acc) {
            *o += wt * a;
        }
    }
    for o in &mut out {
        *o /= 2.0 * PI;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::povm::build_povm;
    use crate::fock::subtract::subtract_photons;
    use crate::params::DetectorKind;
    use approx::assert_abs_diff_eq;

    fn tmsv_resource(lambda: f64, n_max: usize) -> FockResource {
        let state = tmsv_coeffs(lambda, FockCutoff::new(n_max, 1.0).unwrap()).unwrap();
        FockResource::from_pure(state)
    }

    #[test]
    fn tmsv_anchor_fixes_conventions() {
        // the one value that pins every sign choice in the integral
        let f = teleport_fidelity(&tmsv_resource(0.5, 24)).unwrap();
        assert_abs_diff_eq!(f.value, 0.75, epsilon = 1e-6);
        let f = teleport_fidelity(&tmsv_resource(0.0, 20)).unwrap();
        assert_abs_diff_eq!(f.value, 0.5, epsilon = 1e-8);
        let f = teleport_fidelity(&tmsv_resource(0.8, 54)).unwrap();
        assert_abs_diff_eq!(f.value, 0.9, epsilon = 1e-6);
    }

    #[test]
    fn factorized_and_ensemble_paths_agree() {
        let state = tmsv_coeffs(0.5, FockCutoff::new(24, 1.0).unwrap()).unwrap();
        let povm = build_povm(DetectorKind::OnOff, 0.7, 24).unwrap();
        let mut resource = subtract_photons(&state, 0.8, &povm, &povm).unwrap();
        assert!(resource.factorization.is_some());
        let fast = teleport_fidelity(&resource).unwrap();
        resource.factorization = None;
        let generic = teleport_fidelity(&resource).unwrap();
        assert_abs_diff_eq!(fast.value, generic.value, epsilon = 1e-7);
    }

    #[test]
    fn anchor_fallback_handles_untagged_states() {
        // a hand-built diagonal state (no squeezing metadata): the vacuum,
        // whose fidelity is the classical 1/2
        let state =
            crate::fock::state::TwoModeState::from_diagonal(20, 0, 0, vec![1.0], 1e-10).unwrap();
        assert!(state.tmsv_lambda.is_none());
        let f = teleport_fidelity(&FockResource::from_pure(state)).unwrap();
        assert_abs_diff_eq!(f.value, 0.5, epsilon = 1e-8);
    }

    #[test]
    fn non_convergence_reports_estimate() {
        let resource = tmsv_resource(0.5, 24);
        let err = teleport_fidelity_with(
            &resource,
            FidelityOptions {
                tol: 1e-18, // unattainable
                anchor_tol: 1e-8,
                max_doublings: 1,
            },
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::QuadratureNonConvergence { .. }
        ));
    }
}
