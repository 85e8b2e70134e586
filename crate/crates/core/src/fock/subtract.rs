//! Heralded photon subtraction: a beam-splitter tap with vacuum ancilla on
//! each mode, followed by a number-diagonal POVM on each ancilla.

use crate::error::{Error, Result};
use crate::fock::beam_splitter::BeamSplitterKernel;
use crate::fock::povm::DetectorPovm;
use crate::fock::state::{FockResource, HeraldFactorization, ResourceComponent, TwoModeState};

/// Ensemble members whose normalized weight falls below this are dropped
/// from the component list (their mass stays in `herald_prob` and is
/// reported as `discarded_weight`). Total dropped mass is bounded by
/// (n_max+1)² · KEEP_TOL ≈ 7·10⁻⁹ at the largest cutoff.
const KEEP_TOL: f64 = 1e-12;

/// Apply the tap + detector pair to both modes of `state`.
///
/// For the ancilla outcome pair (k₁, k₂) the unnormalized component is
///
/// φ_{mn} = c_{m+k₁, n+k₂} b^{(m+k₁)}_{k₁} b^{(n+k₂)}_{k₂},
///
/// entering the ensemble with POVM weight w₁(k₁)·w₂(k₂)·‖φ‖². The heralding
/// probability is the sum of those weights over all outcomes.
pub fn subtract_photons(
    state: &TwoModeState,
    transmissivity: f64,
    povm_mode1: &DetectorPovm,
    povm_mode2: &DetectorPovm,
) -> Result<FockResource> {
    let n_max = state.n_max;
    if povm_mode1.n_max() < n_max || povm_mode2.n_max() < n_max {
        return Err(Error::param(
            "povm.n_max",
            povm_mode1.n_max().min(povm_mode2.n_max()) as f64,
            "POVM must cover photon numbers up to the state cutoff",
        ));
    }
    let leaked = state.norm_deficit();
    if leaked > state.tail_tol {
        return Err(Error::TruncationOverflow {
            n_max,
            leaked,
            tol: state.tail_tol,
        });
    }
    let bs = BeamSplitterKernel::new(transmissivity, n_max)?;

    struct Raw {
        outcome: (usize, usize),
        amps: Vec<f64>,
        row0: usize,
        col0: usize,
        weight: f64,
    }
    let mut raw: Vec<Raw> = Vec::new();
    let mut herald_prob = 0.0;

    for k1 in 0..=n_max {
        let w1 = povm_mode1.weight(k1);
        if w1 == 0.0 {
            continue;
        }
        for k2 in 0..=n_max {
            let w2 = povm_mode2.weight(k2);
            if w2 == 0.0 {
                continue;
            }
            let mut amps = Vec::new();
            let mut row0 = 0;
            let mut col0 = 0;
            let mut norm2 = 0.0;
            for (m_in, n_in, a) in state.iter() {
                if m_in < k1 || n_in < k2 {
                    continue;
                }
                if amps.is_empty() {
                    row0 = m_in - k1;
                    col0 = n_in - k2;
                }
                let amp = a * bs.amplitude(m_in, k1) * bs.amplitude(n_in, k2);
                norm2 += amp * amp;
                amps.push(amp);
            }
            if norm2 == 0.0 {
                continue;
            }
            let weight = w1 * w2 * norm2;
            herald_prob += weight;
            raw.push(Raw {
                outcome: (k1, k2),
                amps,
                row0,
                col0,
                weight,
            });
        }
    }

    if herald_prob <= 0.0 {
        return Err(Error::param(
            "herald_prob",
            herald_prob,
            "conditioning outcome must have positive probability",
        ));
    }

    let mut components: Vec<ResourceComponent> = Vec::new();
    let mut discarded_weight = 0.0;
    for r in raw {
        let weight = r.weight / herald_prob;
        if weight < KEEP_TOL {
            discarded_weight += weight;
            continue;
        }
        let amps = TwoModeState::from_diagonal(n_max, r.row0, r.col0, r.amps, state.tail_tol)?;
        FockResource::push_component(&mut components, r.outcome, amps, weight);
    }

    // main-diagonal inputs admit the factorized characteristic function
    let factorization = if state.row0 == 0 && state.col0 == 0 {
        Some(HeraldFactorization {
            coeffs: state.amps().to_vec(),
            bs,
            w1: povm_mode1.weights().to_vec(),
            w2: povm_mode2.weights().to_vec(),
        })
    } else {
        None
    };

    Ok(FockResource {
        n_max,
        herald_prob,
        components,
        discarded_weight,
        tmsv_lambda: state.tmsv_lambda,
        factorization,
    })
}
