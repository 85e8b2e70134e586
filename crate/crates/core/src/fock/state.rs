//! Two-mode pure states on a shifted diagonal of the number basis, and the
//! heralded resource ensembles built from them.
//!
//! Every state this crate manipulates is supported on a single diagonal
//! {|r₀+j, c₀+j⟩}: the squeezed vacuum lives on the main diagonal, and a
//! number-diagonal POVM outcome (k₁, k₂) shifts it rigidly, so conditioning
//! never spreads the support. That keeps the ensemble at O(outcomes × n_max)
//! numbers instead of dense grids.

use crate::error::{Error, Result};
use crate::fock::cutoff::{tail_bound, FockCutoff};
use crate::params::check_lambda;

/// Pure two-mode state Σ_j amps[j] |row0+j, col0+j⟩ with real amplitudes,
/// truncated at `n_max` photons per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    pub n_max: usize,
    pub row0: usize,
    pub col0: usize,
    amps: Vec<f64>,
    /// λ of the squeezed vacuum this state was derived from, when known;
    /// used to pick the quadrature calibration anchor.
    pub tmsv_lambda: Option<f64>,
    /// Truncation-tail tolerance the state was built under.
    pub tail_tol: f64,
}

impl TwoModeState {
    pub fn from_diagonal(
        n_max: usize,
        row0: usize,
        col0: usize,
        amps: Vec<f64>,
        tail_tol: f64,
    ) -> Result<Self> {
        let len = amps.len();
        if row0 + len > n_max + 1 || col0 + len > n_max + 1 {
            return Err(Error::param(
                "amps.len",
                len as f64,
                "diagonal must fit inside the cutoff",
            ));
        }
        Ok(TwoModeState {
            n_max,
            row0,
            col0,
            amps,
            tmsv_lambda: None,
            tail_tol,
        })
    }

    /// Coefficient of |m, n⟩ (zero off the supported diagonal).
    pub fn coeff(&self, m: usize, n: usize) -> f64 {
        if m >= self.row0 && n >= self.col0 {
            let j = m - self.row0;
            if n - self.col0 == j && j < self.amps.len() {
                return self.amps[j];
            }
        }
        0.0
    }

    pub fn amps(&self) -> &[f64] {
        &self.amps
    }

    /// Iterate over (m, n, amplitude) of the nonzero entries.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(|(j, a)| (self.row0 + j, self.col0 + j, *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum()
    }

    /// 1 − ‖ψ‖²: probability mass lost to truncation.
    pub fn norm_deficit(&self) -> f64 {
        (1.0 - self.norm_sqr()).max(0.0)
    }

    fn normalized(mut self) -> Self {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            for a in &mut self.amps {
                *a /= norm;
            }
        }
        self
    }

    /// Σ (m+n) |c_{mn}|² over the (not necessarily normalized) amplitudes.
    fn photon_weight(&self) -> f64 {
        self.iter().map(|(m, n, a)| (m + n) as f64 * a * a).sum()
    }
}

/// Two-mode squeezed vacuum in the truncated basis:
/// c_{nn} = √(1−λ²) λⁿ, zero off the diagonal.
pub fn tmsv_coeffs(lambda: f64, cutoff: FockCutoff) -> Result<TwoModeState> {
    check_lambda(lambda)?;
    cutoff.check_tail(lambda)?;
    let scale = (1.0 - lambda * lambda).sqrt();
    let mut amps = Vec::with_capacity(cutoff.dim());
    let mut pow = 1.0;
    for _ in 0..cutoff.dim() {
        amps.push(scale * pow);
        pow *= lambda;
    }
    let mut state = TwoModeState::from_diagonal(cutoff.n_max, 0, 0, amps, cutoff.tail_tol)?;
    state.tmsv_lambda = Some(lambda);
    debug_assert!(state.norm_deficit() <= tail_bound(lambda, cutoff.n_max) + 1e-15);
    Ok(state)
}

/// Unit-transmissivity limit of the SPD-heralded resource, the state
/// ∝ â₁â₂|TMSV⟩ with coefficients (n+1) λⁿ on the diagonal (unnormalized;
/// wrap in [`FockResource::from_pure`] to normalize). Heralding probability
/// vanishes in this limit, so the state cannot be produced by
/// [`crate::fock::subtract_photons`] directly.
pub fn sps_limit_coeffs(lambda: f64, cutoff: FockCutoff) -> Result<TwoModeState> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Err(Error::param("lambda", 0.0, "lambda > 0 for a subtracted state"));
    }
    cutoff.check_tail(lambda)?;
    let mut amps = Vec::with_capacity(cutoff.dim());
    let mut pow = 1.0;
    for n in 0..cutoff.dim() {
        amps.push((n as f64 + 1.0) * pow);
        pow *= lambda;
    }
    // scale to unit norm up to truncation: Σ (n+1)² x^n = (1+x)/(1-x)³
    let x = lambda * lambda;
    let scale = ((1.0 - x).powi(3) / (1.0 + x)).sqrt();
    for a in &mut amps {
        *a *= scale;
    }
    let mut state = TwoModeState::from_diagonal(cutoff.n_max, 0, 0, amps, cutoff.tail_tol)?;
    state.tmsv_lambda = Some(lambda);
    Ok(state)
}

/// One pure member of a heralded ensemble: `weight` is its normalized
/// probability within the ensemble, `amps` its unit-norm coefficient grid.
#[derive(Debug, Clone)]
pub struct ResourceComponent {
    pub weight: f64,
    pub outcome: (usize, usize),
    pub amps: TwoModeState,
}

/// Ingredients of a heralded ensemble in factorized form: input diagonal
/// coefficients, beam-splitter kernel and the two POVM weight vectors.
/// Lets the characteristic function be summed over all outcomes at once.
#[derive(Debug, Clone)]
pub(crate) struct HeraldFactorization {
    pub coeffs: Vec<f64>,
    pub bs: crate::fock::beam_splitter::BeamSplitterKernel,
    pub w1: Vec<f64>,
    pub w2: Vec<f64>,
}

/// A heralded two-mode resource: a weighted ensemble of pure components
/// (weights sum to 1 up to `discarded_weight`), plus the total heralding
/// probability of the conditioning outcome.
#[derive(Debug, Clone)]
pub struct FockResource {
    pub n_max: usize,
    pub herald_prob: f64,
    pub components: Vec<ResourceComponent>,
    /// Ensemble mass below the per-component keep threshold, dropped from
    /// `components` but still counted inside `herald_prob`.
    pub discarded_weight: f64,
    pub tmsv_lambda: Option<f64>,
    pub(crate) factorization: Option<HeraldFactorization>,
}

impl FockResource {
    /// Wrap a pure state as a trivial ensemble with unit heralding.
    pub fn from_pure(state: TwoModeState) -> Self {
        let n_max = state.n_max;
        let lambda = state.tmsv_lambda;
        let normalized = state.normalized();
        FockResource {
            n_max,
            herald_prob: 1.0,
            components: vec![ResourceComponent {
                weight: 1.0,
                outcome: (0, 0),
                amps: normalized,
            }],
            discarded_weight: 0.0,
            tmsv_lambda: lambda,
            factorization: None,
        }
    }

    pub(crate) fn push_component(
        components: &mut Vec<ResourceComponent>,
        outcome: (usize, usize),
        amps: TwoModeState,
        weight: f64,
    ) {
        components.push(ResourceComponent {
            weight,
            outcome,
            amps: amps.normalized(),
        });
    }
}

/// Mean total photon number ⟨N̂⟩ = Σ_k w_k Σ_{mn} (m+n)|c⁽ᵏ⁾_{mn}|² of the
/// normalized ensemble.
pub fn mean_photon(resource: &FockResource) -> f64 {
    resource
        .components
        .iter()
        .map(|c| c.weight * c.amps.photon_weight())
        .sum()
}
