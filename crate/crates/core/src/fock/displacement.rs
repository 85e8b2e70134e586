//! Number-basis matrix elements of the displacement operator.
//!
//! The Gaussian envelope is kept out: this module tabulates
//!
//! e^{|β|²/2} ⟨j|D(β)|k⟩ = √(k!/j!) β^{j−k} L_k^{(j−k)}(|β|²)        (j ≥ k)
//!                       = √(j!/k!) (−β*)^{k−j} L_j^{(k−j)}(|β|²)    (j < k)
//!
//! so that the characteristic-function quadrature can fold all exponential
//! damping into its weight function. The associated Laguerre values come
//! from the three-term recurrence in the lower index, computed upward, which
//! stays well-scaled for the orders and arguments used here (n ≤ 80).

use num_complex::Complex64;

/// Dense table of e^{|β|²/2} ⟨j|D(β)|k⟩ for 0 ≤ j, k < dim, row-major.
pub(crate) struct ReducedDisplacement {
    dim: usize,
    data: Vec<Complex64>,
}

impl ReducedDisplacement {
    pub fn new(dim: usize) -> Self {
        ReducedDisplacement {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.data[j * self.dim + k]
    }

    /// Fill the table for displacement amplitude `beta`.
    pub fn fill(&mut self, beta: Complex64) {
        let dim = self.dim;
        let u = beta.norm_sqr();
        let mut beta_pow = Complex64::ONE; // β^α
        let mut negconj_pow = Complex64::ONE; // (−β*)^α
        let mut inv_sqrt_fact = 1.0_f64; // 1/√(α!)
        for alpha in 0..dim {
            let af = alpha as f64;
            if alpha > 0 {
                beta_pow *= beta;
                negconj_pow *= -beta.conj();
                inv_sqrt_fact /= af.sqrt();
            }
            // walk L_k^{(α)}(u) upward in k along the α-th diagonal
            let mut pref = inv_sqrt_fact; // √(k!/(k+α)!) at k = 0
            let mut lkm1 = 0.0_f64;
            let mut lk = 1.0_f64;
            for k in 0..dim - alpha {
                let kf = k as f64;
                if k > 0 {
                    let lkp1 = ((2.0 * kf - 1.0 + af - u) * lk - (kf - 1.0 + af) * lkm1) / kf;
                    lkm1 = lk;
                    lk = lkp1;
                    pref *= (kf / (kf + af)).sqrt();
                }
                let j = k + alpha;
                let scaled = pref * lk;
                self.data[j * dim + k] = beta_pow * scaled;
                if alpha > 0 {
                    self.data[k * dim + j] = negconj_pow * scaled;
                }
            }
        }
    }
}
