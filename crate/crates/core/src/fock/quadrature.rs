//! Gauss-Laguerre and Gauss-Legendre rules for the characteristic-function
//! integral. Nodes and weights are found by Newton iteration on the
//! orthogonal-polynomial recurrences.

/// Nodes and weights for ∫₀^∞ e^{-x} f(x) dx ≈ Σ wᵢ f(xᵢ).
///
/// Exact for polynomials f of degree ≤ 2n−1.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let nf = n as f64;

    let mut z = 0.0_f64;
    for i in 0..n {
        // initial guesses follow the usual stride heuristics
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = i as f64 - 1.0;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut last_step = f64::INFINITY;
        for _ in 0..100 {
            let (l_n, l_nm1) = laguerre_pair(n, z);
            let dl = nf * (l_n - l_nm1) / z;
            let dz = l_n / dl;
            z -= dz;
            let step = dz.abs();
            if step < 1e-14 * z.max(1.0) || (step < 1e-10 && step >= last_step) {
                break; // converged, or rattling at the roundoff floor
            }
            last_step = step;
        }
        // w = x / ((n+1)² L_{n+1}(x)²)
        let (l_np1, _) = laguerre_pair(n + 1, z);
        let np1 = nf + 1.0;
        nodes.push(z);
        weights.push(z / (np1 * np1 * l_np1 * l_np1));
    }
    (nodes, weights)
}

/// L_n(x) and L_{n-1}(x) by the three-term recurrence.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut lm1 = 0.0; // L_{-1}
    let mut l = 1.0; // L_0
    for k in 0..n {
        let kf = k as f64;
        let lp1 = ((2.0 * kf + 1.0 - x) * l - kf * lm1) / (kf + 1.0);
        lm1 = l;
        l = lp1;
    }
    (l, lm1)
}

/// Nodes and weights for ∫₋₁^1 f(x) dx ≈ Σ wᵢ f(xᵢ).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 0.0;
        let mut last_step = f64::INFINITY;
        for _ in 0..100 {
            let (p_n, p_nm1) = legendre_pair(n, z);
            pp = nf * (z * p_n - p_nm1) / (z * z - 1.0);
            let dz = p_n / pp;
            z -= dz;
            let step = dz.abs();
            if step < 1e-15 || (step < 1e-10 && step >= last_step) {
                break;
            }
            last_step = step;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// P_n(x) and P_{n-1}(x) by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut pm1 = 0.0;
    let mut p = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let pp1 = ((2.0 * kf + 1.0) * x * p - kf * pm1) / (kf + 1.0);
        pm1 = p;
        p = pp1;
    }
    (p, pm1)
}

/// Gauss-Legendre rule mapped onto [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|wi| wi * half).collect(),
    )
}
