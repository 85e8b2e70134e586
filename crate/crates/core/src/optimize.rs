//! Maximization of the figure of merit R = P·ΔF over (λ, T) for a fixed
//! detector and efficiency: a coarse grid scan seeds a derivative-free
//! simplex polish. Everything is deterministic — no randomness, fixed
//! tie-breaking, fixed reduction order.

use crate::closed_form::merit_r;
use crate::error::{Error, Result};
use crate::params::DetectorKind;

/// Search box. The λ → 1 singularity and the P → 0 boundary at T → 1 are
/// excluded; the known optima are interior.
pub const LAMBDA_BOUNDS: (f64, f64) = (0.01, 0.95);
pub const T_BOUNDS: (f64, f64) = (0.05, 0.999);

/// Default grid resolution per axis and simplex evaluation budget.
pub const DEFAULT_RESOLUTION: usize = 256;
pub const DEFAULT_REFINE_BUDGET: usize = 500;
pub const DEFAULT_REFINE_TOL: f64 = 1e-10;

/// The four standard rows: on-off ideal and at 60 %, SPD ideal and at 95 %.
pub const DEFAULT_ROWS: [(DetectorKind, f64); 4] = [
    (DetectorKind::OnOff, 1.0),
    (DetectorKind::OnOff, 0.60),
    (DetectorKind::Spd, 1.0),
    (DetectorKind::Spd, 0.95),
];

/// Result of the coarse scan: argmax cell plus the full grid of R values.
#[derive(Debug, Clone)]
pub struct GridScan {
    pub detector: DetectorKind,
    pub eta: f64,
    pub resolution: usize,
    pub lambda_star: f64,
    pub t_star: f64,
    pub r_star: f64,
    /// R values in λ-major order: `values[i * resolution + j]` at
    /// (lambda_i, t_j).
    pub values: Vec<f64>,
}

/// A polished maximizer of R.
#[derive(Debug, Clone)]
pub struct OptimumRecord {
    pub detector: DetectorKind,
    pub eta: f64,
    pub lambda_star: f64,
    pub t_star: f64,
    /// Always recomputed as `merit_r(detector, λ*, T*, η)`.
    pub r_max: f64,
    pub delta_f_at_opt: f64,
    pub p_at_opt: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Evaluate R on a uniform `resolution`² grid over the search box and return
/// the argmax cell; ties break toward the lexicographically smallest (λ, T).
pub fn grid_scan(detector: DetectorKind, eta: f64, resolution: usize) -> Result<GridScan> {
    if resolution < 32 {
        return Err(Error::param(
            "resolution",
            resolution as f64,
            "grid resolution >= 32 per axis",
        ));
    }
    crate::params::check_eta(eta)?;
    let mut values = Vec::with_capacity(resolution * resolution);
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = (0usize, 0usize);
    for i in 0..resolution {
        let lambda = lerp(LAMBDA_BOUNDS, i, resolution);
        for j in 0..resolution {
            let t = lerp(T_BOUNDS, j, resolution);
            let r = merit_r(detector, lambda, t, eta).expect("grid point in domain");
            assert!(r.is_finite(), "R not finite at ({lambda}, {t})");
            values.push(r);
            if r > best {
                best = r;
                best_idx = (i, j);
            }
        }
    }
    Ok(GridScan {
        detector,
        eta,
        resolution,
        lambda_star: lerp(LAMBDA_BOUNDS, best_idx.0, resolution),
        t_star: lerp(T_BOUNDS, best_idx.1, resolution),
        r_star: best,
        values,
    })
}

fn lerp(bounds: (f64, f64), i: usize, n: usize) -> f64 {
    bounds.0 + (bounds.1 - bounds.0) * i as f64 / (n - 1) as f64
}

fn clamp_to_box(p: [f64; 2]) -> [f64; 2] {
    [
        p[0].clamp(LAMBDA_BOUNDS.0, LAMBDA_BOUNDS.1),
        p[1].clamp(T_BOUNDS.0, T_BOUNDS.1),
    ]
}

/// Polish a seed point by Nelder-Mead on −R with projection into the search
/// box. Terminates when the simplex diameter drops below `tol` in both
/// coordinates and the merit spread below `tol·|R|`, or when the evaluation
/// budget runs out (`converged = false`).
pub fn refine(
    detector: DetectorKind,
    eta: f64,
    seed: (f64, f64),
    tol: f64,
    budget: usize,
) -> Result<OptimumRecord> {
    crate::params::check_eta(eta)?;
    let seed = clamp_to_box([seed.0, seed.1]);
    let evaluations = std::cell::Cell::new(0usize);
    let eval = |p: [f64; 2]| -> f64 {
        evaluations.set(evaluations.get() + 1);
        merit_r(detector, p[0], p[1], eta).expect("projected point in domain")
    };

    // initial simplex around the seed
    let step = 0.02;
    let mut simplex: Vec<([f64; 2], f64)> = vec![
        (seed, eval(seed)),
        (clamp_to_box([seed[0] + step, seed[1]]), 0.0),
        (clamp_to_box([seed[0], seed[1] + step]), 0.0),
    ];
    simplex[1].1 = eval(simplex[1].0);
    simplex[2].1 = eval(simplex[2].0);

    let (mut best_point, mut best_value) = simplex[0];
    let mut converged = false;

    while evaluations.get() < budget {
        // descending by merit: simplex[0] best, simplex[2] worst
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        if simplex[0].1 > best_value {
            (best_point, best_value) = simplex[0];
        }

        let diam_l = simplex
            .iter()
            .flat_map(|a| simplex.iter().map(move |b| (a.0[0] - b.0[0]).abs()))
            .fold(0.0, f64::max);
        let diam_t = simplex
            .iter()
            .flat_map(|a| simplex.iter().map(move |b| (a.0[1] - b.0[1]).abs()))
            .fold(0.0, f64::max);
        let spread = simplex[0].1 - simplex[2].1;
        if diam_l < tol && diam_t < tol && spread.abs() <= tol * simplex[0].1.abs().max(1e-300) {
            converged = true;
            break;
        }

        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let reflect = clamp_to_box([
            centroid[0] + (centroid[0] - worst.0[0]),
            centroid[1] + (centroid[1] - worst.0[1]),
        ]);
        let fr = eval(reflect);

        if fr > simplex[0].1 {
            // try expanding past the reflection
            let expand = clamp_to_box([
                centroid[0] + 2.0 * (centroid[0] - worst.0[0]),
                centroid[1] + 2.0 * (centroid[1] - worst.0[1]),
            ]);
            let fe = eval(expand);
            simplex[2] = if fe > fr { (expand, fe) } else { (reflect, fr) };
        } else if fr > simplex[1].1 {
            simplex[2] = (reflect, fr);
        } else {
            // contract toward the centroid
            let contract = clamp_to_box([
                centroid[0] + 0.5 * (worst.0[0] - centroid[0]),
                centroid[1] + 0.5 * (worst.0[1] - centroid[1]),
            ]);
            let fc = eval(contract);
            if fc > worst.1 {
                simplex[2] = (contract, fc);
            } else {
                // shrink toward the best vertex
                for k in 1..3 {
                    let p = clamp_to_box([
                        simplex[0].0[0] + 0.5 * (simplex[k].0[0] - simplex[0].0[0]),
                        simplex[0].0[1] + 0.5 * (simplex[k].0[1] - simplex[0].0[1]),
                    ]);
                    let f = eval(p);
                    simplex[k] = (p, f);
                }
            }
        }
    }

    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    if simplex[0].1 > best_value {
        best_point = simplex[0].0;
    }

    let (lambda_star, t_star) = (best_point[0], best_point[1]);
    let r_max = merit_r(detector, lambda_star, t_star, eta)?;
    Ok(OptimumRecord {
        detector,
        eta,
        lambda_star,
        t_star,
        r_max,
        delta_f_at_opt: crate::closed_form::delta_f(detector, lambda_star, t_star, eta)?,
        p_at_opt: crate::closed_form::p_eta(detector, lambda_star, t_star, eta)?,
        evaluations: evaluations.get(),
        converged,
    })
}

/// Scan + refine with default controls.
pub fn optimize(detector: DetectorKind, eta: f64, resolution: usize) -> Result<OptimumRecord> {
    let scan = grid_scan(detector, eta, resolution)?;
    let record = refine(
        detector,
        eta,
        (scan.lambda_star, scan.t_star),
        DEFAULT_REFINE_TOL,
        DEFAULT_REFINE_BUDGET,
    )?;
    debug_assert!(record.r_max >= scan.r_star);
    Ok(record)
}

/// One record per (detector, η) row.
pub fn table2(rows: &[(DetectorKind, f64)]) -> Result<Vec<OptimumRecord>> {
    rows.iter()
        .map(|&(det, eta)| optimize(det, eta, DEFAULT_RESOLUTION))
        .collect()
}
