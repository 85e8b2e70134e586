//! Level-set extraction on the (λ, T) plane: marching squares for the cell
//! topology, bisection along grid edges for the crossing points.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Crossing points are bisected until |quantity − level| falls below this.
pub const CONTOUR_TOL: f64 = 1e-8;

/// An ordered level-set polyline in the (λ, T) plane.
#[derive(Debug, Clone)]
pub struct ContourPolyline {
    pub level: f64,
    pub points: Vec<(f64, f64)>,
}

/// A grid edge, keyed by its cell corner and orientation so segment
/// endpoints can be chained exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeKey {
    Horizontal(usize, usize), // from node (i, j) to (i+1, j)
    Vertical(usize, usize),   // from node (i, j) to (i, j+1)
}

/// Extract the `quantity = level` curves inside the box
/// `lambda_range × t_range` sampled on a `grid.0 × grid.1` lattice.
///
/// Returns an empty vector when the quantity never crosses the level.
pub fn extract_contours<F: Fn(f64, f64) -> f64>(
    quantity: F,
    lambda_range: (f64, f64),
    t_range: (f64, f64),
    grid: (usize, usize),
    level: f64,
) -> Result<Vec<ContourPolyline>> {
    let (nl, nt) = grid;
    if nl < 2 || nt < 2 {
        return Err(Error::param("grid", nl.min(nt) as f64, "grid >= 2 per axis"));
    }
    let lambda_at = |i: usize| {
        lambda_range.0 + (lambda_range.1 - lambda_range.0) * i as f64 / (nl - 1) as f64
    };
    let t_at = |j: usize| t_range.0 + (t_range.1 - t_range.0) * j as f64 / (nt - 1) as f64;

    // sample the field once
    let mut field = vec![0.0; nl * nt];
    for i in 0..nl {
        for j in 0..nt {
            field[i * nt + j] = quantity(lambda_at(i), t_at(j)) - level;
        }
    }

    // refined crossing point on an edge, memoized per edge
    let mut crossings: HashMap<EdgeKey, (f64, f64)> = HashMap::new();
    let mut crossing = |key: EdgeKey| -> (f64, f64) {
        if let Some(p) = crossings.get(&key) {
            return *p;
        }
        let ((l0, t0), (l1, t1)) = match key {
            EdgeKey::Horizontal(i, j) => ((lambda_at(i), t_at(j)), (lambda_at(i + 1), t_at(j))),
            EdgeKey::Vertical(i, j) => ((lambda_at(i), t_at(j)), (lambda_at(i), t_at(j + 1))),
        };
        let p = bisect_edge(&quantity, (l0, t0), (l1, t1), level);
        crossings.insert(key, p);
        p
    };

    // marching squares: segments between crossed edges of each cell
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for i in 0..nl - 1 {
        for j in 0..nt - 1 {
            let bl = field[i * nt + j] > 0.0;
            let br = field[(i + 1) * nt + j] > 0.0;
            let tl = field[i * nt + j + 1] > 0.0;
            let tr = field[(i + 1) * nt + j + 1] > 0.0;
            let case = (bl as u8) | (br as u8) << 1 | (tr as u8) << 2 | (tl as u8) << 3;

            let bottom = EdgeKey::Horizontal(i, j);
            let top = EdgeKey::Horizontal(i, j + 1);
            let left = EdgeKey::Vertical(i, j);
            let right = EdgeKey::Vertical(i + 1, j);

            match case {
                0 | 15 => {}
                1 | 14 => segments.push((bottom, left)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((top, right)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((top, left)),
                5 | 10 => {
                    // saddle: resolve by the cell-center sign
                    let lc = 0.5 * (lambda_at(i) + lambda_at(i + 1));
                    let tc = 0.5 * (t_at(j) + t_at(j + 1));
                    let center = quantity(lc, tc) - level > 0.0;
                    let bl_side = case == 5; // bl and tr above
                    if center == bl_side {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    } else {
                        segments.push((bottom, left));
                        segments.push((top, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // chain segments into polylines by shared edge keys
    let mut adjacency: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (idx, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(*a).or_default().push(idx);
        adjacency.entry(*b).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut chain = vec![a, b];
        // extend forward from b, then backward from a
        for _dir in 0..2 {
            loop {
                let tip = *chain.last().unwrap();
                let Some(next) = adjacency
                    .get(&tip)
                    .and_then(|c| c.iter().find(|idx| !used[**idx]))
                    .copied()
                else {
                    break;
                };
                used[next] = true;
                let (na, nb) = segments[next];
                chain.push(if na == tip { nb } else { na });
            }
            chain.reverse();
        }
        polylines.push(ContourPolyline {
            level,
            points: chain.into_iter().map(&mut crossing).collect(),
        });
    }
    Ok(polylines)
}

/// Bisect between two ends of opposite sign until |q − level| < CONTOUR_TOL.
fn bisect_edge<F: Fn(f64, f64) -> f64>(
    quantity: &F,
    mut lo: (f64, f64),
    mut hi: (f64, f64),
    level: f64,
) -> (f64, f64) {
    let mut f_lo = quantity(lo.0, lo.1) - level;
    for _ in 0..200 {
        let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
        let f_mid = quantity(mid.0, mid.1) - level;
        if f_mid.abs() < CONTOUR_TOL {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1))
}
