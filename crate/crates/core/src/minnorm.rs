//! Exact projection of a point onto the convex hull of a finite point set.
//!
//! Wolfe's minimum-norm-point algorithm with major/minor cycles. The active
//! set holds affinely independent hull vertices; each minor cycle solves the
//! bordered normal equations for the affine minimizer and walks back to the
//! simplex when a coefficient goes negative. Terminates finitely in exact
//! arithmetic; here we stop on a relative support-gap test.

use nalgebra::{DMatrix, DVector};

use crate::Point;

const SUPPORT_GAP: f64 = 1e-13;
const COEFF_FLOOR: f64 = 1e-12;
const MAX_CYCLES: usize = 10_000;

/// Euclidean distance from `x` to conv(points) and the nearest hull point.
pub fn project_onto_hull(x: &Point, points: &[Point]) -> (f64, Point) {
    debug_assert!(!points.is_empty());
    let shifted: Vec<Point> = points.iter().map(|p| p - x).collect();
    let scale = 1.0 + shifted.iter().map(|p| p.norm()).fold(0.0, f64::max);

    let y = min_norm_point(&shifted, scale);
    let dist = y.norm();
    if dist <= 1e-13 * scale {
        return (0.0, x.clone());
    }
    (dist, x + y)
}

/// Minimum-norm point of conv(points).
fn min_norm_point(points: &[Point], scale: f64) -> Point {
    let start = (0..points.len())
        .min_by(|&a, &b| points[a].norm().total_cmp(&points[b].norm()))
        .unwrap();
    let mut active: Vec<usize> = vec![start];
    let mut coeff: Vec<f64> = vec![1.0];
    let mut y = points[start].clone();

    for _ in 0..MAX_CYCLES {
        // Major cycle: most violating support point.
        let j = (0..points.len())
            .min_by(|&a, &b| points[a].dot(&y).total_cmp(&points[b].dot(&y)))
            .unwrap();
        if points[j].dot(&y) >= y.norm_squared() - SUPPORT_GAP * scale * scale {
            break;
        }
        if active.contains(&j) {
            break;
        }
        active.push(j);
        coeff.push(0.0);

        // Minor cycles: pull the affine minimizer back into the simplex.
        loop {
            let alpha = match affine_minimizer(points, &active) {
                Some(a) => a,
                None => {
                    // Affinely dependent active set; drop the newcomer.
                    active.pop();
                    coeff.pop();
                    break;
                }
            };
            if alpha.iter().all(|&a| a > COEFF_FLOOR) {
                coeff = alpha;
                break;
            }
            let mut theta = 1.0f64;
            for (i, &a) in alpha.iter().enumerate() {
                if a <= COEFF_FLOOR && coeff[i] > a {
                    theta = theta.min(coeff[i] / (coeff[i] - a));
                }
            }
            for i in 0..coeff.len() {
                coeff[i] = (1.0 - theta) * coeff[i] + theta * alpha[i];
            }
            let mut keep_active = Vec::with_capacity(active.len());
            let mut keep_coeff = Vec::with_capacity(active.len());
            for (i, &idx) in active.iter().enumerate() {
                if coeff[i] > COEFF_FLOOR {
                    keep_active.push(idx);
                    keep_coeff.push(coeff[i]);
                }
            }
            if keep_active.is_empty() {
                keep_active.push(active[0]);
                keep_coeff.push(1.0);
            }
            active = keep_active;
            coeff = keep_coeff;
            let total: f64 = coeff.iter().sum();
            for c in coeff.iter_mut() {
                *c /= total;
            }
        }

        y = combination(points, &active, &coeff);
    }
    y
}

/// Minimizer of ||sum a_i p_i|| subject to sum a_i = 1 over the affine hull
/// of the active points. None when the bordered system is singular.
fn affine_minimizer(points: &[Point], active: &[usize]) -> Option<Vec<f64>> {
    let k = active.len();
    let mut sys = DMatrix::zeros(k + 1, k + 1);
    for i in 0..k {
        for j in 0..k {
            sys[(i, j)] = points[active[i]].dot(&points[active[j]]);
        }
        sys[(i, k)] = 1.0;
        sys[(k, i)] = 1.0;
    }
    let mut rhs = DVector::zeros(k + 1);
    rhs[k] = 1.0;
    let lu = sys.lu();
    let sol = lu.solve(&rhs)?;
    let alpha: Vec<f64> = sol.iter().take(k).copied().collect();
    if alpha.iter().any(|a| !a.is_finite()) {
        return None;
    }
    Some(alpha)
}

fn combination(points: &[Point], active: &[usize], coeff: &[f64]) -> Point {
    let mut y = Point::zeros(points[active[0]].len());
    for (i, &idx) in active.iter().enumerate() {
        y += &points[idx] * coeff[i];
    }
    y
}
