//! Worked examples at desk scale: the segment midpoint map, the thin
//! triangle family with a segment limit, properness bounds for similarity
//! neighborhoods, and constant-width checks.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::body::{hausdorff, minkowski_combination, ConvexBody};
use crate::error::{Error, Result};
use crate::symmetry::{self, AffineSubspace};
use crate::transform::{AffineTransform, GroupTag};
use crate::{point, selectors, shapes, tol, Point};

/// Sampled check of the similarity properness bounds on a thin
/// Hausdorff neighborhood of a body with diameter `m`.
#[derive(Debug, Clone)]
pub struct ThinSetReport {
    pub m: f64,
    pub delta: f64,
    /// Coordinate bound: every admissible probe satisfies `‖x‖ <= coord_bound`.
    pub coord_bound: f64,
    /// Open interval that must contain the scale part of every admissible
    /// similarity: ((m-2d)/(m+2d), (m+2d)/(m-2d)).
    pub lambda_interval: (f64, f64),
    /// Bound on the translation part: coord_bound * (1 + (m+2d)/(m-2d)).
    pub translation_bound: f64,
    pub violations: usize,
    pub trials: usize,
}

/// Midpoint of a segment together with its Euclidean stabilizer data.
#[derive(Debug, Clone)]
pub struct SegmentMidpointReport {
    pub midpoint: Point,
    pub stabilizer_order: usize,
    pub fixed_set: AffineSubspace,
    /// Distance between the stabilizer's fixed set (a single point) and
    /// the midpoint; zero up to solver tolerance.
    pub deviation: f64,
}

/// The midpoint of the segment [a, b] is the unique point fixed by the
/// segment's Euclidean stabilizer; this computes both sides and reports
/// the gap.
pub fn segment_midpoint_demo(a: &Point, b: &Point) -> Result<SegmentMidpointReport> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if (a - b).norm() <= tol::GEOM {
        return Err(Error::DegenerateSegment);
    }
    let midpoint = (a + b) * 0.5;
    let body = ConvexBody::canonicalize(&[a.clone(), b.clone()])?;
    let stab = symmetry::stabilizer(&body, GroupTag::Euclidean)?;
    let fixed_set = symmetry::fixed_point_set(&stab);
    let deviation = fixed_set.distance(&midpoint).max(
        // A fixed set of positive dimension is itself a violation.
        if fixed_set.dim() == 0 { 0.0 } else { f64::INFINITY },
    );
    Ok(SegmentMidpointReport {
        midpoint,
        stabilizer_order: stab.elements.len(),
        fixed_set,
        deviation,
    })
}

/// One row of the thin-triangle table.
#[derive(Debug, Clone)]
pub struct TriangleRow {
    pub n: usize,
    pub centroid: Point,
    /// Distance to the closed form (1/(3n), 1/3).
    pub formula_error: f64,
    /// Hausdorff distance from the triangle to the limit segment {0} x [0,1].
    pub hausdorff_to_segment: f64,
}

/// Table for the thin-triangle family T_n = conv{(0,0), (1/n,0), (0,1)}.
#[derive(Debug, Clone)]
pub struct TriangleTable {
    pub rows: Vec<TriangleRow>,
    /// Midpoint of the limit segment: (0, 1/2).
    pub segment_midpoint: Point,
    /// Limit of the centroids: (0, 1/3).
    pub limit_point: Point,
    /// ‖limit_point - segment_midpoint‖ = 1/6, the jump that rules out a
    /// continuous affine-equivariant extension to degenerate bodies.
    pub terminal_gap: f64,
}

/// Computes centroids of the thin triangles T_n for n = 1..n_max along
/// with their Hausdorff distance to the limit segment. The centroids
/// converge to (0, 1/3) while the bodies converge to a segment whose
/// midpoint is (0, 1/2).
pub fn triangle_counterexample(n_max: usize) -> Result<TriangleTable> {
    if n_max < 1 {
        return Err(Error::ParameterOutOfRange {
            name: "n_max",
            value: n_max as f64,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let segment = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![0.0, 1.0]])?;
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let inv = 1.0 / n as f64;
        let tri = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![inv, 0.0], vec![0.0, 1.0]])?;
        let centroid = selectors::centroid(&tri);
        let formula = point(&[inv / 3.0, 1.0 / 3.0]);
        let formula_error = (&centroid - formula).norm();
        let hausdorff_to_segment = hausdorff(&tri, &segment)?;
        rows.push(TriangleRow {
            n,
            centroid,
            formula_error,
            hausdorff_to_segment,
        });
    }
    let last = rows.last().expect("n_max >= 1");
    let limit_point = point(&[0.0, last.centroid[1]]);
    let segment_midpoint = point(&[0.0, 0.5]);
    let terminal_gap = (&limit_point - &segment_midpoint).norm();
    Ok(TriangleTable {
        rows,
        segment_midpoint,
        limit_point,
        terminal_gap,
    })
}

fn ball_vector(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Point {
    // Gaussian direction, radius with the uniform-in-ball density.
    let mut v = Point::from_fn(n, |_, _| {
        let u1: f64 = rng.random::<f64>().max(1e-300);
        let u2: f64 = rng.random();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    });
    let norm = v.norm();
    if norm <= 1e-12 {
        return Point::zeros(n);
    }
    v *= r * rng.random::<f64>().powf(1.0 / n as f64) / norm;
    v
}

fn rotation3(axis: &Point, theta: f64) -> DMatrix<f64> {
    // Rodrigues form I + sin K + (1-cos) K^2.
    let k = DMatrix::from_row_slice(
        3,
        3,
        &[
            0.0, -axis[2], axis[1], axis[2], 0.0, -axis[0], -axis[1], axis[0], 0.0,
        ],
    );
    DMatrix::identity(3, 3) + &k * theta.sin() + &k * &k * (1.0 - theta.cos())
}

/// Draws one admissible pair: a body within `delta` of `a` and a similarity
/// carrying it back into the neighborhood. Attempts are counted toward a
/// starvation guard shared across the whole run.
fn sample_admissible(
    a: &ConvexBody,
    delta: f64,
    rng: &mut ChaCha8Rng,
    attempted: &mut usize,
    accepted: usize,
) -> Result<(ConvexBody, AffineTransform)> {
    let n = a.dim_ambient();
    let center = a.vertex_mean();
    let radius = a
        .vertices()
        .iter()
        .map(|v| (v - &center).norm())
        .fold(0.0, f64::max)
        .max(tol::GEOM);
    loop {
        *attempted += 1;
        if *attempted >= 1000 && (accepted as f64) < 0.001 * *attempted as f64 {
            return Err(Error::SamplingStarvation {
                accepted,
                attempted: *attempted,
            });
        }
        // Split one delta budget between the body perturbation and the map
        // so the filter below keeps a healthy acceptance rate while the
        // boundary of the admissible set still gets visited.
        let split: f64 = rng.random();
        let body_budget = 0.95 * delta * split;
        let map_budget = 0.95 * delta * (1.0 - split);
        let pts: Vec<Point> = a
            .vertices()
            .iter()
            .map(|v| v + ball_vector(rng, n, body_budget))
            .collect();
        let Ok(b) = ConvexBody::canonicalize(&pts) else {
            continue;
        };
        if hausdorff(&b, a)? >= delta {
            continue;
        }
        // The identity already aligns b with a, so perturb around it:
        // conjugate an orthogonal part by the vertex mean, nudge the scale,
        // and add a small translation. A quarter of the attempts draw a
        // wild orthogonal part instead, to also probe far-from-identity
        // elements (quarter turns of a square survive the filter below).
        let wild = rng.random::<f64>() < 0.25;
        let q = match n {
            2 => {
                let theta = if wild {
                    rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI)
                } else {
                    map_budget / radius * rng.random_range(-1.0..=1.0)
                };
                if rng.random::<f64>() < 0.25 {
                    AffineTransform::reflection2(theta / 2.0).matrix().clone()
                } else {
                    AffineTransform::rotation2(theta).matrix().clone()
                }
            }
            3 => {
                let axis = {
                    let v = ball_vector(rng, 3, 1.0);
                    let nv = v.norm();
                    if nv <= 1e-9 {
                        point(&[0.0, 0.0, 1.0])
                    } else {
                        v / nv
                    }
                };
                let theta = if wild {
                    rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI)
                } else {
                    map_budget / radius * rng.random_range(-1.0..=1.0)
                };
                rotation3(&axis, theta)
            }
            other => return Err(Error::UnsupportedDimension(other)),
        };
        let lambda = 1.0 + map_budget / radius * rng.random_range(-1.0..=1.0);
        if lambda <= 0.0 {
            continue;
        }
        let shift = ball_vector(rng, n, map_budget);
        // x -> lambda q (x - center) + center + shift
        let matrix = &q * lambda;
        let translation = &center + &shift - &matrix * &center;
        let g = AffineTransform::new(matrix, translation)?;
        let gb = g.apply(&b)?;
        if hausdorff(&gb, a)? < delta {
            return Ok((b, g));
        }
    }
}

/// Stress-tests the properness bounds: every sampled body within `delta`
/// of `a` and every sampled similarity keeping it there must have scale in
/// the open lambda interval and translation norm under the coordinate
/// bound. Any violation is an implementation bug, not a tolerance issue.
pub fn thin_bound_check(
    a: &ConvexBody,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<ThinSetReport> {
    let m = a.diameter();
    if !(delta > 0.0) || m - 2.0 * delta <= 0.0 {
        return Err(Error::InvalidDelta {
            delta,
            diameter: m,
        });
    }
    let ratio = (m + 2.0 * delta) / (m - 2.0 * delta);
    let lambda_interval = ((m - 2.0 * delta) / (m + 2.0 * delta), ratio);
    // Everything in the delta-neighborhood of `a` lies within delta of some
    // point of `a`, so the max vertex norm plus delta bounds all probes.
    let coord_bound = a
        .vertices()
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
        + delta;
    let translation_bound = coord_bound * (1.0 + ratio);
    let mut violations = 0usize;
    let mut attempted = 0usize;
    for trial in 0..trials {
        // Per-trial seeding keeps reports independent of evaluation order.
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
        let (_, g) = sample_admissible(a, delta, &mut rng, &mut attempted, trial)?;
        let parts = g.sim_decompose()?;
        let lambda_ok = lambda_interval.0 < parts.lambda && parts.lambda < lambda_interval.1;
        let shift_ok = parts.u.norm() <= translation_bound;
        if !(lambda_ok && shift_ok) {
            violations += 1;
        }
    }
    Ok(ThinSetReport {
        m,
        delta,
        coord_bound,
        lambda_interval,
        translation_bound,
        violations,
        trials,
    })
}

/// Width of the body in the given direction: the distance between the two
/// support hyperplanes orthogonal to it.
pub fn width(body: &ConvexBody, direction: &Point) -> Result<f64> {
    let n = body.dim_ambient();
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if body.dimension() < n {
        return Err(Error::DegenerateBody(
            "width needs a full-dimensional body".into(),
        ));
    }
    let norm = direction.norm();
    if norm <= tol::GEOM {
        return Err(Error::ZeroDirection);
    }
    let u = direction / norm;
    Ok(body.support(&u)?.0 + body.support(&(-&u))?.0)
}

/// Constant-width verdict with the quantities behind it.
#[derive(Debug, Clone)]
pub struct WidthCheck {
    pub constant: bool,
    /// Mean width over the sampled directions.
    pub d: f64,
    /// Max deviation of the sampled widths from the mean.
    pub max_deviation: f64,
    /// Gap between the difference body A + (-A) and the radius-d ball
    /// polytope; small exactly when the width is constant.
    pub difference_gap: f64,
    /// Polytopal approximation error of the ball stand-in, granted on top
    /// of the caller's tolerance in the difference check.
    pub ball_slack: f64,
}

/// Tests constancy of the width over quasi-uniform directions and
/// cross-checks the difference body A + (-A) against the radius-d ball.
pub fn width_check(body: &ConvexBody, tolerance: f64) -> Result<WidthCheck> {
    if !(tolerance > 0.0) {
        return Err(Error::ParameterOutOfRange {
            name: "tolerance",
            value: tolerance,
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }
    let n = body.dim_ambient();
    let dirs = shapes::uniform_directions(n, tol::WIDTH_DIRECTIONS)?;
    let mut widths = Vec::with_capacity(dirs.len());
    for u in &dirs {
        widths.push(width(body, u)?);
    }
    let d = widths.iter().sum::<f64>() / widths.len() as f64;
    let max_deviation = widths
        .iter()
        .map(|w| (w - d).abs())
        .fold(0.0, f64::max);
    let origin = Point::zeros(n);
    let ball = shapes::ball_polytope(n, &origin, d)?;
    let ball_slack = match n {
        // Sagitta of the 256-gon at radius d.
        2 => d * (1.0 - (std::f64::consts::PI / 256.0).cos()),
        // Covering slack of the 422-point Fibonacci sphere at radius d.
        _ => d * 0.012,
    };
    let difference_gap = if n == 2 {
        let diff = minkowski_combination(body, &body.negate(), 0.5)?.scale(2.0)?;
        hausdorff(&diff, &ball)?
    } else {
        // Support mismatch over the sample directions; building the 3D
        // Minkowski sum vertex-by-vertex is needlessly quadratic.
        let mut gap = 0.0f64;
        for (u, w) in dirs.iter().zip(&widths) {
            gap = gap.max((w - ball.support(u)?.0).abs());
        }
        gap
    };
    let constant = max_deviation <= tolerance && difference_gap <= tolerance + ball_slack;
    Ok(WidthCheck {
        constant,
        d,
        max_deviation,
        difference_gap,
        ball_slack,
    })
}

/// Whether the body has constant width within `tolerance`, and the mean
/// width.
pub fn is_constant_width(body: &ConvexBody, tolerance: f64) -> Result<(bool, f64)> {
    let check = width_check(body, tolerance)?;
    Ok((check.constant, check.d))
}

/// Widths add under Minkowski combination, so mixing two constant-width
/// bodies must stay constant-width. Verifies that on a concrete pair,
/// granting the combination twice the input tolerance.
pub fn constant_width_convexity_check(
    a: &ConvexBody,
    b: &ConvexBody,
    t: f64,
    tolerance: f64,
) -> Result<bool> {
    let ca = width_check(a, tolerance)?;
    if !ca.constant {
        return Err(Error::NotConstantWidth(0, ca.max_deviation / ca.d));
    }
    let cb = width_check(b, tolerance)?;
    if !cb.constant {
        return Err(Error::NotConstantWidth(1, cb.max_deviation / cb.d));
    }
    let mix = minkowski_combination(a, b, t)?;
    Ok(width_check(&mix, 2.0 * tolerance)?.constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{sample, SampleBounds};

    fn seg(ax: f64, ay: f64, bx: f64, by: f64) -> (Point, Point) {
        (point(&[ax, ay]), point(&[bx, by]))
    }

    #[test]
    fn midpoint_demo_reports_fixed_point() {
        let (a, b) = seg(0.0, 0.0, 2.0, 0.0);
        let rep = segment_midpoint_demo(&a, &b).unwrap();
        assert!((rep.midpoint - point(&[1.0, 0.0])).norm() <= 1e-12);
        assert_eq!(rep.stabilizer_order, 4);
        assert_eq!(rep.fixed_set.dim(), 0);
        assert!(rep.deviation <= 1e-8);

        let (a, b) = seg(0.0, 0.0, 0.0, 1.0);
        let rep = segment_midpoint_demo(&a, &b).unwrap();
        assert!((rep.midpoint - point(&[0.0, 0.5])).norm() <= 1e-12);
        assert!(rep.deviation <= 1e-8);
    }

    #[test]
    fn midpoint_demo_rejects_degenerate() {
        let p = point(&[0.3, -0.7]);
        assert!(matches!(
            segment_midpoint_demo(&p, &p),
            Err(Error::DegenerateSegment)
        ));
    }

    #[test]
    fn midpoint_commutes_with_euclidean_maps() {
        let bounds = SampleBounds::default();
        for seed in 0..20u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(900 + seed);
            let a = point(&[rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)]);
            let b = &a + ball_vector(&mut rng, 2, 1.5) + point(&[0.1, 0.0]);
            let g = sample(GroupTag::Euclidean, &bounds, seed).unwrap();
            let direct = segment_midpoint_demo(&g.apply_point(&a), &g.apply_point(&b))
                .unwrap()
                .midpoint;
            let mapped = g.apply_point(&segment_midpoint_demo(&a, &b).unwrap().midpoint);
            assert!((direct - mapped).norm() <= 1e-9);
        }
    }

    #[test]
    fn triangle_family_splits_from_segment_midpoint() {
        let table = triangle_counterexample(1000).unwrap();
        assert_eq!(table.rows.len(), 1000);
        let first = &table.rows[0];
        assert!((first.centroid.clone() - point(&[1.0 / 3.0, 1.0 / 3.0])).norm() <= 1e-12);
        let tenth = &table.rows[9];
        assert!((tenth.centroid.clone() - point(&[1.0 / 30.0, 1.0 / 3.0])).norm() <= 1e-12);
        let last = &table.rows[999];
        assert!(last.hausdorff_to_segment <= 1.05e-3);
        assert!(last.hausdorff_to_segment >= 0.9e-3);
        assert!((table.terminal_gap - 1.0 / 6.0).abs() <= 1e-9);
        // Centroids stay 1/6 away from the segment midpoint even as the
        // bodies collapse onto the segment.
        let gap = (last.centroid.clone() - table.segment_midpoint.clone()).norm();
        assert!(gap >= 1.0 / 6.0 - 1e-3);
    }

    #[test]
    fn triangle_centroids_match_closed_form() {
        let table = triangle_counterexample(10_000).unwrap();
        for row in &table.rows {
            assert!(
                row.formula_error <= 1e-12,
                "n={} err={:.3e}",
                row.n,
                row.formula_error
            );
        }
        // Hausdorff distance to the segment decays like 1/n.
        for pair in table.rows.windows(2) {
            assert!(pair[1].hausdorff_to_segment <= pair[0].hausdorff_to_segment + 1e-15);
        }
    }

    #[test]
    fn triangle_counterexample_needs_a_row() {
        assert!(matches!(
            triangle_counterexample(0),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn thin_bounds_hold_on_the_square() {
        let sq = shapes::unit_square();
        let rep = thin_bound_check(&sq, 0.1, 200, 7).unwrap();
        let m = 2f64.sqrt();
        assert!((rep.m - m).abs() <= 1e-12);
        assert!((rep.lambda_interval.0 - (m - 0.2) / (m + 0.2)).abs() <= 1e-12);
        assert!((rep.lambda_interval.1 - (m + 0.2) / (m - 0.2)).abs() <= 1e-12);
        assert!((rep.translation_bound - rep.coord_bound * (1.0 + rep.lambda_interval.1)).abs() <= 1e-12);
        assert_eq!(rep.violations, 0);
        assert_eq!(rep.trials, 200);
    }

    #[test]
    fn thin_bounds_hold_on_a_segment() {
        let seg = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let rep = thin_bound_check(&seg, 0.2, 200, 11).unwrap();
        assert!((rep.lambda_interval.0 - 0.6 / 1.4).abs() <= 1e-12);
        assert!((rep.lambda_interval.1 - 1.4 / 0.6).abs() <= 1e-12);
        assert_eq!(rep.violations, 0);
    }

    #[test]
    fn thin_bounds_reject_wide_delta() {
        let sq = shapes::unit_square();
        let m = sq.diameter();
        assert!(matches!(
            thin_bound_check(&sq, m / 2.0, 10, 0),
            Err(Error::InvalidDelta { .. })
        ));
        assert!(matches!(
            thin_bound_check(&sq, 0.0, 10, 0),
            Err(Error::InvalidDelta { .. })
        ));
    }

    #[test]
    fn disk_has_constant_width_two() {
        let disk = shapes::disk256(&point(&[0.0, 0.0]), 1.0).unwrap();
        let (constant, d) = is_constant_width(&disk, 1e-3).unwrap();
        assert!(constant);
        assert!((d - 2.0).abs() <= 1e-3);
    }

    #[test]
    fn square_width_spread_is_detected() {
        let sq = shapes::unit_square();
        let (constant, _) = is_constant_width(&sq, 1e-3).unwrap();
        assert!(!constant);
        assert!((width(&sq, &point(&[1.0, 0.0])).unwrap() - 1.0).abs() <= 1e-12);
        assert!((width(&sq, &point(&[1.0, 1.0])).unwrap() - 2f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn reuleaux_triangle_is_constant_width() {
        let r = shapes::reuleaux_triangle(1.0, 64).unwrap();
        let (constant, d) = is_constant_width(&r, 2e-3).unwrap();
        assert!(constant);
        assert!((d - 1.0).abs() <= 2e-3);
    }

    #[test]
    fn width_is_similarity_covariant() {
        let body = shapes::regular_polygon(7, &point(&[0.4, -0.2]), 1.3, 0.35).unwrap();
        let bounds = SampleBounds::default();
        for seed in 40..48u64 {
            let g = sample(GroupTag::Sim, &bounds, seed).unwrap();
            let parts = g.sim_decompose().unwrap();
            let image = g.apply(&body).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..8 {
                let u = ball_vector(&mut rng, 2, 1.0) + point(&[0.05, 0.02]);
                let lhs = width(&image, &(&parts.sigma * &u)).unwrap();
                let rhs = parts.lambda * width(&body, &u).unwrap();
                assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
                let flipped = width(&body, &(-&u)).unwrap();
                assert!((flipped - width(&body, &u).unwrap()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn width_rejects_degenerate_and_zero() {
        let seg = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(
            width(&seg, &point(&[1.0, 0.0])),
            Err(Error::DegenerateBody(_))
        ));
        let sq = shapes::unit_square();
        assert!(matches!(
            width(&sq, &point(&[0.0, 0.0])),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn minkowski_mix_keeps_constant_width() {
        let disk = shapes::disk256(&point(&[0.0, 0.0]), 1.0).unwrap();
        assert!(constant_width_convexity_check(&disk, &disk, 0.3, 1e-3).unwrap());
        let r = shapes::reuleaux_triangle(1.0, 64).unwrap();
        assert!(constant_width_convexity_check(&disk, &r, 0.5, 2e-3).unwrap());
    }

    #[test]
    fn minkowski_mix_rejects_non_constant_inputs() {
        let disk = shapes::disk256(&point(&[0.0, 0.0]), 1.0).unwrap();
        let sq = shapes::unit_square();
        assert!(matches!(
            constant_width_convexity_check(&sq, &disk, 0.5, 1e-3),
            Err(Error::NotConstantWidth(0, _))
        ));
        assert!(matches!(
            constant_width_convexity_check(&disk, &sq, 0.5, 1e-3),
            Err(Error::NotConstantWidth(1, _))
        ));
    }

    #[test]
    fn ball_widths_match_in_3d() {
        let ball = shapes::ball_polytope(3, &point(&[0.0, 0.0, 0.0]), 1.0).unwrap();
        let (constant, d) = is_constant_width(&ball, 2e-2).unwrap();
        assert!(constant);
        assert!((d - 2.0).abs() <= 2e-2);
    }
}
