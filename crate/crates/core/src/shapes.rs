//! Ready-made fixture bodies: regular polygons, disk approximations, the
//! Reuleaux triangle discretization, Fibonacci sphere polytopes, boxes.

use crate::body::ConvexBody;
use crate::{point, Error, Point, Result};

pub fn unit_square() -> ConvexBody {
    ConvexBody::from_coords(&[
        vec![0.0, 0.0],
        vec![1.0, 0.0],
        vec![0.0, 1.0],
        vec![1.0, 1.0],
    ])
    .expect("square is valid")
}

pub fn rectangle(center: &Point, half_w: f64, half_h: f64) -> Result<ConvexBody> {
    if !(half_w > 0.0 && half_h > 0.0) {
        return Err(Error::DegenerateBody("rectangle needs positive half-extents".into()));
    }
    let (cx, cy) = (center[0], center[1]);
    ConvexBody::from_coords(&[
        vec![cx - half_w, cy - half_h],
        vec![cx + half_w, cy - half_h],
        vec![cx - half_w, cy + half_h],
        vec![cx + half_w, cy + half_h],
    ])
}

/// Regular m-gon of circumradius `r` centered at `center`, first vertex at
/// angle `phase`.
pub fn regular_polygon(m: usize, center: &Point, r: f64, phase: f64) -> Result<ConvexBody> {
    if m < 3 {
        return Err(Error::ParameterOutOfRange {
            name: "m",
            value: m as f64,
            lo: 3.0,
            hi: f64::INFINITY,
        });
    }
    if !(r > 0.0) {
        return Err(Error::NonpositiveScale(r));
    }
    let pts: Vec<Point> = (0..m)
        .map(|k| {
            let a = phase + std::f64::consts::TAU * k as f64 / m as f64;
            point(&[center[0] + r * a.cos(), center[1] + r * a.sin()])
        })
        .collect();
    ConvexBody::canonicalize(&pts)
}

/// 256-gon of radius `r` about `center`: the disk stand-in used by the
/// width checks.
pub fn disk256(center: &Point, r: f64) -> Result<ConvexBody> {
    regular_polygon(256, center, r, 0.0)
}

/// Reuleaux triangle of width `w`, discretized with `per_arc` points per
/// circular arc. Each arc is centered at a vertex of an equilateral
/// triangle of side `w` and spans the opposite 60-degree wedge.
pub fn reuleaux_triangle(w: f64, per_arc: usize) -> Result<ConvexBody> {
    if !(w > 0.0) {
        return Err(Error::NonpositiveScale(w));
    }
    if per_arc < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "per_arc",
            value: per_arc as f64,
            lo: 2.0,
            hi: f64::INFINITY,
        });
    }
    use std::f64::consts::PI;
    let corners = [
        [0.0, 0.0],
        [w, 0.0],
        [w / 2.0, w * 3f64.sqrt() / 2.0],
    ];
    let mut pts = Vec::with_capacity(3 * per_arc);
    for (i, c) in corners.iter().enumerate() {
        // Arc opposite corner i, swept between the other two corners.
        let a = corners[(i + 1) % 3];
        let b = corners[(i + 2) % 3];
        let th_a = (a[1] - c[1]).atan2(a[0] - c[0]);
        let mut th_b = (b[1] - c[1]).atan2(b[0] - c[0]);
        while th_b < th_a {
            th_b += 2.0 * PI;
        }
        if th_b - th_a > PI {
            th_b -= 2.0 * PI;
        }
        for k in 0..per_arc {
            let t = th_a + (th_b - th_a) * k as f64 / (per_arc - 1) as f64;
            pts.push(point(&[c[0] + w * t.cos(), c[1] + w * t.sin()]));
        }
    }
    ConvexBody::canonicalize(&pts)
}

/// Quasi-uniform unit directions: equal angles in the plane, Fibonacci
/// lattice on the sphere.
pub fn uniform_directions(n: usize, count: usize) -> Result<Vec<Point>> {
    match n {
        2 => Ok((0..count)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / count as f64;
                point(&[a.cos(), a.sin()])
            })
            .collect()),
        3 => {
            let golden = (1.0 + 5f64.sqrt()) / 2.0;
            Ok((0..count)
                .map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let a = std::f64::consts::TAU * k as f64 / golden;
                    point(&[r * a.cos(), r * a.sin(), z])
                })
                .collect())
        }
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// Polytopal unit-ball stand-in: 256-gon in the plane, 422-point Fibonacci
/// sphere polytope in space, scaled to radius `r` about `center`.
pub fn ball_polytope(n: usize, center: &Point, r: f64) -> Result<ConvexBody> {
    if !(r > 0.0) {
        return Err(Error::NonpositiveScale(r));
    }
    let dirs = uniform_directions(n, if n == 2 { 256 } else { 422 })?;
    let pts: Vec<Point> = dirs.into_iter().map(|d| center + d * r).collect();
    ConvexBody::canonicalize(&pts)
}

/// Axis-aligned box given per-coordinate intervals.
pub fn coord_box(intervals: &[(f64, f64)]) -> Result<ConvexBody> {
    let n = intervals.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut pts = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        let mut v = Point::zeros(n);
        for (i, &(lo, hi)) in intervals.iter().enumerate() {
            v[i] = if mask >> i & 1 == 1 { hi } else { lo };
        }
        pts.push(v);
    }
    ConvexBody::canonicalize(&pts)
}
