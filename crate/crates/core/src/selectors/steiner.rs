//! Steiner point: the normalized sphere integral of the support function
//! times the direction, s(K) = c_n ∫_{S^{n-1}} h_K(u) u du with c_n fixed
//! by s(ball) = center (1/π in the plane, 3/(4π) in space).
//!
//! In the plane the integral is evaluated exactly: h restricted to the
//! normal cone of a vertex v is θ ↦ ⟨v, u(θ)⟩, and ∫(a cosθ + b sinθ)u dθ
//! has a closed antiderivative. In space a Gauss-Legendre × uniform product
//! rule is used and the result carries a resolution-doubling error estimate.

use crate::body::ConvexBody;
use crate::hull;
use crate::{Error, Point, Result};

use std::f64::consts::{PI, TAU};

const GL_NODES_Z: usize = 64;
const UNIFORM_NODES_PHI: usize = 128;

pub fn steiner(body: &ConvexBody) -> Result<Point> {
    steiner_with_error(body).map(|(p, _)| p)
}

/// Steiner point plus a quadrature error estimate (0 in the plane, where
/// the computation is exact).
pub fn steiner_with_error(body: &ConvexBody) -> Result<(Point, f64)> {
    match body.dim_ambient() {
        2 => Ok((steiner_2d(body), 0.0)),
        3 => {
            let coarse = steiner_3d(body, GL_NODES_Z, UNIFORM_NODES_PHI);
            let fine = steiner_3d(body, 2 * GL_NODES_Z, 2 * UNIFORM_NODES_PHI);
            let err = (&fine - &coarse).norm();
            Ok((fine, err))
        }
        n => Err(Error::UnsupportedDimension(n)),
    }
}

fn steiner_2d(body: &ConvexBody) -> Point {
    let verts = body.vertices();
    if verts.len() == 1 {
        return verts[0].clone();
    }
    let order = hull::chain2(verts);
    let m = order.len();
    // Outward normal angle of each directed hull edge k -> k+1.
    let psi: Vec<f64> = (0..m)
        .map(|k| {
            let a = &verts[order[k]];
            let b = &verts[order[(k + 1) % m]];
            (a[0] - b[0]).atan2(b[1] - a[1])
        })
        .collect();
    let mut acc = [0.0f64; 2];
    for k in 0..m {
        // Normal cone of vertex k spans from the incoming to the outgoing
        // edge normal.
        let lo = psi[(k + m - 1) % m];
        let mut hi = psi[k];
        while hi < lo {
            hi += TAU;
        }
        let v = &verts[order[k]];
        let (ix, iy) = arc_integral(v[0], v[1], lo, hi);
        acc[0] += ix;
        acc[1] += iy;
    }
    Point::from_column_slice(&[acc[0] / PI, acc[1] / PI])
}

/// (∫ h u_x dθ, ∫ h u_y dθ) over [lo, hi] with h(θ) = a cosθ + b sinθ.
fn arc_integral(a: f64, b: f64, lo: f64, hi: f64) -> (f64, f64) {
    let f = |t: f64| {
        let ix = a * (t / 2.0 + (2.0 * t).sin() / 4.0) - b * (2.0 * t).cos() / 4.0;
        let iy = -a * (2.0 * t).cos() / 4.0 + b * (t / 2.0 - (2.0 * t).sin() / 4.0);
        (ix, iy)
    };
    let (x1, y1) = f(lo);
    let (x2, y2) = f(hi);
    (x2 - x1, y2 - y1)
}

fn steiner_3d(body: &ConvexBody, nz: usize, nphi: usize) -> Point {
    let (nodes, weights) = gauss_legendre(nz);
    let mut acc = Point::zeros(3);
    let wphi = TAU / nphi as f64;
    for (z, wz) in nodes.iter().zip(weights.iter()) {
        let r = (1.0 - z * z).max(0.0).sqrt();
        for k in 0..nphi {
            let phi = TAU * k as f64 / nphi as f64;
            let u = Point::from_column_slice(&[r * phi.cos(), r * phi.sin(), *z]);
            let mut h = f64::NEG_INFINITY;
            for v in body.vertices() {
                h = h.max(v.dot(&u));
            }
            acc += u * (h * wz * wphi);
        }
    }
    acc * (3.0 / (4.0 * PI))
}

/// Nodes and weights on [-1, 1], by Newton iteration on the Legendre
/// recurrence.
fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// P_n(x) and P_n'(x).
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = pk;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
