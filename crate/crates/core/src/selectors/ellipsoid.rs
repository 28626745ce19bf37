//! Extremal ellipsoids of a full-dimensional polytope.
//!
//! `lowner`: minimal enclosing ellipsoid by Frank-Wolfe ascent on the lifted
//! log-det problem over vertex weights, with away/drop steps for a linear
//! rate (plain ascent stalls at O(1/k), far from the gap this needs).
//! `john`: maximal inscribed ellipsoid c + E·B^n by a log-det barrier
//! central path with damped Newton steps.

use nalgebra::DMatrix;

use crate::body::ConvexBody;
use crate::selectors::{chebyshev, to_halfspaces};
use crate::{tol, Error, Point, Result};

/// {x : (x−center)ᵀ shape (x−center) ≤ 1} with shape symmetric positive
/// definite.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    pub center: Point,
    pub shape: DMatrix<f64>,
}

impl Ellipsoid {
    pub fn quad_form(&self, x: &Point) -> f64 {
        let d = x - &self.center;
        (&self.shape * &d).dot(&d)
    }

    pub fn contains(&self, x: &Point, slack: f64) -> bool {
        self.quad_form(x) <= 1.0 + slack
    }

    /// log of the volume ratio to the unit ball: -log det(shape) / 2.
    pub fn log_volume_factor(&self) -> f64 {
        -self
            .shape
            .clone()
            .cholesky()
            .expect("shape positive definite")
            .l()
            .diagonal()
            .iter()
            .map(|d| d.ln())
            .sum::<f64>()
    }

    /// Boundary point at parameter angle (planar ellipsoids only).
    pub fn boundary_point_2d(&self, angle: f64) -> Point {
        let chol = self.shape.clone().cholesky().expect("shape positive definite");
        let u = Point::from_column_slice(&[angle.cos(), angle.sin()]);
        // x = c + L^{-T} u walks the unit circle through the shape factor.
        let y = chol.l().transpose().solve_upper_triangular(&u).expect("nonsingular");
        &self.center + y
    }
}

/// Minimal enclosing ellipsoid.
pub fn lowner(body: &ConvexBody) -> Result<Ellipsoid> {
    let n = body.dim_ambient();
    if body.dimension() < n {
        return Err(Error::DegenerateBody(format!(
            "enclosing ellipsoid needs a full-dimensional body (dim {} in R^{})",
            body.dimension(),
            n
        )));
    }
    let verts = body.vertices();
    let m = verts.len();
    let d = n + 1;
    let lifted: Vec<Point> = verts
        .iter()
        .map(|v| {
            let mut q = Point::zeros(d);
            for i in 0..n {
                q[i] = v[i];
            }
            q[n] = 1.0;
            q
        })
        .collect();

    let mut p = vec![1.0 / m as f64; m];
    let mut w = vec![0.0f64; m];
    let mut iterations = 0usize;
    let target = d as f64;
    loop {
        iterations += 1;
        if iterations > tol::MAX_ITER {
            break;
        }
        let mut x = DMatrix::zeros(d, d);
        for (pi, q) in p.iter().zip(&lifted) {
            if *pi > 0.0 {
                x += q * q.transpose() * *pi;
            }
        }
        let chol = x
            .cholesky()
            .ok_or_else(|| Error::DegenerateBody("weight matrix lost rank".into()))?;
        for i in 0..m {
            w[i] = lifted[i].dot(&chol.solve(&lifted[i]));
        }
        let (mut jp, mut jm) = (0usize, usize::MAX);
        for i in 0..m {
            if w[i] > w[jp] {
                jp = i;
            }
            if p[i] > 0.0 && (jm == usize::MAX || w[i] < w[jm]) {
                jm = i;
            }
        }
        let kp = w[jp];
        let km = w[jm];
        if kp <= target * (1.0 + tol::MVEE_GAP) && km >= target * (1.0 - tol::MVEE_GAP) {
            break;
        }
        if kp - target >= target - km {
            // Toward the most violated vertex.
            let beta = (kp - target) / (target * (kp - 1.0));
            for q in p.iter_mut() {
                *q *= 1.0 - beta;
            }
            p[jp] += beta;
        } else {
            // Away from the least needed support vertex (drop when capped).
            if km <= 1.0 + 1e-15 {
                p[jm] = 0.0;
                let s: f64 = p.iter().sum();
                for q in p.iter_mut() {
                    *q /= s;
                }
                continue;
            }
            let beta_unc = (target - km) / (target * (km - 1.0));
            let cap = p[jm] / (1.0 - p[jm]);
            let beta = beta_unc.min(cap);
            if beta <= 1e-18 {
                break;
            }
            for q in p.iter_mut() {
                *q *= 1.0 + beta;
            }
            p[jm] -= beta;
            if p[jm] < 1e-17 {
                p[jm] = 0.0;
            }
        }
    }

    // The hard 1e-12 gap is best effort; the published contract is 1e-7.
    let kp = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if kp > target * (1.0 + 1e-7) {
        return Err(Error::NoConvergence {
            what: "enclosing ellipsoid weight ascent",
            iterations,
        });
    }

    let mut center = Point::zeros(n);
    for (pi, v) in p.iter().zip(verts) {
        center += v * *pi;
    }
    let mut s = DMatrix::zeros(n, n);
    for (pi, v) in p.iter().zip(verts) {
        let dvec = v - &center;
        s += &dvec * dvec.transpose() * *pi;
    }
    let shape = s
        .cholesky()
        .ok_or_else(|| Error::DegenerateBody("scatter matrix not positive definite".into()))?
        .inverse()
        / n as f64;
    let shape = (&shape + shape.transpose()) / 2.0;
    Ok(Ellipsoid { center, shape })
}

/// Maximal inscribed ellipsoid c + E·B^n, E symmetric positive definite.
pub fn john(body: &ConvexBody) -> Result<Ellipsoid> {
    let n = body.dim_ambient();
    let hs = to_halfspaces(body)?.halfspaces;
    let (c0, r0) = chebyshev(body)?;

    // Pack (E lower triangle, c) into one variable vector.
    let ne = n * (n + 1) / 2;
    let dim = ne + n;
    let mut x = vec![0.0f64; dim];
    {
        let mut k = 0;
        for p in 0..n {
            for q in 0..=p {
                x[k] = if p == q { 0.9 * r0 } else { 0.0 };
                k += 1;
            }
        }
        for i in 0..n {
            x[ne + i] = c0[i];
        }
    }

    let unpack = |x: &[f64]| -> (DMatrix<f64>, Point) {
        let mut e = DMatrix::zeros(n, n);
        let mut k = 0;
        for p in 0..n {
            for q in 0..=p {
                e[(p, q)] = x[k];
                e[(q, p)] = x[k];
                k += 1;
            }
        }
        let c = Point::from_fn(n, |i, _| x[ne + i]);
        (e, c)
    };

    // r_i = s_i² − ‖E a_i‖² (strictly positive on the feasible interior).
    let residuals = |e: &DMatrix<f64>, c: &Point| -> Option<Vec<f64>> {
        let mut out = Vec::with_capacity(hs.len());
        for (a, b) in &hs {
            let s = b - a.dot(c);
            if s <= 0.0 {
                return None;
            }
            let w = e * a;
            let r = s * s - w.norm_squared();
            if r <= 0.0 {
                return None;
            }
            out.push(r);
        }
        Some(out)
    };

    let objective = |x: &[f64], inv_t: f64| -> Option<f64> {
        let (e, c) = unpack(x);
        let chol = e.clone().cholesky()?;
        // det E = (Π L_ii)², so log det needs the factor 2.
        let logdet: f64 = chol.l().diagonal().iter().map(|d| d.ln()).sum::<f64>() * 2.0;
        let r = residuals(&e, &c)?;
        Some(-logdet - inv_t * r.iter().map(|ri| ri.ln()).sum::<f64>())
    };

    // Symmetric parameter basis: S_k = e_p e_qᵀ + e_q e_pᵀ (p > q) or
    // e_p e_pᵀ; index order matches the packing above.
    let sym_basis: Vec<DMatrix<f64>> = {
        let mut out = Vec::with_capacity(ne);
        for p in 0..n {
            for q in 0..=p {
                let mut s = DMatrix::zeros(n, n);
                s[(p, q)] = 1.0;
                s[(q, p)] = 1.0;
                out.push(s);
            }
        }
        out
    };

    // ∇φ and ∇²φ for φ = −log det E − (1/t) Σ log r_i, both exact:
    //   d(−log det E)[S_k] = −tr(E⁻¹S_k),  d²[S_k,S_l] = tr(E⁻¹S_k E⁻¹S_l)
    //   ∇²(−log r) = ∇r∇rᵀ/r² − ∇²r/r with ∇²r block diagonal
    //   (E-block −2(S_k a)·(S_l a), c-block +2aaᵀ).
    let grad_hess = |x: &[f64], inv_t: f64| -> Option<(Vec<f64>, DMatrix<f64>)> {
        let (e, c) = unpack(x);
        let einv = e.clone().cholesky()?.inverse();
        let mut g = vec![0.0f64; dim];
        let mut h = DMatrix::zeros(dim, dim);
        for k in 0..ne {
            g[k] = -(&einv * &sym_basis[k]).trace();
            let t_k = &einv * &sym_basis[k] * &einv;
            for l in 0..=k {
                let v = (&t_k * &sym_basis[l]).trace();
                h[(k, l)] += v;
                if l != k {
                    h[(l, k)] += v;
                }
            }
        }
        for (a, b) in &hs {
            let s = b - a.dot(&c);
            let w = &e * a;
            let r = s * s - w.norm_squared();
            if r <= 0.0 || s <= 0.0 {
                return None;
            }
            let mut gr = vec![0.0f64; dim];
            let mut u = Vec::with_capacity(ne);
            for (k, sk) in sym_basis.iter().enumerate() {
                let ua = sk * a;
                gr[k] = -2.0 * ua.dot(&w);
                u.push(ua);
            }
            for i in 0..n {
                gr[ne + i] = -2.0 * s * a[i];
            }
            for i in 0..dim {
                g[i] -= inv_t * gr[i] / r;
            }
            for i in 0..dim {
                for j in 0..dim {
                    h[(i, j)] += inv_t * gr[i] * gr[j] / (r * r);
                }
            }
            for k in 0..ne {
                for l in 0..ne {
                    h[(k, l)] += inv_t * 2.0 * u[k].dot(&u[l]) / r;
                }
            }
            for i in 0..n {
                for j in 0..n {
                    h[(ne + i, ne + j)] -= inv_t * 2.0 * a[i] * a[j] / r;
                }
            }
        }
        Some((g, h))
    };

    // The center stabilizes to ~1e-9 well before t = 1e8, while the
    // Hessian scale (~t) amplifies float noise in x, so at large t the
    // gradient cannot be certified below 1e-7 even at the exact center.
    // Keep the last iterate that did certify (at t large enough for the
    // smoothing bias to be negligible) and return that one.
    let mut iterations = 0usize;
    let mut certified: Option<Vec<f64>> = None;
    let mut t = 1.0f64;
    while t <= 2.0e8 {
        let inv_t = 1.0 / t;
        for _ in 0..50 {
            iterations += 1;
            if iterations > tol::MAX_ITER {
                return Err(Error::NoConvergence {
                    what: "inscribed ellipsoid barrier",
                    iterations,
                });
            }
            let (g, h) = grad_hess(&x, inv_t).ok_or_else(|| Error::NoConvergence {
                what: "inscribed ellipsoid left the feasible cone",
                iterations,
            })?;
            let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if gnorm <= 1e-12 {
                break;
            }
            let gvec = Point::from_column_slice(&g);
            let mut ridge = 0.0;
            let dir = loop {
                let mut hr = h.clone();
                for i in 0..dim {
                    hr[(i, i)] += ridge;
                }
                if let Some(chol) = hr.cholesky() {
                    break -chol.solve(&gvec);
                }
                ridge = if ridge == 0.0 { 1e-10 } else { ridge * 100.0 };
                if ridge > 1e6 {
                    break -&gvec;
                }
            };
            let f0 = objective(&x, inv_t).ok_or_else(|| Error::NoConvergence {
                what: "inscribed ellipsoid barrier",
                iterations,
            })?;
            let slope: f64 = dir.iter().zip(&g).map(|(d, gi)| d * gi).sum();
            let decrement = -slope;
            if decrement <= 1e-24 {
                break;
            }
            // Once the decrement is below float noise in φ, Armijo can no
            // longer certify progress; switch to undamped Newton steps.
            let quad_phase = decrement <= 1e-9;
            let mut alpha = 1.0;
            let mut moved = false;
            while alpha > 1e-14 {
                let cand: Vec<f64> = x
                    .iter()
                    .zip(dir.iter())
                    .map(|(xi, di)| xi + alpha * di)
                    .collect();
                if let Some(fc) = objective(&cand, inv_t) {
                    if quad_phase || fc <= f0 + 1e-4 * alpha * slope {
                        x = cand;
                        moved = true;
                        break;
                    }
                }
                alpha /= 2.0;
            }
            if !moved {
                break;
            }
        }
        if let Some((g, _)) = grad_hess(&x, inv_t) {
            let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if gnorm <= tol::JOHN_GRAD && t >= 1e6 {
                certified = Some(x.clone());
            }
        }
        t *= 8.0;
    }

    let x = certified.ok_or(Error::NoConvergence {
        what: "inscribed ellipsoid gradient",
        iterations,
    })?;
    let (e, c) = unpack(&x);
    let e2 = &e * &e;
    let shape = e2
        .cholesky()
        .ok_or_else(|| Error::DegenerateBody("inscribed shape not positive definite".into()))?
        .inverse();
    let shape = (&shape + shape.transpose()) / 2.0;
    Ok(Ellipsoid { center: c, shape })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selectors::centroid;
    use crate::shapes;
    use crate::transform::{sample, AffineTransform, GroupTag, SampleBounds};
    use crate::point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn right_triangle() -> ConvexBody {
        ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn lowner_of_square_is_circumcircle() {
        let e = lowner(&shapes::unit_square()).unwrap();
        assert!((e.center.clone() - point(&[0.5, 0.5])).norm() < 1e-8);
        let expected = DMatrix::<f64>::identity(2, 2) * 2.0;
        assert!((&e.shape - expected).abs().max() < 1e-6);
        for v in shapes::unit_square().vertices() {
            assert!(e.contains(v, 1e-6));
        }
    }

    // Oracle: the minimal ellipse of a triangle is the affine image of the
    // circumcircle of an equilateral triangle under the map matching the
    // vertices, so center and shape have closed forms.
    #[test]
    fn lowner_of_triangle_matches_equilateral_image() {
        let tri = ConvexBody::from_coords(&[vec![0.1, -0.2], vec![1.4, 0.3], vec![0.5, 1.1]])
            .unwrap();
        let e = lowner(&tri).unwrap();

        let c = centroid(&tri);
        assert!((e.center.clone() - &c).norm() < 1e-6);

        let equi: Vec<Point> = (0..3)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 3.0;
                point(&[a.cos(), a.sin()])
            })
            .collect();
        // Solve the affine map sending the equilateral vertices to the
        // triangle's (canonical order is irrelevant: any correspondence
        // gives the same image ellipse).
        let verts = tri.vertices();
        let mut lhs = DMatrix::zeros(6, 6);
        let mut rhs = Point::zeros(6);
        for (row, (u, v)) in equi.iter().zip(verts.iter()).enumerate() {
            lhs[(2 * row, 0)] = u[0];
            lhs[(2 * row, 1)] = u[1];
            lhs[(2 * row, 4)] = 1.0;
            lhs[(2 * row + 1, 2)] = u[0];
            lhs[(2 * row + 1, 3)] = u[1];
            lhs[(2 * row + 1, 5)] = 1.0;
            rhs[2 * row] = v[0];
            rhs[2 * row + 1] = v[1];
        }
        let sol = lhs.lu().solve(&rhs).unwrap();
        let f = DMatrix::from_row_slice(2, 2, &[sol[0], sol[1], sol[2], sol[3]]);
        let shape_oracle = (&f * f.transpose()).try_inverse().unwrap();
        assert!((&e.shape - shape_oracle).abs().max() < 1e-5);
    }

    // No feasible ellipse in a perturbation neighborhood has smaller area:
    // rescale each perturbed candidate until it just contains the vertices
    // and compare volumes.
    #[test]
    fn lowner_is_locally_minimal() {
        let tri = right_triangle();
        let e = lowner(&tri).unwrap();
        let base_logdet = e.shape.determinant().ln();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..500 {
            let mut center = e.center.clone();
            center[0] += rng.random_range(-0.02..0.02);
            center[1] += rng.random_range(-0.02..0.02);
            let mut shape = e.shape.clone();
            shape[(0, 0)] *= 1.0 + rng.random_range(-0.02..0.02);
            shape[(1, 1)] *= 1.0 + rng.random_range(-0.02..0.02);
            let bump = rng.random_range(-0.02..0.02);
            shape[(0, 1)] += bump;
            shape[(1, 0)] += bump;
            if shape.clone().cholesky().is_none() {
                continue;
            }
            let cand = Ellipsoid { center, shape };
            let worst = tri
                .vertices()
                .iter()
                .map(|v| cand.quad_form(v))
                .fold(0.0, f64::max);
            let contained_logdet = (cand.shape.determinant() / (worst * worst)).ln();
            // Area ∝ det^{-1/2}: containment-scaled candidates can't beat
            // the reported optimum.
            assert!(contained_logdet <= base_logdet + 1e-9);
        }
    }

    #[test]
    fn lowner_affine_image_consistency() {
        let tri = right_triangle();
        let e = lowner(&tri).unwrap();
        let g = sample(GroupTag::Aff, &SampleBounds::default(), 123).unwrap();
        let eg = lowner(&g.apply(&tri).unwrap()).unwrap();
        assert!((eg.center - g.apply_point(&e.center)).norm() < 1e-6);
    }

    #[test]
    fn lowner_rejects_degenerate() {
        let seg = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(lowner(&seg), Err(Error::DegenerateBody(_))));
    }

    #[test]
    fn john_of_square_is_inscribed_circle() {
        let e = john(&shapes::unit_square()).unwrap();
        assert!((e.center.clone() - point(&[0.5, 0.5])).norm() < 1e-8, "center {:?}", e.center);
        let expected = DMatrix::<f64>::identity(2, 2) * 4.0;
        assert!((&e.shape - expected).abs().max() < 1e-5);
    }

    #[test]
    fn john_center_of_triangles_is_centroid() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..5 {
            let pts: Vec<Point> = (0..3)
                .map(|_| point(&[rng.random_range(-1.0..1.5), rng.random_range(-1.0..1.5)]))
                .collect();
            let tri = match ConvexBody::canonicalize(&pts) {
                Ok(b) if b.dimension() == 2 && b.diameter() > 0.3 => b,
                _ => continue,
            };
            let e = john(&tri).unwrap();
            let c = centroid(&tri);
            assert!(
                (e.center.clone() - &c).norm() < 1e-6,
                "trial {trial}: center {:?} vs centroid {:?}",
                e.center,
                c
            );
        }
    }

    #[test]
    fn john_stays_inside() {
        let body = ConvexBody::from_coords(&[
            vec![0.0, 0.0],
            vec![2.0, 0.1],
            vec![2.4, 1.4],
            vec![0.9, 2.1],
            vec![-0.3, 1.0],
        ])
        .unwrap();
        let e = john(&body).unwrap();
        let hs = to_halfspaces(&body).unwrap().halfspaces;
        for k in 0..256 {
            let ang = std::f64::consts::TAU * k as f64 / 256.0;
            let bp = e.boundary_point_2d(ang);
            for (a, b) in &hs {
                assert!(a.dot(&bp) <= b + 1e-8);
            }
        }
    }

    #[test]
    fn john_of_box_in_3d() {
        let cube = shapes::coord_box(&[(0.0, 2.0), (0.0, 4.0), (0.0, 6.0)]).unwrap();
        let e = john(&cube).unwrap();
        assert!((e.center.clone() - point(&[1.0, 2.0, 3.0])).norm() < 1e-7);
        // Largest inscribed ellipsoid of a box has the box's half-extents.
        let expected = DMatrix::from_row_slice(
            3,
            3,
            &[1.0, 0.0, 0.0, 0.0, 0.25, 0.0, 0.0, 0.0, 1.0 / 9.0],
        );
        assert!((&e.shape - expected).abs().max() < 1e-5);
    }

    #[test]
    fn john_affine_image_consistency() {
        let tri = right_triangle();
        let e = john(&tri).unwrap();
        let g = AffineTransform::new(
            DMatrix::from_row_slice(2, 2, &[1.3, 0.4, -0.2, 0.9]),
            point(&[0.7, -0.4]),
        )
        .unwrap();
        let eg = john(&g.apply(&tri).unwrap()).unwrap();
        assert!((eg.center - g.apply_point(&e.center)).norm() < 1e-6);
    }
}
