//! Stabilizer subgroups of polytopes and their fixed-point subspaces.
//!
//! A polytope's stabilizer inside Aff(n), Sim(n) or E(n) is finite whenever
//! the transverse directions leave no continuous freedom, because an affine
//! map is pinned down by where it sends an affine frame of vertices. The
//! enumeration below sends one canonical frame to every ordered vertex tuple
//! and keeps the maps that permute the vertex set and classify into the
//! requested group.

use nalgebra::DMatrix;

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::hull::affine_rank_basis;
use crate::selectors::{self, SelectorId};
use crate::tol;
use crate::transform::{AffineTransform, GroupTag};
use crate::Point;

/// Desk-scale cap on the vertex count for stabilizer enumeration.
pub const MAX_STABILIZER_VERTICES: usize = 16;

/// Finite stabilizer of a body inside one of the nested groups.
#[derive(Debug, Clone)]
pub struct StabilizerGroup {
    pub elements: Vec<AffineTransform>,
    pub group: GroupTag,
    pub body: ConvexBody,
}

/// Affine subspace as base point plus an orthonormal direction basis.
/// An empty basis means a single point; n directions mean all of R^n.
#[derive(Debug, Clone)]
pub struct AffineSubspace {
    pub base: Point,
    pub directions: Vec<Point>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Euclidean distance from `x` to the subspace.
    /// Relies on the directions being orthonormal.
    pub fn distance(&self, x: &Point) -> f64 {
        let mut d = x - &self.base;
        for u in &self.directions {
            let c = d.dot(u);
            d -= u * c;
        }
        d.norm()
    }

    pub fn contains(&self, x: &Point, eps: f64) -> bool {
        self.distance(x) <= eps
    }
}

/// Unit vector spanning the orthogonal complement of `basis` in R^n.
/// Caller guarantees the complement is one-dimensional.
fn transverse_unit(basis: &[Point], n: usize) -> Point {
    let mut best: Option<Point> = None;
    let mut best_norm = 0.0;
    for i in 0..n {
        let mut v = Point::zeros(n);
        v[i] = 1.0;
        for u in basis {
            let c = v.dot(u);
            v -= u * c;
        }
        let norm = v.norm();
        if norm > best_norm {
            best_norm = norm;
            best = Some(v / norm);
        }
    }
    best.expect("complement direction exists")
}

/// Ordered tuples of `len` distinct indices drawn from 0..m.
fn ordered_tuples(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    let mut used = vec![false; m];
    fn rec(
        m: usize,
        len: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in 0..m {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(m, len, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(m, len, &mut current, &mut used, &mut out);
    out
}

/// First dim+1 affinely independent vertices in canonical order.
fn canonical_frame(verts: &[Point], k: usize) -> Vec<usize> {
    let n = verts[0].len();
    let mut frame = vec![0usize];
    let mut diffs: Vec<Point> = Vec::new();
    for (i, v) in verts.iter().enumerate().skip(1) {
        if frame.len() == k + 1 {
            break;
        }
        let d = v - &verts[frame[0]];
        let mut mat = DMatrix::zeros(diffs.len() + 1, n);
        for (r, dv) in diffs.iter().chain(std::iter::once(&d)).enumerate() {
            mat.row_mut(r).copy_from(&dv.transpose());
        }
        let rank = mat
            .svd(false, false)
            .singular_values
            .iter()
            .filter(|s| **s > tol::GEOM)
            .count();
        if rank == diffs.len() + 1 {
            diffs.push(d);
            frame.push(i);
        }
    }
    frame
}

/// True when g maps the vertex set onto itself, each image matching a
/// distinct vertex within `eps`.
fn permutes_vertices(g: &AffineTransform, verts: &[Point], eps: f64) -> bool {
    let mut used = vec![false; verts.len()];
    for v in verts {
        let img = g.apply_point(v);
        let mut hit = None;
        let mut best = f64::INFINITY;
        for (j, w) in verts.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (&img - w).norm();
            if d < best {
                best = d;
                hit = Some(j);
            }
        }
        match hit {
            Some(j) if best <= eps => used[j] = true,
            _ => return false,
        }
    }
    true
}

fn sort_key_cmp(a: &AffineTransform, b: &AffineTransform) -> std::cmp::Ordering {
    let ka = a.matrix().iter().chain(a.translation().iter());
    let kb = b.matrix().iter().chain(b.translation().iter());
    for (x, y) in ka.zip(kb) {
        let c = x.total_cmp(y);
        if c != std::cmp::Ordering::Equal {
            return c;
        }
    }
    std::cmp::Ordering::Equal
}

/// Enumerate the finite stabilizer of `body` inside `group`.
///
/// Candidate maps send the canonical frame to every ordered vertex tuple;
/// for a codimension-one body under E/Sim the map is completed on the
/// transverse line with both signs of the hull's similarity ratio. Kept
/// elements must permute the vertex set within 1e-8 and classify into the
/// requested group; the result is checked to be a group before returning.
pub fn stabilizer(body: &ConvexBody, group: GroupTag) -> Result<StabilizerGroup> {
    let n = body.dim_ambient();
    let verts = body.vertices();
    let m = verts.len();
    if m > MAX_STABILIZER_VERTICES {
        return Err(Error::TooManyVertices {
            got: m,
            max: MAX_STABILIZER_VERTICES,
        });
    }
    let k = body.dimension();
    if k == 0 {
        return Err(Error::DegenerateBody(
            "a point's stabilizer is the whole point-stabilizer, not finite".into(),
        ));
    }
    if k < n {
        if group == GroupTag::Aff {
            return Err(Error::UnsupportedBody(
                "affine stabilizer of a lower-dimensional body is infinite".into(),
            ));
        }
        if n - k >= 2 {
            return Err(Error::UnsupportedBody(
                "transverse rotations make the stabilizer infinite".into(),
            ));
        }
    }

    let frame = canonical_frame(verts, k);
    let p0 = &verts[frame[0]];
    let frame_diffs: Vec<Point> = frame[1..].iter().map(|&i| &verts[i] - p0).collect();
    let transverse = if k < n {
        let (_, basis) = affine_rank_basis(verts);
        Some(transverse_unit(&basis, n))
    } else {
        None
    };

    let mut elements: Vec<AffineTransform> = Vec::new();
    let mut push_candidate = |g: AffineTransform| {
        if !g.is_in(group) {
            return;
        }
        if !permutes_vertices(&g, verts, tol::STABILIZER_MATCH) {
            return;
        }
        if !elements.iter().any(|e| e.approx_eq(&g, tol::STABILIZER_MATCH)) {
            elements.push(g);
        }
    };

    for tuple in ordered_tuples(m, k + 1) {
        let q0 = &verts[tuple[0]];
        let image_diffs: Vec<Point> = tuple[1..].iter().map(|&i| &verts[i] - q0).collect();
        match &transverse {
            None => {
                let mut d = DMatrix::zeros(n, n);
                let mut e = DMatrix::zeros(n, n);
                for (c, (dv, ev)) in frame_diffs.iter().zip(&image_diffs).enumerate() {
                    d.column_mut(c).copy_from(dv);
                    e.column_mut(c).copy_from(ev);
                }
                let Some(dinv) = d.try_inverse() else { continue };
                let mat = e * dinv;
                let trans = q0 - &mat * p0;
                if let Ok(g) = AffineTransform::new(mat, trans) {
                    push_candidate(g);
                }
            }
            Some(u) => {
                // Hull map on k directions plus the transverse line; the
                // similarity ratio fixes the transverse stretch up to sign.
                let lambda = image_diffs[0].norm() / frame_diffs[0].norm();
                let mut d = DMatrix::zeros(n, n);
                for (c, dv) in frame_diffs.iter().enumerate() {
                    d.column_mut(c).copy_from(dv);
                }
                d.column_mut(k).copy_from(u);
                let Some(dinv) = d.try_inverse() else { continue };
                for sign in [1.0, -1.0] {
                    let mut e = DMatrix::zeros(n, n);
                    for (c, ev) in image_diffs.iter().enumerate() {
                        e.column_mut(c).copy_from(ev);
                    }
                    e.column_mut(k).copy_from(&(u * (sign * lambda)));
                    let mat = &e * &dinv;
                    let trans = q0 - &mat * p0;
                    if let Ok(g) = AffineTransform::new(mat, trans) {
                        push_candidate(g);
                    }
                }
            }
        }
    }

    elements.sort_by(sort_key_cmp);
    check_group(&elements)?;
    Ok(StabilizerGroup {
        elements,
        group,
        body: body.clone(),
    })
}

/// Closure, inverses and identity, all within the stabilizer match
/// tolerance. Failure means the enumeration returned a non-group.
fn check_group(elements: &[AffineTransform]) -> Result<()> {
    if elements.is_empty() {
        return Err(Error::GroupClosure("no elements (identity missing)".into()));
    }
    let n = elements[0].dim();
    let id = AffineTransform::identity(n);
    if !elements.iter().any(|e| e.approx_eq(&id, tol::STABILIZER_MATCH)) {
        return Err(Error::GroupClosure("identity missing".into()));
    }
    let matches = |g: &AffineTransform| {
        elements
            .iter()
            .any(|e| e.approx_eq(g, tol::STABILIZER_MATCH))
    };
    for (i, a) in elements.iter().enumerate() {
        let inv = a
            .inverse()
            .map_err(|e| Error::GroupClosure(format!("element {i} not invertible: {e}")))?;
        if !matches(&inv) {
            return Err(Error::GroupClosure(format!("inverse of element {i} missing")));
        }
        for (j, b) in elements.iter().enumerate() {
            let ab = a
                .compose(b)
                .map_err(|e| Error::GroupClosure(format!("compose {i}*{j} failed: {e}")))?;
            if !matches(&ab) {
                return Err(Error::GroupClosure(format!(
                    "product of elements {i} and {j} missing"
                )));
            }
        }
    }
    Ok(())
}

/// Fixed-point subspace F = {x | gx = x for all g} of a finite stabilizer.
///
/// Solves the stacked system (M_g - I)x = -v_g with rank tolerance 1e-8.
/// Nonempty for any finite group: the orbit average of the body centroid is
/// always a solution and serves as the base point.
pub fn fixed_point_set(stab: &StabilizerGroup) -> AffineSubspace {
    let n = stab.body.dim_ambient();
    if stab.elements.len() == 1 {
        let directions = (0..n)
            .map(|i| {
                let mut e = Point::zeros(n);
                e[i] = 1.0;
                e
            })
            .collect();
        return AffineSubspace {
            base: Point::zeros(n),
            directions,
        };
    }

    let c = selectors::centroid(&stab.body);
    let mut base = Point::zeros(n);
    for g in &stab.elements {
        base += g.apply_point(&c);
    }
    base /= stab.elements.len() as f64;

    let rows = n * stab.elements.len();
    let mut a = DMatrix::zeros(rows, n);
    for (gi, g) in stab.elements.iter().enumerate() {
        let mi = g.matrix() - DMatrix::<f64>::identity(n, n);
        for r in 0..n {
            a.row_mut(gi * n + r).copy_from(&mi.row(r));
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("thin right singular vectors");
    let mut directions = Vec::new();
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s <= tol::FIXED_SET_RANK {
            directions.push(vt.row(i).transpose());
        }
    }
    AffineSubspace { base, directions }
}

/// True iff every stabilizer element moves `x` by at most 1e-7.
pub fn is_fixed(x: &Point, stab: &StabilizerGroup) -> bool {
    stab.elements
        .iter()
        .all(|g| (g.apply_point(x) - x).norm() <= tol::FIXED_POINT)
}

#[derive(Debug, Clone)]
pub struct ContainmentRow {
    pub selector: SelectorId,
    pub point: Point,
    pub distance: f64,
}

/// Per-selector distances to the fixed subspace of the body's stabilizer.
#[derive(Debug, Clone)]
pub struct ContainmentReport {
    pub group: GroupTag,
    pub fixed: AffineSubspace,
    pub rows: Vec<ContainmentRow>,
}

impl ContainmentReport {
    pub fn max_distance(&self) -> f64 {
        self.rows.iter().fold(0.0, |m, r| m.max(r.distance))
    }

    pub fn all_within(&self, eps: f64) -> bool {
        self.rows.iter().all(|r| r.distance <= eps)
    }
}

/// Evaluate each selector on `body` and measure the distance to the fixed
/// subspace of its stabilizer: the P(K) inside F(K) containment check.
pub fn check_containment(
    body: &ConvexBody,
    selectors: &[SelectorId],
    group: GroupTag,
) -> Result<ContainmentReport> {
    let stab = stabilizer(body, group)?;
    let fixed = fixed_point_set(&stab);
    let mut rows = Vec::with_capacity(selectors.len());
    for &sel in selectors {
        let p = selectors::evaluate(sel, body)?;
        let distance = fixed.distance(&p);
        rows.push(ContainmentRow {
            selector: sel,
            point: p,
            distance,
        });
    }
    Ok(ContainmentReport { group, fixed, rows })
}
