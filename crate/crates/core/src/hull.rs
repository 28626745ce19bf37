//! Hull extraction and facet enumeration helpers.
//!
//! 2D bodies use an Andrew monotone chain with a distance-to-chord predicate.
//! In higher dimensions extreme points are found by projecting each candidate
//! onto the hull of the others, and facets by hyperplane fitting over vertex
//! subsets; both are exact finite computations at desk scale (<= a few
//! hundred vertices, n <= 3 in practice).

use nalgebra::{DMatrix, DVector};

use crate::minnorm::project_onto_hull;
use crate::{tol, Point};

/// Indices of hull vertices in counterclockwise order, starting at the
/// lexicographically smallest point. Collinear and duplicate points are
/// dropped (distance-to-chord below `tol::GEOM`).
pub fn chain2(points: &[Point]) -> Vec<usize> {
    debug_assert!(points.iter().all(|p| p.len() == 2));
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]));
    order.dedup_by(|&mut a, &mut b| (&points[a] - &points[b]).norm() <= tol::GEOM);

    if order.len() <= 2 {
        return order;
    }

    let turns_right = |a: usize, b: usize, c: usize| {
        let ab = &points[b] - &points[a];
        let ac = &points[c] - &points[a];
        let cross = ab[0] * ac[1] - ab[1] * ac[0];
        // Signed distance from c to line ab; keeps only strict left turns.
        cross <= tol::GEOM * ab.norm()
    };

    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && turns_right(lower[lower.len() - 2], lower[lower.len() - 1], i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && turns_right(upper[upper.len() - 2], upper[upper.len() - 1], i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn lex_cmp(a: &Point, b: &Point) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Extreme points of conv(points), for any ambient dimension.
pub fn extreme_points(points: &[Point]) -> Vec<Point> {
    let n = points[0].len();
    if n == 2 {
        // chain2 sorts and drops near-duplicates itself; the quadratic
        // dedup below would dominate on Minkowski-sum sized inputs, so
        // only the (small) hull gets the pairwise pass.
        let idx = chain2(points);
        let mut verts: Vec<Point> = Vec::with_capacity(idx.len());
        for i in idx {
            if !verts.iter().any(|q| (&points[i] - q).norm() <= tol::GEOM) {
                verts.push(points[i].clone());
            }
        }
        return verts;
    }
    let mut unique: Vec<Point> = Vec::new();
    for p in points {
        if !unique.iter().any(|q| (p - q).norm() <= tol::GEOM) {
            unique.push(p.clone());
        }
    }
    if unique.len() == 1 {
        return unique;
    }
    if n == 1 {
        let mut sorted = unique;
        sorted.sort_by(lex_cmp);
        let last = sorted.len() - 1;
        if last == 0 {
            return sorted;
        }
        return vec![sorted[0].clone(), sorted[last].clone()];
    }
    let mut keep = Vec::new();
    for i in 0..unique.len() {
        let others: Vec<Point> = unique
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (d, _) = project_onto_hull(&unique[i], &others);
        if d > tol::GEOM {
            keep.push(unique[i].clone());
        }
    }
    keep
}

/// Rank of span{p_i - p_0} with singular-value cutoff `tol::GEOM`, plus an
/// orthonormal basis of that span.
pub fn affine_rank_basis(points: &[Point]) -> (usize, Vec<Point>) {
    let n = points[0].len();
    if points.len() == 1 {
        return (0, Vec::new());
    }
    let mut diffs = DMatrix::zeros(n, points.len() - 1);
    for (j, p) in points.iter().skip(1).enumerate() {
        diffs.set_column(j, &(p - &points[0]));
    }
    let svd = diffs.svd(true, false);
    let smax = svd.singular_values.max();
    let cutoff = tol::GEOM * smax.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let u = svd.u.expect("u requested");
    let basis = (0..rank).map(|j| u.column(j).into_owned()).collect();
    (rank, basis)
}

/// A facet constraint <normal, x> <= offset with unit outward normal.
#[derive(Debug, Clone)]
pub struct Facet {
    pub normal: Point,
    pub offset: f64,
    /// Indices of the vertices lying on the facet.
    pub vertices: Vec<usize>,
}

/// Facets of a full-dimensional polytope given by its extreme points.
///
/// n = 1 and n = 2 read the facets off the ordered hull; n >= 3 fits a
/// hyperplane through every affinely independent n-subset and keeps the
/// supporting ones, deduplicated. Vertices must already be canonical
/// (extreme, deduplicated).
pub fn facets(vertices: &[Point]) -> Vec<Facet> {
    let n = vertices[0].len();
    match n {
        1 => {
            let mut idx: Vec<usize> = (0..vertices.len()).collect();
            idx.sort_by(|&a, &b| lex_cmp(&vertices[a], &vertices[b]));
            let lo = idx[0];
            let hi = idx[idx.len() - 1];
            vec![
                Facet {
                    normal: Point::from_column_slice(&[-1.0]),
                    offset: -vertices[lo][0],
                    vertices: vec![lo],
                },
                Facet {
                    normal: Point::from_column_slice(&[1.0]),
                    offset: vertices[hi][0],
                    vertices: vec![hi],
                },
            ]
        }
        2 => {
            let ccw = chain2(vertices);
            let m = ccw.len();
            let mut out = Vec::with_capacity(m);
            for k in 0..m {
                let a = ccw[k];
                let b = ccw[(k + 1) % m];
                let dir = &vertices[b] - &vertices[a];
                let len = dir.norm();
                let normal = Point::from_column_slice(&[dir[1] / len, -dir[0] / len]);
                out.push(Facet {
                    offset: normal.dot(&vertices[a]),
                    vertices: vec![a, b],
                    normal,
                });
            }
            out
        }
        _ => facets_by_enumeration(vertices, n),
    }
}

fn facets_by_enumeration(vertices: &[Point], n: usize) -> Vec<Facet> {
    let mut out: Vec<Facet> = Vec::new();
    let m = vertices.len();
    let mut subset = vec![0usize; n];
    enumerate_subsets(m, n, &mut subset, 0, 0, &mut |idx| {
        if let Some((normal, offset)) = supporting_hyperplane(vertices, idx) {
            let dup = out
                .iter()
                .any(|f| (&f.normal - &normal).norm() <= tol::GEOM && (f.offset - offset).abs() <= tol::GEOM);
            if !dup {
                let members = (0..m)
                    .filter(|&i| (normal.dot(&vertices[i]) - offset).abs() <= tol::GEOM * (1.0 + offset.abs()))
                    .collect();
                out.push(Facet {
                    normal,
                    offset,
                    vertices: members,
                });
            }
        }
    });
    out
}

pub(crate) fn enumerate_subsets(
    m: usize,
    k: usize,
    subset: &mut Vec<usize>,
    depth: usize,
    start: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(subset);
        return;
    }
    for i in start..m {
        subset[depth] = i;
        enumerate_subsets(m, k, subset, depth + 1, i + 1, visit);
    }
}

/// Unit outward normal and offset if the subset spans a supporting
/// hyperplane of the vertex set.
fn supporting_hyperplane(vertices: &[Point], idx: &[usize]) -> Option<(Point, f64)> {
    let n = vertices[0].len();
    let base = &vertices[idx[0]];
    // Square matrix (zero last row) so the SVD returns the full right basis
    // including the null vector.
    let mut diffs = DMatrix::zeros(n, n);
    for (r, &i) in idx.iter().skip(1).enumerate() {
        let d = &vertices[i] - base;
        for c in 0..n {
            diffs[(r, c)] = d[c];
        }
    }
    let svd = diffs.svd(false, true);
    let smax = svd.singular_values.max().max(1.0);
    if svd.singular_values.iter().filter(|&&s| s > tol::GEOM * smax).count() < n - 1 {
        return None; // subset does not span a hyperplane
    }
    let vt = svd.v_t.expect("v_t requested");
    let mut small = 0;
    for k in 1..n {
        if svd.singular_values[k] < svd.singular_values[small] {
            small = k;
        }
    }
    let normal: DVector<f64> = vt.row(small).transpose();
    let offset = normal.dot(base);
    let scale = 1.0 + offset.abs();
    let mut above = false;
    let mut below = false;
    for v in vertices {
        let s = normal.dot(v) - offset;
        if s > tol::GEOM * scale {
            above = true;
        } else if s < -tol::GEOM * scale {
            below = true;
        }
        if above && below {
            return None;
        }
    }
    if above {
        Some((-normal, -offset))
    } else {
        Some((normal, offset))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point;

    #[test]
    fn chain_orders_square_ccw() {
        let pts = vec![
            point(&[1.0, 1.0]),
            point(&[0.0, 0.0]),
            point(&[1.0, 0.0]),
            point(&[0.5, 0.5]),
            point(&[0.0, 1.0]),
        ];
        let idx = chain2(&pts);
        let hull: Vec<_> = idx.iter().map(|&i| (pts[i][0], pts[i][1])).collect();
        assert_eq!(hull, vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    }

    #[test]
    fn extreme_points_drop_interior_in_3d() {
        let pts = vec![
            point(&[0.0, 0.0, 0.0]),
            point(&[1.0, 0.0, 0.0]),
            point(&[0.0, 1.0, 0.0]),
            point(&[0.0, 0.0, 1.0]),
            point(&[0.2, 0.2, 0.2]),
            point(&[0.5, 0.5, 0.0]), // edge midpoint
        ];
        let ext = extreme_points(&pts);
        assert_eq!(ext.len(), 4);
    }

    #[test]
    fn tetrahedron_has_four_facets() {
        let verts = vec![
            point(&[0.0, 0.0, 0.0]),
            point(&[1.0, 0.0, 0.0]),
            point(&[0.0, 1.0, 0.0]),
            point(&[0.0, 0.0, 1.0]),
        ];
        let fs = facets(&verts);
        assert_eq!(fs.len(), 4);
        for f in &fs {
            assert!((f.normal.norm() - 1.0).abs() < 1e-12);
            assert_eq!(f.vertices.len(), 3);
            for v in &verts {
                assert!(f.normal.dot(v) <= f.offset + 1e-9);
            }
        }
    }

    #[test]
    fn cube_merges_coplanar_triples_into_six_facets() {
        let mut verts = Vec::new();
        for x in [0.0, 1.0] {
            for y in [0.0, 1.0] {
                for z in [0.0, 1.0] {
                    verts.push(point(&[x, y, z]));
                }
            }
        }
        let fs = facets(&verts);
        assert_eq!(fs.len(), 6);
        for f in &fs {
            assert_eq!(f.vertices.len(), 4);
        }
    }
}
