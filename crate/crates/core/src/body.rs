//! Canonical V-representation of compact convex bodies and the metric and
//! algebraic operations built on it: support values, point projection,
//! Hausdorff distance, Minkowski combinations, diameter.
//!
//! A body stores exactly the extreme points of its hull, lexicographically
//! sorted; every constructor funnels through [`ConvexBody::canonicalize`].

use crate::hull::{self, Facet};
use crate::minnorm::project_onto_hull;
use crate::{tol, Error, Point, Result};

#[derive(Debug, Clone)]
pub struct ConvexBody {
    dim_ambient: usize,
    vertices: Vec<Point>,
}

impl ConvexBody {
    /// Builds the canonical body from an arbitrary point cloud: dedup within
    /// 1e-9, drop non-extreme points, sort lexicographically.
    pub fn canonicalize(points: &[Point]) -> Result<ConvexBody> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let n = points[0].len();
        if n == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        for p in points {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: p.len(),
                });
            }
        }
        let cleaned: Vec<Point> = points
            .iter()
            .map(|p| p.map(|x| if x == 0.0 { 0.0 } else { x }))
            .collect();
        let mut vertices = hull::extreme_points(&cleaned);
        vertices.sort_by(hull::lex_cmp);
        Ok(ConvexBody {
            dim_ambient: n,
            vertices,
        })
    }

    pub fn from_coords(coords: &[Vec<f64>]) -> Result<ConvexBody> {
        let points: Vec<Point> = coords
            .iter()
            .map(|row| Point::from_column_slice(row))
            .collect();
        ConvexBody::canonicalize(&points)
    }

    pub fn singleton(p: Point) -> ConvexBody {
        ConvexBody {
            dim_ambient: p.len(),
            vertices: vec![p.map(|x| if x == 0.0 { 0.0 } else { x })],
        }
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Dimension of the affine hull (rank tolerance 1e-9).
    pub fn dimension(&self) -> usize {
        hull::affine_rank_basis(&self.vertices).0
    }

    /// Max of ⟨v, direction⟩ over vertices and the attaining vertex,
    /// lexicographically smallest on ties (within 1e-12 relative).
    pub fn support(&self, direction: &Point) -> Result<(f64, Point)> {
        if direction.len() != self.dim_ambient {
            return Err(Error::DimensionMismatch {
                expected: self.dim_ambient,
                got: direction.len(),
            });
        }
        if direction.norm() <= 1e-12 {
            return Err(Error::ZeroDirection);
        }
        let mut best = f64::NEG_INFINITY;
        for v in &self.vertices {
            best = best.max(v.dot(direction));
        }
        let cut = best - 1e-12 * (1.0 + best.abs());
        let witness = self
            .vertices
            .iter()
            .filter(|v| v.dot(direction) >= cut)
            .min_by(|a, b| hull::lex_cmp(a, b))
            .expect("nonempty body");
        Ok((best, witness.clone()))
    }

    /// Distance from `x` to the body and the nearest body point
    /// (`(0, x)` when `x` lies inside).
    pub fn point_distance(&self, x: &Point) -> Result<(f64, Point)> {
        if x.len() != self.dim_ambient {
            return Err(Error::DimensionMismatch {
                expected: self.dim_ambient,
                got: x.len(),
            });
        }
        if self.vertices.len() == 1 {
            let v = &self.vertices[0];
            return Ok(((x - v).norm(), v.clone()));
        }
        if self.dim_ambient == 2 {
            let poly = self.ccw_coords2();
            let (d, proj) = point_to_polygon2([x[0], x[1]], &poly);
            return Ok((d, Point::from_column_slice(&proj)));
        }
        Ok(project_onto_hull(x, &self.vertices))
    }

    /// Max pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                best = best.max((&self.vertices[i] - &self.vertices[j]).norm());
            }
        }
        best
    }

    pub fn negate(&self) -> ConvexBody {
        let pts: Vec<Point> = self.vertices.iter().map(|v| -v).collect();
        ConvexBody::canonicalize(&pts).expect("negation preserves validity")
    }

    pub fn scale(&self, c: f64) -> Result<ConvexBody> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::NonpositiveScale(c));
        }
        let pts: Vec<Point> = self.vertices.iter().map(|v| v * c).collect();
        ConvexBody::canonicalize(&pts)
    }

    pub fn translate(&self, shift: &Point) -> Result<ConvexBody> {
        if shift.len() != self.dim_ambient {
            return Err(Error::DimensionMismatch {
                expected: self.dim_ambient,
                got: shift.len(),
            });
        }
        let pts: Vec<Point> = self.vertices.iter().map(|v| v + shift).collect();
        ConvexBody::canonicalize(&pts)
    }

    /// Mean of the vertex list. Not the volumetric centroid; used for
    /// initial guesses and orbit averaging.
    pub(crate) fn vertex_mean(&self) -> Point {
        let mut acc = Point::zeros(self.dim_ambient);
        for v in &self.vertices {
            acc += v;
        }
        acc / self.vertices.len() as f64
    }

    /// Facet constraints of a full-dimensional body.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        if self.dimension() < self.dim_ambient {
            return Err(Error::DegenerateBody(format!(
                "facet enumeration needs a full-dimensional body (dim {} in R^{})",
                self.dimension(),
                self.dim_ambient
            )));
        }
        Ok(hull::facets(&self.vertices))
    }

    /// Vertices in counterclockwise hull order as fixed-size arrays
    /// (2D fast path shared by the distance routines).
    pub(crate) fn ccw_coords2(&self) -> Vec<[f64; 2]> {
        debug_assert_eq!(self.dim_ambient, 2);
        let order = hull::chain2(&self.vertices);
        order
            .into_iter()
            .map(|i| [self.vertices[i][0], self.vertices[i][1]])
            .collect()
    }

    /// Set equality within `eps` in Hausdorff distance.
    pub fn approx_eq(&self, other: &ConvexBody, eps: f64) -> bool {
        self.dim_ambient == other.dim_ambient
            && hausdorff(self, other).map(|d| d <= eps).unwrap_or(false)
    }
}

/// Exact Hausdorff distance between polytopes: the sup of the convex
/// function d(·, C) over a polytope is attained at a vertex, so both
/// directed distances reduce to vertex-to-body projections.
pub fn hausdorff(a: &ConvexBody, b: &ConvexBody) -> Result<f64> {
    if a.dim_ambient != b.dim_ambient {
        return Err(Error::DimensionMismatch {
            expected: a.dim_ambient,
            got: b.dim_ambient,
        });
    }
    if a.dim_ambient == 2 {
        let pa = a.ccw_coords2();
        let pb = b.ccw_coords2();
        return Ok(directed2(&pa, &pb).max(directed2(&pb, &pa)));
    }
    let mut best = 0.0f64;
    for v in &a.vertices {
        best = best.max(b.point_distance(v)?.0);
    }
    for v in &b.vertices {
        best = best.max(a.point_distance(v)?.0);
    }
    Ok(best)
}

/// Vertex-wise combination (1−t)a + t b, canonicalized.
pub fn minkowski_combination(a: &ConvexBody, b: &ConvexBody, t: f64) -> Result<ConvexBody> {
    if a.dim_ambient != b.dim_ambient {
        return Err(Error::DimensionMismatch {
            expected: a.dim_ambient,
            got: b.dim_ambient,
        });
    }
    if !(0.0..=1.0).contains(&t) || t.is_nan() {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let mut sums = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for va in &a.vertices {
        for vb in &b.vertices {
            sums.push(va * (1.0 - t) + vb * t);
        }
    }
    ConvexBody::canonicalize(&sums)
}

pub(crate) fn directed2(from: &[[f64; 2]], to: &[[f64; 2]]) -> f64 {
    let mut best = 0.0f64;
    for &p in from {
        best = best.max(point_to_polygon2(p, to).0);
    }
    best
}

/// Distance and nearest point from `x` to a ccw polygon (possibly a
/// segment or a single point).
fn point_to_polygon2(x: [f64; 2], poly: &[[f64; 2]]) -> (f64, [f64; 2]) {
    if poly.len() == 1 {
        let d = ((x[0] - poly[0][0]).powi(2) + (x[1] - poly[0][1]).powi(2)).sqrt();
        return (d, poly[0]);
    }
    if poly.len() == 2 {
        return point_to_segment2(x, poly[0], poly[1]);
    }
    let mut inside = true;
    let mut best = (f64::INFINITY, x);
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
        let cross = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
        if cross < 0.0 {
            inside = false;
        }
        let cand = point_to_segment2(x, a, b);
        if cand.0 < best.0 {
            best = cand;
        }
    }
    if inside {
        (0.0, x)
    } else {
        best
    }
}

fn point_to_segment2(x: [f64; 2], a: [f64; 2], b: [f64; 2]) -> (f64, [f64; 2]) {
    let dx = b[0] - a[0];
    let dy = b[1] - a[1];
    let len2 = dx * dx + dy * dy;
    let t = if len2 <= tol::GEOM * tol::GEOM {
        0.0
    } else {
        (((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    let proj = [a[0] + t * dx, a[1] + t * dy];
    let d = ((x[0] - proj[0]).powi(2) + (x[1] - proj[1]).powi(2)).sqrt();
    (d, proj)
}

/// Dimension-class membership tag: bodies with dimension at most, at
/// least, or exactly `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    AtMostJ,
    AtLeastJ,
    ExactlyJ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BodyFamilyTag {
    pub kind: FamilyKind,
    pub j: usize,
}

impl BodyFamilyTag {
    pub fn new(kind: FamilyKind, j: usize, dim_ambient: usize) -> Result<BodyFamilyTag> {
        if j > dim_ambient {
            return Err(Error::ParameterOutOfRange {
                name: "j",
                value: j as f64,
                lo: 0.0,
                hi: dim_ambient as f64,
            });
        }
        Ok(BodyFamilyTag { kind, j })
    }

    pub fn contains(&self, body: &ConvexBody) -> bool {
        let d = body.dimension();
        match self.kind {
            FamilyKind::AtMostJ => d <= self.j,
            FamilyKind::AtLeastJ => d >= self.j,
            FamilyKind::ExactlyJ => d == self.j,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point;

    fn square01() -> ConvexBody {
        ConvexBody::from_coords(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn canonicalize_removes_interior_point() {
        let b = ConvexBody::from_coords(&[
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 1.0],
            vec![0.5, 0.5],
        ])
        .unwrap();
        assert_eq!(b.vertices().len(), 4);
    }

    #[test]
    fn canonicalize_removes_collinear_midpoint() {
        let b = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![0.5, 0.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(b.vertices().len(), 2);
        assert_eq!(b.vertices()[0], point(&[0.0, 0.0]));
        assert_eq!(b.vertices()[1], point(&[1.0, 0.0]));
    }

    #[test]
    fn canonicalize_removes_duplicates() {
        let b = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(b.vertices().len(), 2);
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let b = square01();
        let again = ConvexBody::canonicalize(b.vertices()).unwrap();
        assert_eq!(b.vertices(), again.vertices());
    }

    #[test]
    fn canonicalize_rejects_empty_and_mixed_dims() {
        assert!(matches!(
            ConvexBody::canonicalize(&[]),
            Err(Error::EmptyInput)
        ));
        let mixed = [point(&[0.0, 0.0]), point(&[1.0])];
        assert!(matches!(
            ConvexBody::canonicalize(&mixed),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn dimension_of_singleton_segment_triangle() {
        assert_eq!(ConvexBody::singleton(point(&[3.0, 4.0])).dimension(), 0);
        let seg = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(seg.dimension(), 1);
        let tri =
            ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(tri.dimension(), 2);
    }

    #[test]
    fn support_on_square() {
        let (h, w) = square01().support(&point(&[1.0, 0.0])).unwrap();
        assert_eq!(h, 1.0);
        assert_eq!(w, point(&[1.0, 0.0]));
    }

    #[test]
    fn support_tie_break_is_lexicographic() {
        let tri =
            ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let d = point(&[1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt()]);
        let (h, w) = tri.support(&d).unwrap();
        assert!((h - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(w, point(&[0.0, 1.0]));
    }

    #[test]
    fn support_width_nonnegative() {
        let tri =
            ConvexBody::from_coords(&[vec![0.2, 0.1], vec![1.0, 0.4], vec![0.3, 1.0]]).unwrap();
        let d = point(&[0.6, -0.8]);
        let (hp, _) = tri.support(&d).unwrap();
        let (hm, _) = tri.support(&(-&d)).unwrap();
        assert!(hp + hm >= 0.0);
    }

    #[test]
    fn support_rejects_zero_direction() {
        assert!(matches!(
            square01().support(&point(&[0.0, 0.0])),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn point_distance_outside_edge_interior_corner() {
        let sq = square01();
        let (d, p) = sq.point_distance(&point(&[2.0, 0.0])).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!((p - point(&[1.0, 0.0])).norm() < 1e-12);

        let (d, p) = sq.point_distance(&point(&[0.5, 0.5])).unwrap();
        assert_eq!(d, 0.0);
        assert_eq!(p, point(&[0.5, 0.5]));

        let (d, p) = sq.point_distance(&point(&[2.0, 2.0])).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        assert!((p - point(&[1.0, 1.0])).norm() < 1e-12);
    }

    #[test]
    fn point_distance_matches_projection_in_3d() {
        let tet = ConvexBody::from_coords(&[
            vec![0.0, 0.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        let (d, p) = tet.point_distance(&point(&[1.0, 1.0, 1.0])).unwrap();
        assert!((d - 2.0 / 3f64.sqrt()).abs() < 1e-10);
        assert!((p - point(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0])).norm() < 1e-9);
    }

    #[test]
    fn hausdorff_identity_and_symmetry() {
        let sq = square01();
        assert_eq!(hausdorff(&sq, &sq).unwrap(), 0.0);
        let tri =
            ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let ab = hausdorff(&sq, &tri).unwrap();
        let ba = hausdorff(&tri, &sq).unwrap();
        assert_eq!(ab, ba);
    }

    // Oracle: dense boundary sampling of both squares; the sampled
    // max-min distance must agree with the exact vertex-based value.
    #[test]
    fn hausdorff_unit_square_vs_double_square() {
        let a = square01();
        let b = ConvexBody::from_coords(&[
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 2.0],
            vec![2.0, 2.0],
        ])
        .unwrap();
        let exact = hausdorff(&a, &b).unwrap();
        assert!((exact - 2f64.sqrt()).abs() < 1e-12);

        let sample = |body: &ConvexBody| -> Vec<Point> {
            let poly = body.ccw_coords2();
            let mut pts = Vec::new();
            for k in 0..poly.len() {
                let a = poly[k];
                let b = poly[(k + 1) % poly.len()];
                for s in 0..200 {
                    let t = s as f64 / 200.0;
                    pts.push(point(&[
                        a[0] + t * (b[0] - a[0]),
                        a[1] + t * (b[1] - a[1]),
                    ]));
                }
            }
            pts
        };
        let sa = sample(&a);
        let sb = sample(&b);
        let directed = |from: &[Point], to: &ConvexBody| -> f64 {
            from.iter()
                .map(|p| to.point_distance(p).unwrap().0)
                .fold(0.0, f64::max)
        };
        let oracle = directed(&sa, &b).max(directed(&sb, &a));
        assert!((oracle - exact).abs() < 0.02);
    }

    #[test]
    fn hausdorff_singleton_vs_segment() {
        let s = ConvexBody::singleton(point(&[0.0, 0.0]));
        let seg = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        assert!((hausdorff(&s, &seg).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn minkowski_endpoints_and_self() {
        let a = square01();
        let b = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(minkowski_combination(&a, &b, 0.0)
            .unwrap()
            .approx_eq(&a, 1e-12));
        assert!(minkowski_combination(&a, &b, 1.0)
            .unwrap()
            .approx_eq(&b, 1e-12));
        for t in [0.25, 0.5, 0.9] {
            assert!(minkowski_combination(&a, &a, t)
                .unwrap()
                .approx_eq(&a, 1e-12));
        }
        assert!(matches!(
            minkowski_combination(&a, &b, 1.5),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(ConvexBody::singleton(point(&[5.0, -2.0])).diameter(), 0.0);
        assert!((square01().diameter() - 2f64.sqrt()).abs() < 1e-15);
        let seg = ConvexBody::from_coords(&[vec![1.0, 2.0], vec![4.0, 6.0]]).unwrap();
        assert!((seg.diameter() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn negate_and_scale() {
        let s = ConvexBody::singleton(point(&[1.5, -2.0]));
        assert_eq!(s.negate().vertices()[0], point(&[-1.5, 2.0]));

        let doubled = square01().scale(2.0).unwrap();
        let expected = ConvexBody::from_coords(&[
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![0.0, 2.0],
            vec![2.0, 2.0],
        ])
        .unwrap();
        assert!(doubled.approx_eq(&expected, 1e-12));

        let a = ConvexBody::from_coords(&[vec![0.3, 0.1], vec![1.0, 0.2], vec![0.4, 0.9]]).unwrap();
        assert!(a.negate().negate().approx_eq(&a, 1e-15));
        assert!(matches!(square01().scale(0.0), Err(Error::NonpositiveScale(_))));
    }

    #[test]
    fn family_tags_track_dimension() {
        let seg = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let at_most_1 = BodyFamilyTag::new(FamilyKind::AtMostJ, 1, 2).unwrap();
        let at_least_2 = BodyFamilyTag::new(FamilyKind::AtLeastJ, 2, 2).unwrap();
        let exactly_1 = BodyFamilyTag::new(FamilyKind::ExactlyJ, 1, 2).unwrap();
        assert!(at_most_1.contains(&seg));
        assert!(!at_least_2.contains(&seg));
        assert!(exactly_1.contains(&seg));
        assert!(BodyFamilyTag::new(FamilyKind::AtMostJ, 3, 2).is_err());
    }
}
