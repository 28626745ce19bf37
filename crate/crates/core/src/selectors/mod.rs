//! Invariant-point selectors: centroid, Chebyshev center, circumball
//! center, Steiner point, and the centers of the Löwner and John
//! ellipsoids. Each is a single-valued map from bodies to points that
//! commutes with its declared transformation group.

mod ellipsoid;
mod steiner;

pub use ellipsoid::{john, lowner, Ellipsoid};
pub use steiner::{steiner, steiner_with_error};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::ConvexBody;
use crate::hull;
use crate::transform::GroupTag;
use crate::{Error, Point, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectorId {
    Centroid,
    Chebyshev,
    Circumcenter,
    Steiner,
    LownerCenter,
    JohnCenter,
}

impl SelectorId {
    pub const ALL: [SelectorId; 6] = [
        SelectorId::Centroid,
        SelectorId::Chebyshev,
        SelectorId::Circumcenter,
        SelectorId::Steiner,
        SelectorId::LownerCenter,
        SelectorId::JohnCenter,
    ];

    /// Largest group the selector is equivariant under.
    pub fn declared_group(&self) -> GroupTag {
        match self {
            SelectorId::Centroid | SelectorId::LownerCenter | SelectorId::JohnCenter => {
                GroupTag::Aff
            }
            SelectorId::Chebyshev | SelectorId::Circumcenter | SelectorId::Steiner => GroupTag::Sim,
        }
    }
}

impl std::fmt::Display for SelectorId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SelectorId::Centroid => "centroid",
            SelectorId::Chebyshev => "chebyshev",
            SelectorId::Circumcenter => "circumcenter",
            SelectorId::Steiner => "steiner",
            SelectorId::LownerCenter => "lowner_center",
            SelectorId::JohnCenter => "john_center",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for SelectorId {
    type Err = Error;
    fn from_str(s: &str) -> Result<SelectorId> {
        match s.to_ascii_lowercase().as_str() {
            "centroid" => Ok(SelectorId::Centroid),
            "chebyshev" => Ok(SelectorId::Chebyshev),
            "circumcenter" | "circumball" => Ok(SelectorId::Circumcenter),
            "steiner" => Ok(SelectorId::Steiner),
            "lowner_center" | "lowner" => Ok(SelectorId::LownerCenter),
            "john_center" | "john" => Ok(SelectorId::JohnCenter),
            other => Err(Error::UnsupportedBody(format!("unknown selector {other}"))),
        }
    }
}

/// Dispatch to the selector, reducing ball/ellipsoid outputs to the center.
pub fn evaluate(selector: SelectorId, body: &ConvexBody) -> Result<Point> {
    match selector {
        SelectorId::Centroid => Ok(centroid(body)),
        SelectorId::Chebyshev => chebyshev(body).map(|(c, _)| c),
        SelectorId::Circumcenter => Ok(circumball(body).0),
        SelectorId::Steiner => steiner(body),
        SelectorId::LownerCenter => lowner(body).map(|e| e.center),
        SelectorId::JohnCenter => john(body).map(|e| e.center),
    }
}

/// Irredundant facet constraints ⟨a_i, x⟩ ≤ b_i of a full-dimensional body.
#[derive(Debug, Clone)]
pub struct HalfspaceRep {
    pub halfspaces: Vec<(Point, f64)>,
}

pub fn to_halfspaces(body: &ConvexBody) -> Result<HalfspaceRep> {
    let halfspaces = body
        .facets()?
        .into_iter()
        .map(|f| (f.normal, f.offset))
        .collect();
    Ok(HalfspaceRep { halfspaces })
}

/// Barycenter with respect to intrinsic (affine-hull) volume, by simplicial
/// decomposition inside hull coordinates. Dimension 0 returns the vertex.
pub fn centroid(body: &ConvexBody) -> Point {
    let verts = body.vertices();
    let (k, basis) = hull::affine_rank_basis(verts);
    if k == 0 {
        return verts[0].clone();
    }
    let origin = &verts[0];
    let coords: Vec<Point> = verts
        .iter()
        .map(|v| Point::from_fn(k, |j, _| basis[j].dot(&(v - origin))))
        .collect();
    let local = centroid_full_dim(&coords, k);
    let mut out = origin.clone();
    for j in 0..k {
        out += &basis[j] * local[j];
    }
    out
}

fn centroid_full_dim(pts: &[Point], k: usize) -> Point {
    match k {
        1 => {
            let mut lo = pts[0][0];
            let mut hi = pts[0][0];
            for p in pts {
                lo = lo.min(p[0]);
                hi = hi.max(p[0]);
            }
            Point::from_column_slice(&[(lo + hi) / 2.0])
        }
        2 => {
            let order = hull::chain2(pts);
            let p0 = &pts[order[0]];
            let mut area = 0.0;
            let mut acc = Point::zeros(2);
            for w in 1..order.len() - 1 {
                let a = &pts[order[w]];
                let b = &pts[order[w + 1]];
                let da = a - p0;
                let db = b - p0;
                let tri = (da[0] * db[1] - da[1] * db[0]) / 2.0;
                area += tri;
                acc += (p0 + a + b) * (tri / 3.0);
            }
            acc / area
        }
        _ => {
            // Cone decomposition from an interior apex over facet fans.
            let apex = {
                let mut m = Point::zeros(k);
                for p in pts {
                    m += p;
                }
                m / pts.len() as f64
            };
            let mut volume = 0.0;
            let mut acc = Point::zeros(k);
            for facet in hull::facets(pts) {
                let ring = order_facet_ring(pts, &facet.vertices, &facet.normal);
                let f0 = &pts[ring[0]];
                for w in 1..ring.len() - 1 {
                    let a = &pts[ring[w]];
                    let b = &pts[ring[w + 1]];
                    let m = nalgebra::DMatrix::from_columns(&[f0 - &apex, a - &apex, b - &apex]);
                    let vol = m.determinant().abs() / 6.0;
                    volume += vol;
                    acc += (&apex + f0 + a + b) * (vol / 4.0);
                }
            }
            acc / volume
        }
    }
}

/// Vertices of a convex facet in cyclic order around its plane.
fn order_facet_ring(pts: &[Point], members: &[usize], normal: &Point) -> Vec<usize> {
    let k = normal.len();
    let mut t1 = Point::zeros(k);
    for j in 0..k {
        let mut e = Point::zeros(k);
        e[j] = 1.0;
        let cand = &e - normal * normal[j];
        if cand.norm() > 0.1 {
            t1 = cand.normalize();
            break;
        }
    }
    let t2 = cross3(normal, &t1);
    let center = {
        let mut m = Point::zeros(k);
        for &i in members {
            m += &pts[i];
        }
        m / members.len() as f64
    };
    let mut ring: Vec<usize> = members.to_vec();
    ring.sort_by(|&a, &b| {
        let pa = &pts[a] - &center;
        let pb = &pts[b] - &center;
        let aa = pa.dot(&t2).atan2(pa.dot(&t1));
        let ab = pb.dot(&t2).atan2(pb.dot(&t1));
        aa.total_cmp(&ab)
    });
    ring
}

fn cross3(a: &Point, b: &Point) -> Point {
    Point::from_column_slice(&[
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

/// Minimal enclosing ball via randomized incremental recursion over the
/// vertices (fixed shuffle seed, so the result is deterministic; the ball
/// itself is unique regardless of order).
pub fn circumball(body: &ConvexBody) -> (Point, f64) {
    let n = body.dim_ambient();
    let mut pts: Vec<Point> = body.vertices().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_BA11);
    for i in (1..pts.len()).rev() {
        let j = rng.random_range(0..=i);
        pts.swap(i, j);
    }
    let mut support: Vec<Point> = Vec::with_capacity(n + 1);
    let (c, r) = welzl(&pts, pts.len(), &mut support, n);
    debug_assert!(body
        .vertices()
        .iter()
        .all(|v| (v - &c).norm() <= r + 1e-9 * (1.0 + r)));
    (c, r)
}

fn welzl(pts: &[Point], m: usize, support: &mut Vec<Point>, n: usize) -> (Point, f64) {
    if m == 0 || support.len() == n + 1 {
        return ball_of_support(support, n);
    }
    let (c, r) = welzl(pts, m - 1, support, n);
    let p = &pts[m - 1];
    if (p - &c).norm() <= r + 1e-11 * (1.0 + r) {
        return (c, r);
    }
    support.push(p.clone());
    let ball = welzl(pts, m - 1, support, n);
    support.pop();
    ball
}

/// Smallest ball having every support point on its boundary: circumsphere
/// within the affine hull of the support set.
fn ball_of_support(support: &[Point], n: usize) -> (Point, f64) {
    match support.len() {
        0 => (Point::zeros(n), -1.0),
        1 => (support[0].clone(), 0.0),
        _ => {
            let p0 = &support[0];
            let k = support.len() - 1;
            let mut gram = nalgebra::DMatrix::zeros(k, k);
            let mut rhs = Point::zeros(k);
            let diffs: Vec<Point> = support[1..].iter().map(|p| p - p0).collect();
            for i in 0..k {
                for j in 0..k {
                    gram[(i, j)] = 2.0 * diffs[i].dot(&diffs[j]);
                }
                rhs[i] = diffs[i].norm_squared();
            }
            let y = gram
                .svd(true, true)
                .solve(&rhs, 1e-12)
                .unwrap_or_else(|_| Point::zeros(k));
            let mut c = p0.clone();
            for i in 0..k {
                c += &diffs[i] * y[i];
            }
            let r = (&c - p0).norm();
            (c, r)
        }
    }
}

/// Center and radius of a largest inscribed ball. The optimal-center set of
/// the underlying linear program can be a face; its barycenter is returned,
/// which keeps the map single-valued and similarity-equivariant.
pub fn chebyshev(body: &ConvexBody) -> Result<(Point, f64)> {
    let n = body.dim_ambient();
    let hs = to_halfspaces(body)?.halfspaces;
    let m = hs.len();

    // Every vertex of the optimal face activates n+1 constraints; enumerate
    // all (n+1)-subsets as candidate bases.
    let mut candidates: Vec<(Point, f64)> = Vec::new();
    let mut subset = vec![0usize; n + 1];
    hull::enumerate_subsets(m, n + 1, &mut subset, 0, 0, &mut |idx| {
        let mut a = nalgebra::DMatrix::zeros(n + 1, n + 1);
        let mut b = Point::zeros(n + 1);
        for (row, &i) in idx.iter().enumerate() {
            for col in 0..n {
                a[(row, col)] = hs[i].0[col];
            }
            a[(row, n)] = 1.0;
            b[row] = hs[i].1;
        }
        let lu = a.lu();
        if let Some(x) = lu.solve(&b) {
            if !x.iter().all(|t| t.is_finite()) {
                return;
            }
            let r = x[n];
            if r < 0.0 {
                return;
            }
            let c = Point::from_fn(n, |j, _| x[j]);
            let feasible = hs
                .iter()
                .all(|(ai, bi)| ai.dot(&c) + r <= bi + 1e-9 * (1.0 + bi.abs()));
            if feasible {
                candidates.push((c, r));
            }
        }
    });
    let r_max = candidates
        .iter()
        .map(|&(_, r)| r)
        .fold(f64::NEG_INFINITY, f64::max);
    if !r_max.is_finite() || r_max <= 0.0 {
        return Err(Error::DegenerateBody(
            "no inscribed ball basis found".into(),
        ));
    }
    let cut = r_max - 1e-9 * (1.0 + r_max);
    let optimal: Vec<Point> = candidates
        .into_iter()
        .filter(|&(_, r)| r >= cut)
        .map(|(c, _)| c)
        .collect();
    let face = ConvexBody::canonicalize(&optimal)?;
    Ok((centroid(&face), r_max))
}
