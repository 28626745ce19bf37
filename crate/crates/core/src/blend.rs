//! Equivariant blend map on anchored scenarios.
//!
//! A scenario prescribes target values y_i at anchor bodies K_i. The blend
//! ψ(L) = h(φ(L), f(q(L)), λ(L)) interpolates between a base selector φ and
//! the orbit map f that transports y_i along the group element aligning L
//! with K_i, weighted by an invariant bump λ supported near each orbit.
//! Supported groups: E(n) and Sim(n), n = 2 with a fine rotation search and
//! n = 3 with a coarse-to-fine Euler-angle search.

use crate::body::{self, ConvexBody};
use crate::error::{Error, Result};
use crate::minnorm;
use crate::selectors::{self, SelectorId};
use crate::symmetry;
use crate::tol;
use crate::transform::{AffineTransform, GroupTag};
use crate::Point;
use nalgebra::DMatrix;

/// Target value attached to an anchor: a marked point or a whole body.
#[derive(Debug, Clone)]
pub enum Target {
    Point(Point),
    Body(ConvexBody),
}

#[derive(Debug, Clone)]
pub struct Pair {
    pub anchor: ConvexBody,
    pub target: Target,
    /// Bump support radius in orbit distance; validate auto-fills it.
    pub delta: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub group: GroupTag,
    pub base_selector: SelectorId,
    pub pairs: Vec<Pair>,
}

impl Scenario {
    pub fn points(
        group: GroupTag,
        base_selector: SelectorId,
        pairs: Vec<(ConvexBody, Point)>,
    ) -> Scenario {
        Scenario {
            group,
            base_selector,
            pairs: pairs
                .into_iter()
                .map(|(anchor, y)| Pair {
                    anchor,
                    target: Target::Point(y),
                    delta: None,
                })
                .collect(),
        }
    }

    pub fn bodies(
        group: GroupTag,
        pairs: Vec<(ConvexBody, ConvexBody)>,
    ) -> Scenario {
        Scenario {
            group,
            // unused by blend_body (the base map is the identity), but the
            // field documents the intent and must still pass validation
            base_selector: SelectorId::Steiner,
            pairs: pairs
                .into_iter()
                .map(|(anchor, y)| Pair {
                    anchor,
                    target: Target::Body(y),
                    delta: None,
                })
                .collect(),
        }
    }
}

/// Result of the orbit retraction: the aligning element and what is left
/// of the Hausdorff distance after applying it.
#[derive(Debug, Clone)]
pub struct Alignment {
    pub transform: AffineTransform,
    pub residual: f64,
}

/// Check both scenario invariants and auto-fill missing bump radii.
///
/// Stabilizer containment G_K ≤ G_y is checked element-by-element; orbit
/// disjointness via pairwise orbit distance. Auto δ_i is one third of the
/// smallest orbit distance to another anchor, which keeps bump supports
/// disjoint; a lone anchor gets one third of its own orbit-metric radius.
pub fn validate(scenario: &Scenario) -> Result<Scenario> {
    if scenario.pairs.is_empty() {
        return Err(Error::EmptyScenario);
    }
    if !matches!(scenario.group, GroupTag::Euclidean | GroupTag::Sim) {
        return Err(Error::UnsupportedGroup(format!(
            "blend supports euclidean and sim, got {}",
            scenario.group
        )));
    }
    if !scenario
        .base_selector
        .declared_group()
        .contains(scenario.group)
    {
        return Err(Error::UnsupportedGroup(format!(
            "base selector {} is only {}-equivariant",
            scenario.base_selector,
            scenario.base_selector.declared_group()
        )));
    }
    let n = scenario.pairs[0].anchor.dim_ambient();
    let mut body_targets = 0usize;
    for (i, pair) in scenario.pairs.iter().enumerate() {
        if pair.anchor.dim_ambient() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: pair.anchor.dim_ambient(),
            });
        }
        let stab = symmetry::stabilizer(&pair.anchor, scenario.group)?;
        let displacement = match &pair.target {
            Target::Point(y) => {
                if y.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: y.len(),
                    });
                }
                stab.elements
                    .iter()
                    .map(|g| (g.apply_point(y) - y).norm())
                    .fold(0.0f64, f64::max)
            }
            Target::Body(y) => {
                body_targets += 1;
                let mut worst = 0.0f64;
                for g in &stab.elements {
                    worst = worst.max(body::hausdorff(&g.apply(y)?, y)?);
                }
                worst
            }
        };
        if displacement > tol::FIXED_POINT {
            return Err(Error::StabilizerViolation(i, displacement));
        }
    }
    if body_targets != 0 && body_targets != scenario.pairs.len() {
        return Err(Error::UnsupportedBody(
            "scenario mixes point and body targets".into(),
        ));
    }

    let m = scenario.pairs.len();
    let mut pairwise = vec![vec![f64::INFINITY; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let d = orbit_distance(
                &scenario.pairs[i].anchor,
                &scenario.pairs[j].anchor,
                scenario.group,
            )?;
            if d <= tol::ORBIT_SEPARATION {
                return Err(Error::OrbitCollision(i, j, d));
            }
            pairwise[i][j] = d;
            pairwise[j][i] = d;
        }
    }

    let mut out = scenario.clone();
    for i in 0..m {
        let nearest = (0..m)
            .filter(|&j| j != i)
            .map(|j| pairwise[i][j])
            .fold(f64::INFINITY, f64::min);
        let auto = if nearest.is_finite() {
            nearest / 3.0
        } else {
            // lone anchor: a third of its circumradius in the orbit metric
            match scenario.group {
                GroupTag::Sim => 1.0 / 3.0,
                _ => selectors::circumball(&scenario.pairs[i].anchor).1 / 3.0,
            }
        };
        match out.pairs[i].delta {
            None => out.pairs[i].delta = Some(auto),
            Some(d) => {
                if !(d > 0.0) {
                    return Err(Error::ParameterOutOfRange {
                        name: "bump_radius",
                        value: d,
                        lo: f64::MIN_POSITIVE,
                        hi: f64::INFINITY,
                    });
                }
            }
        }
    }
    // user-supplied radii must keep supports disjoint
    for i in 0..m {
        for j in (i + 1)..m {
            let di = out.pairs[i].delta.unwrap();
            let dj = out.pairs[j].delta.unwrap();
            if di + dj > pairwise[i][j] {
                return Err(Error::ParameterOutOfRange {
                    name: "bump_radius",
                    value: di + dj,
                    lo: 0.0,
                    hi: pairwise[i][j],
                });
            }
        }
    }
    Ok(out)
}

/// 2D rotation-search state: the probe polygon and the anchor polygon,
/// both centered on their Steiner points, anchor pre-scaled.
struct Search2 {
    l0: Vec<[f64; 2]>,
    k0: Vec<[f64; 2]>,
}

impl Search2 {
    fn eval(&self, theta: f64, buf: &mut Vec<[f64; 2]>) -> f64 {
        let (s, c) = theta.sin_cos();
        buf.clear();
        buf.extend(
            self.k0
                .iter()
                .map(|p| [c * p[0] - s * p[1], s * p[0] + c * p[1]]),
        );
        body::directed2(&self.l0, buf).max(body::directed2(buf, &self.l0))
    }
}

fn golden_refine<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol::ROTATION_BRACKET {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (a + b);
    let fm = f(mid);
    if f1 < fm && f1 < f2 {
        (x1, f1)
    } else if f2 < fm {
        (x2, f2)
    } else {
        (mid, fm)
    }
}

fn rotation2(theta: f64, reflect: bool) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    if reflect {
        // R(theta) * diag(1,-1)
        DMatrix::from_row_slice(2, 2, &[c, s, s, -c])
    } else {
        DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
    }
}

fn align2(l: &ConvexBody, k: &ConvexBody, scale: f64) -> Result<(f64, bool, f64)> {
    let s_l = selectors::steiner(l)?;
    let s_k = selectors::steiner(k)?;
    let l0: Vec<[f64; 2]> = l
        .ccw_coords2()
        .into_iter()
        .map(|p| [p[0] - s_l[0], p[1] - s_l[1]])
        .collect();
    let base: Vec<[f64; 2]> = k
        .ccw_coords2()
        .into_iter()
        .map(|p| [scale * (p[0] - s_k[0]), scale * (p[1] - s_k[1])])
        .collect();

    let mut best: Option<(f64, bool, f64)> = None;
    let mut buf = Vec::new();
    for reflect in [false, true] {
        let mut k0 = base.clone();
        if reflect {
            for p in &mut k0 {
                p[1] = -p[1];
            }
            k0.reverse(); // restore ccw order
        }
        let search = Search2 { l0: l0.clone(), k0 };
        let step = std::f64::consts::TAU / tol::ROTATION_STARTS as f64;
        let mut grid_best = (0.0f64, f64::INFINITY);
        for j in 0..tol::ROTATION_STARTS {
            let theta = j as f64 * step;
            let d = search.eval(theta, &mut buf);
            if d < grid_best.1 {
                grid_best = (theta, d);
            }
        }
        let (theta, value) = golden_refine(
            |t| search.eval(t, &mut buf),
            grid_best.0 - step,
            grid_best.0 + step,
        );
        if best.map_or(true, |(_, _, v)| value < v) {
            best = Some((theta, reflect, value));
        }
    }
    Ok(best.expect("two orientation components searched"))
}

/// Hausdorff distance between raw vertex sets (3D path; exact via
/// minimum-norm-point projections).
fn hausdorff_verts(a: &[Point], b: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for v in a {
        best = best.max(minnorm::project_onto_hull(v, b).0);
    }
    for v in b {
        best = best.max(minnorm::project_onto_hull(v, a).0);
    }
    best
}

fn euler_zyz(alpha: f64, beta: f64, gamma: f64, reflect: bool) -> DMatrix<f64> {
    let rz = |t: f64| {
        DMatrix::from_row_slice(
            3,
            3,
            &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
        )
    };
    let ry = |t: f64| {
        DMatrix::from_row_slice(
            3,
            3,
            &[t.cos(), 0.0, t.sin(), 0.0, 1.0, 0.0, -t.sin(), 0.0, t.cos()],
        )
    };
    let mut m = rz(alpha) * ry(beta) * rz(gamma);
    if reflect {
        for r in 0..3 {
            m[(r, 2)] = -m[(r, 2)];
        }
    }
    m
}

fn align3(l: &ConvexBody, k: &ConvexBody, scale: f64) -> Result<(DMatrix<f64>, f64, Point, Point)> {
    use std::f64::consts::{PI, TAU};
    let s_l = selectors::steiner(l)?;
    let s_k = selectors::steiner(k)?;
    let l0: Vec<Point> = l.vertices().iter().map(|v| v - &s_l).collect();
    let k0: Vec<Point> = k.vertices().iter().map(|v| (v - &s_k) * scale).collect();

    let eval = |m: &DMatrix<f64>| -> f64 {
        let moved: Vec<Point> = k0.iter().map(|v| m * v).collect();
        hausdorff_verts(&l0, &moved)
    };

    let mut best: Option<(f64, f64, f64, bool, f64)> = None;
    for reflect in [false, true] {
        // 16 x 8 x 16 coarse grid, then four shrinking 3^3 refinements
        let (na, nb, ng) = (16usize, 8usize, 16usize);
        let mut cur = (0.0, 0.0, 0.0, f64::INFINITY);
        for ia in 0..na {
            let a = ia as f64 / na as f64 * TAU;
            for ib in 0..nb {
                let b = (ib as f64 + 0.5) / nb as f64 * PI;
                for ig in 0..ng {
                    let g = ig as f64 / ng as f64 * TAU;
                    let d = eval(&euler_zyz(a, b, g, reflect));
                    if d < cur.3 {
                        cur = (a, b, g, d);
                    }
                }
            }
        }
        let mut h = (TAU / na as f64, PI / nb as f64, TAU / ng as f64);
        for _ in 0..12 {
            let center = cur;
            for da in [-1.0, 0.0, 1.0] {
                for db in [-1.0, 0.0, 1.0] {
                    for dg in [-1.0, 0.0, 1.0] {
                        let (a, b, g) = (
                            center.0 + da * h.0 * 0.5,
                            center.1 + db * h.1 * 0.5,
                            center.2 + dg * h.2 * 0.5,
                        );
                        let d = eval(&euler_zyz(a, b, g, reflect));
                        if d < cur.3 {
                            cur = (a, b, g, d);
                        }
                    }
                }
            }
            h = (h.0 * 0.5, h.1 * 0.5, h.2 * 0.5);
        }
        if best.as_ref().map_or(true, |b| cur.3 < b.4) {
            best = Some((cur.0, cur.1, cur.2, reflect, cur.3));
        }
    }
    let (a, b, g, reflect, value) = best.expect("orientation components searched");
    Ok((euler_zyz(a, b, g, reflect) * scale, value, s_l, s_k))
}

/// Best group element carrying K onto L: translation from Steiner points,
/// scale (Sim only) from circumradius ratio, rotation from a grid search
/// refined by golden section (2D) or shrinking Euler boxes (3D).
pub fn orbit_align(l: &ConvexBody, k: &ConvexBody, group: GroupTag) -> Result<Alignment> {
    if !matches!(group, GroupTag::Euclidean | GroupTag::Sim) {
        return Err(Error::UnsupportedGroup(format!(
            "orbit alignment supports euclidean and sim, got {group}"
        )));
    }
    let n = l.dim_ambient();
    if k.dim_ambient() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: k.dim_ambient(),
        });
    }
    if l.dimension() == 0 || k.dimension() == 0 {
        return Err(Error::DegenerateBody(
            "orbit alignment needs dimension at least one".into(),
        ));
    }
    let scale = if group == GroupTag::Sim {
        selectors::circumball(l).1 / selectors::circumball(k).1
    } else {
        1.0
    };
    match n {
        2 => {
            let (theta, reflect, residual) = align2(l, k, scale)?;
            let s_l = selectors::steiner(l)?;
            let s_k = selectors::steiner(k)?;
            let mat = rotation2(theta, reflect) * scale;
            let trans = &s_l - &mat * &s_k;
            Ok(Alignment {
                transform: AffineTransform::new(mat, trans)?,
                residual,
            })
        }
        3 => {
            let (mat, residual, s_l, s_k) = align3(l, k, scale)?;
            let trans = &s_l - &mat * &s_k;
            Ok(Alignment {
                transform: AffineTransform::new(mat, trans)?,
                residual,
            })
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

/// Invariant distance between the orbits of L and K. For E(n) this is the
/// alignment residual; for Sim(n) the residual after rescaling both bodies
/// to circumradius one, which divides out the probe's own size.
pub fn orbit_distance(l: &ConvexBody, k: &ConvexBody, group: GroupTag) -> Result<f64> {
    let alignment = orbit_align(l, k, group)?;
    match group {
        GroupTag::Sim => Ok(alignment.residual / selectors::circumball(l).1),
        _ => Ok(alignment.residual),
    }
}

fn delta_of(scenario: &Scenario, i: usize) -> Result<f64> {
    scenario.pairs[i].delta.ok_or(Error::ParameterOutOfRange {
        name: "bump_radius",
        value: f64::NAN,
        lo: f64::MIN_POSITIVE,
        hi: f64::INFINITY,
    })
}

/// Invariant bump λ_i(L) = clamp(1 − orbit_distance(L, K_i)/δ_i, 0, 1).
pub fn bump(l: &ConvexBody, scenario: &Scenario, i: usize) -> Result<f64> {
    let d = orbit_distance(l, &scenario.pairs[i].anchor, scenario.group)?;
    let delta = delta_of(scenario, i)?;
    Ok((1.0 - d / delta).clamp(0.0, 1.0))
}

/// Orbit map f̃_i(L) = g*·y_i with g* the aligning element. Well defined
/// on the bump support because the stabilizer of K_i fixes y_i.
pub fn orbit_map_f(l: &ConvexBody, scenario: &Scenario, i: usize) -> Result<Point> {
    if bump(l, scenario, i)? <= 0.0 {
        return Err(Error::OutsideNeighborhood(i));
    }
    let alignment = orbit_align(l, &scenario.pairs[i].anchor, scenario.group)?;
    match &scenario.pairs[i].target {
        Target::Point(y) => Ok(alignment.transform.apply_point(y)),
        Target::Body(_) => Err(Error::UnsupportedBody(
            "orbit_map_f needs a point target; use blend_body".into(),
        )),
    }
}

/// Straight-line equiconnection h(a, b, t) = (1−t)a + tb.
pub fn connect(a: &Point, b: &Point, t: f64) -> Result<Point> {
    if !(0.0..=1.0).contains(&t) || t.is_nan() {
        return Err(Error::ParameterOutOfRange {
            name: "t",
            value: t,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(a * (1.0 - t) + b * t)
}

/// Bump values per pair, enforcing the disjoint-support guarantee.
fn active_bumps(l: &ConvexBody, scenario: &Scenario) -> Result<Vec<(usize, f64)>> {
    let mut active = Vec::new();
    for i in 0..scenario.pairs.len() {
        let lam = bump(l, scenario, i)?;
        if lam > 0.0 {
            active.push((i, lam));
        }
    }
    if active.len() > 1 {
        return Err(Error::AmbiguousSupport(active[0].0, active[1].0));
    }
    Ok(active)
}

fn ensure_validated(scenario: &Scenario) -> Result<Scenario> {
    if scenario.pairs.iter().all(|p| p.delta.is_some()) {
        Ok(scenario.clone())
    } else {
        validate(scenario)
    }
}

/// The blend ψ(L): base selector away from the anchor orbits, the orbit
/// map on them, connected by the invariant bump in between.
pub fn blend(l: &ConvexBody, scenario: &Scenario) -> Result<Point> {
    let sc = ensure_validated(scenario)?;
    let phi = selectors::evaluate(sc.base_selector, l)?;
    match active_bumps(l, &sc)?.first() {
        None => Ok(phi),
        Some(&(i, lam)) => {
            let f = orbit_map_f(l, &sc, i)?;
            connect(&phi, &f, lam)
        }
    }
}

/// Body-valued blend: identity base map, Minkowski equiconnection.
pub fn blend_body(l: &ConvexBody, scenario: &Scenario) -> Result<ConvexBody> {
    let sc = ensure_validated(scenario)?;
    match active_bumps(l, &sc)?.first() {
        None => Ok(l.clone()),
        Some(&(i, lam)) => {
            let Target::Body(y) = &sc.pairs[i].target else {
                return Err(Error::UnsupportedBody(
                    "blend_body needs body targets; use blend".into(),
                ));
            };
            let alignment = orbit_align(l, &sc.pairs[i].anchor, sc.group)?;
            let moved = alignment.transform.apply(y)?;
            body::minkowski_combination(l, &moved, lam)
        }
    }
}
