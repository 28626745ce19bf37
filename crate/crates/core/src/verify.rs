//! Acceptance suite: ten named criteria, each producing a deterministic
//! report row. Identical configurations render byte-identical reports, and
//! the final criterion witnesses exactly that by running the others twice.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blend::{self, Scenario, Target};
use crate::body::{hausdorff, ConvexBody};
use crate::doc::numeral;
use crate::error::{Error, Result};
use crate::selectors::{self, SelectorId};
use crate::symmetry;
use crate::transform::{sample, AffineTransform, GroupTag, SampleBounds};
use crate::{lab, point, shapes, Point, VERSION};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Named tolerance overrides; rows consuming one are flagged OVERRIDE.
    pub overrides: BTreeMap<String, f64>,
    /// Substring filter on criterion names; non-matching rows are skipped.
    pub filter: Option<String>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            overrides: BTreeMap::new(),
            filter: None,
        }
    }
}

impl VerifyConfig {
    fn tolerance(&self, used: &mut bool, name: &str) -> f64 {
        match self.overrides.get(name) {
            Some(v) => {
                *used = true;
                *v
            }
            None => DEFAULT_TOLERANCES
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| *v)
                .expect("tolerance name registered"),
        }
    }

    /// Stable hash of the configuration, printed in the report header.
    pub fn hash(&self) -> u64 {
        let mut canon = format!("seed={}", self.seed);
        for (k, v) in &self.overrides {
            let _ = write!(canon, ";{k}={}", numeral(*v));
        }
        if let Some(f) = &self.filter {
            let _ = write!(canon, ";filter={f}");
        }
        fingerprint(&canon)
    }
}

/// FNV-1a, enough for a config fingerprint in report headers.
pub fn fingerprint(text: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Named tolerances with their defaults; `--tol name=value` overrides one.
pub const DEFAULT_TOLERANCES: [(&str, f64); 15] = [
    ("triangle_formula", 1e-12),
    ("triangle_gap", 1e-9),
    ("triangle_hausdorff", 1.1e-3),
    ("midpoint_fixed", 1e-8),
    ("blend_point", 1e-8),
    ("blend_body", 1e-6),
    ("blend_equivariance", 1e-5),
    ("equivariance", 1e-6),
    ("containment", 1e-6),
    ("properness_interval", 1e-12),
    ("kernel_center", 1e-5),
    ("mvee_center", 1e-6),
    ("metric", 1e-9),
    ("width_tol", 2e-3),
    ("difference_gap", 5e-3),
];

#[derive(Debug, Clone)]
pub struct CriterionRow {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub overridden: bool,
    pub details: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub seed: u64,
    pub config_hash: u64,
    pub rows: Vec<CriterionRow>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    /// Byte-stable report text.
    pub fn render(&self) -> String {
        let mut out = format!(
            "equigeo verify v{VERSION} seed={} config={:016x}\n",
            self.seed, self.config_hash
        );
        out.push_str(&render_rows(&self.rows));
        let passed = self.rows.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{passed}/{} criteria passed", self.rows.len());
        out
    }
}

fn render_rows(rows: &[CriterionRow]) -> String {
    let mut out = String::new();
    for row in rows {
        let verdict = if row.passed { "PASS" } else { "FAIL" };
        let flag = if row.overridden { " OVERRIDE" } else { "" };
        let _ = writeln!(out, "[{verdict}]{flag} {:>2} {}", row.id, row.name);
        for d in &row.details {
            let _ = writeln!(out, "       {d}");
        }
    }
    out
}

struct Outcome {
    passed: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            passed: true,
            details: Vec::new(),
        }
    }

    /// Record a named bound: `value <= limit` must hold.
    fn bound(&mut self, what: &str, value: f64, limit: f64) {
        let ok = value <= limit;
        self.passed &= ok;
        self.details.push(format!(
            "{} {} = {} (limit {})",
            if ok { "ok " } else { "BAD" },
            what,
            numeral(value),
            numeral(limit)
        ));
    }

    fn check(&mut self, what: &str, ok: bool) {
        self.passed &= ok;
        self.details
            .push(format!("{} {}", if ok { "ok " } else { "BAD" }, what));
    }
}

type CriterionFn = fn(&VerifyConfig, &mut bool) -> Result<Outcome>;

const CRITERIA: [(&str, CriterionFn); 9] = [
    ("triangle-numbers", c1_triangle_numbers),
    ("segment-midpoint", c2_segment_midpoint),
    ("blend-scenarios", c3_blend_scenarios),
    ("selector-equivariance", c4_selector_equivariance),
    ("selector-containment", c5_selector_containment),
    ("properness-bounds", c6_properness_bounds),
    ("optimization-kernels", c7_optimization_kernels),
    ("metric-axioms", c8_metric_axioms),
    ("constant-width", c9_constant_width),
];

fn matches_filter(cfg: &VerifyConfig, name: &str) -> bool {
    cfg.filter.as_deref().is_none_or(|f| name.contains(f))
}

fn run_rows(cfg: &VerifyConfig) -> Vec<CriterionRow> {
    let mut rows = Vec::new();
    for (i, (name, f)) in CRITERIA.iter().enumerate() {
        if !matches_filter(cfg, name) {
            continue;
        }
        let mut overridden = false;
        let (passed, details) = match f(cfg, &mut overridden) {
            Ok(outcome) => (outcome.passed, outcome.details),
            Err(e) => (false, vec![format!("BAD error: {e}")]),
        };
        rows.push(CriterionRow {
            id: i + 1,
            name,
            passed,
            overridden,
            details,
        });
    }
    rows
}

/// Runs every criterion matching the filter. The determinism row repeats
/// the whole pass and compares the rendered bytes.
pub fn run_all(cfg: &VerifyConfig) -> VerifySummary {
    let mut rows = run_rows(cfg);
    if matches_filter(cfg, "determinism") {
        let again = run_rows(cfg);
        let first = render_rows(&rows);
        let second = render_rows(&again);
        let passed = first == second;
        rows.push(CriterionRow {
            id: 10,
            name: "determinism",
            passed,
            overridden: false,
            details: vec![format!(
                "{} two passes rendered identically ({} bytes)",
                if passed { "ok " } else { "BAD" },
                first.len()
            )],
        });
    }
    VerifySummary {
        seed: cfg.seed,
        config_hash: cfg.hash(),
        rows,
    }
}

fn c1_triangle_numbers(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_formula = cfg.tolerance(ov, "triangle_formula");
    let tol_gap = cfg.tolerance(ov, "triangle_gap");
    let tol_dh = cfg.tolerance(ov, "triangle_hausdorff");
    let table = lab::triangle_counterexample(1000)?;
    let mut out = Outcome::new();
    let mut worst = 0.0f64;
    for n in [1usize, 10, 100, 1000] {
        worst = worst.max(table.rows[n - 1].formula_error);
    }
    out.bound("centroid error vs (1/(3n), 1/3), n in {1,10,100,1000}", worst, tol_formula);
    out.bound(
        "terminal gap deviation from 1/6",
        (table.terminal_gap - 1.0 / 6.0).abs(),
        tol_gap,
    );
    out.bound(
        "hausdorff(T_1000, I)",
        table.rows[999].hausdorff_to_segment,
        tol_dh,
    );
    Ok(out)
}

fn c2_segment_midpoint(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_fix = cfg.tolerance(ov, "midpoint_fixed");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x0200));
    let mut worst = 0.0f64;
    let mut orders_ok = true;
    for _ in 0..100 {
        let (a, b) = loop {
            let a = point(&[rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)]);
            let b = point(&[rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)]);
            if (&a - &b).norm() >= 0.05 {
                break (a, b);
            }
        };
        let rep = lab::segment_midpoint_demo(&a, &b)?;
        worst = worst.max(rep.deviation);
        orders_ok &= rep.fixed_set.dim() == 0 && rep.stabilizer_order == 4;
    }
    let mut out = Outcome::new();
    out.bound("fixed-set distance to midpoint over 100 segments", worst, tol_fix);
    out.check("every fixed set is a single point (stabilizer order 4)", orders_ok);
    Ok(out)
}

fn tri_scalene(shift: &Point) -> Result<ConvexBody> {
    let pts = [
        point(&[0.0, 0.0]) + shift,
        point(&[1.3, 0.0]) + shift,
        point(&[0.2, 0.9]) + shift,
    ];
    ConvexBody::canonicalize(&pts)
}

fn perturbed(body: &ConvexBody, rng: &mut ChaCha8Rng, radius: f64) -> Result<ConvexBody> {
    let pts: Vec<Point> = body
        .vertices()
        .iter()
        .map(|v| {
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let r = radius * rng.random::<f64>();
            v + point(&[r * angle.cos(), r * angle.sin()])
        })
        .collect();
    ConvexBody::canonicalize(&pts)
}

/// Relative gap between two points, normalized by the larger magnitude.
fn rel_gap(a: &Point, b: &Point) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

fn c3_blend_scenarios(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_point = cfg.tolerance(ov, "blend_point");
    let tol_body = cfg.tolerance(ov, "blend_body");
    let tol_eq = cfg.tolerance(ov, "blend_equivariance");
    let mut out = Outcome::new();

    let tri = tri_scalene(&point(&[0.0, 0.0]))?;
    let square = shapes::rectangle(&point(&[4.0, 0.5]), 0.5, 0.5)?;
    let quad = ConvexBody::from_coords(&[
        vec![0.0, 0.0],
        vec![1.5, 0.1],
        vec![1.2, 1.1],
        vec![-0.2, 0.8],
    ])?;

    let scenarios: Vec<(&str, Scenario)> = vec![
        (
            "single anchor",
            Scenario::points(
                GroupTag::Euclidean,
                SelectorId::Steiner,
                vec![(tri.clone(), point(&[3.0, 1.0]))],
            ),
        ),
        (
            "two anchors in distinct orbits",
            Scenario::points(
                GroupTag::Euclidean,
                SelectorId::Steiner,
                vec![
                    (tri.clone(), point(&[3.0, 1.0])),
                    (square.clone(), point(&[4.0, 0.5])),
                ],
            ),
        ),
        (
            "similarity anchor",
            Scenario::points(
                GroupTag::Sim,
                SelectorId::Steiner,
                vec![(quad.clone(), point(&[0.5, -2.0]))],
            ),
        ),
        (
            "asymmetric anchor, far target",
            Scenario::points(
                GroupTag::Euclidean,
                SelectorId::Steiner,
                vec![(quad.clone(), point(&[-2.0, 7.0]))],
            ),
        ),
        (
            "body-valued targets",
            Scenario::bodies(
                GroupTag::Euclidean,
                vec![
                    (
                        tri.clone(),
                        shapes::regular_polygon(5, &point(&[2.0, 2.0]), 0.4, 0.1)?,
                    ),
                    (
                        square.clone(),
                        shapes::rectangle(&point(&[4.0, 0.5]), 0.25, 0.25)?,
                    ),
                ],
            ),
        ),
    ];

    // Interpolation: the blend map must hit each target on its own anchor.
    let mut worst_point = 0.0f64;
    let mut worst_body = 0.0f64;
    let mut validated = Vec::new();
    for (name, scenario) in &scenarios {
        let v = blend::validate(scenario)?;
        for pair in &v.pairs {
            match &pair.target {
                Target::Point(y) => {
                    let got = blend::blend(&pair.anchor, &v)?;
                    let err = (&got - y).norm();
                    worst_point = worst_point.max(err);
                }
                Target::Body(y) => {
                    let got = blend::blend_body(&pair.anchor, &v)?;
                    worst_body = worst_body.max(hausdorff(&got, y)?);
                }
            }
        }
        validated.push((*name, v));
    }
    out.bound("anchor hits point target", worst_point, tol_point);
    out.bound("anchor hits body target (hausdorff)", worst_body, tol_body);

    // Equivariance: 100 seeded group elements, 20 per scenario, against 20
    // probes drawn inside each scenario's bump neighborhoods.
    let bounds = SampleBounds::default();
    let mut worst_eq = 0.0f64;
    for (si, (_, v)) in validated.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x0300 + si as u64));
        let mut probes = Vec::with_capacity(20);
        for k in 0..20usize {
            let pair = &v.pairs[k % v.pairs.len()];
            let radius = 0.2 * pair.delta.expect("validated");
            probes.push(perturbed(&pair.anchor, &mut rng, radius)?);
        }
        let point_valued = matches!(v.pairs[0].target, Target::Point(_));
        let base: Vec<_> = if point_valued {
            probes
                .iter()
                .map(|p| blend::blend(p, v).map(Target::Point))
                .collect::<Result<_>>()?
        } else {
            probes
                .iter()
                .map(|p| blend::blend_body(p, v).map(Target::Body))
                .collect::<Result<_>>()?
        };
        for j in 0..20usize {
            let g = sample(
                v.group,
                &bounds,
                cfg.seed
                    .wrapping_mul(1000)
                    .wrapping_add((si * 20 + j) as u64),
            )?;
            for (probe, psi) in probes.iter().zip(&base) {
                let moved = g.apply(probe)?;
                let gap = match psi {
                    Target::Point(p) => {
                        let lhs = blend::blend(&moved, v)?;
                        rel_gap(&lhs, &g.apply_point(p))
                    }
                    Target::Body(b) => {
                        let lhs = blend::blend_body(&moved, v)?;
                        let rhs = g.apply(b)?;
                        hausdorff(&lhs, &rhs)? / (1.0 + rhs.diameter())
                    }
                };
                worst_eq = worst_eq.max(gap);
            }
        }
    }
    out.bound(
        "relative equivariance over 100 maps x 20 probes",
        worst_eq,
        tol_eq,
    );

    // Invalid scenarios must be rejected with the specific error.
    let off_center = Scenario::points(
        GroupTag::Euclidean,
        SelectorId::Steiner,
        vec![(square.clone(), point(&[4.7, 0.8]))],
    );
    out.check(
        "off-center target on a symmetric anchor -> StabilizerViolation",
        matches!(
            blend::validate(&off_center),
            Err(Error::StabilizerViolation(0, _))
        ),
    );
    let same_orbit = Scenario::points(
        GroupTag::Euclidean,
        SelectorId::Steiner,
        vec![
            (tri.clone(), point(&[3.0, 1.0])),
            (tri_scalene(&point(&[2.0, 0.0]))?, point(&[0.0, 0.0])),
        ],
    );
    out.check(
        "anchors sharing an orbit -> OrbitCollision",
        matches!(
            blend::validate(&same_orbit),
            Err(Error::OrbitCollision(0, 1, _))
        ),
    );
    Ok(out)
}

fn random_polygon(rng: &mut ChaCha8Rng, m: usize, spread: f64) -> Result<ConvexBody> {
    let cx = rng.random_range(-spread..=spread);
    let cy = rng.random_range(-spread..=spread);
    let base = rng.random_range(0.0..std::f64::consts::TAU);
    let mut pts = Vec::with_capacity(m);
    for j in 0..m {
        let angle = base + std::f64::consts::TAU * (j as f64 + 0.4 * rng.random::<f64>()) / m as f64;
        let r = rng.random_range(0.5..=1.5);
        pts.push(point(&[cx + r * angle.cos(), cy + r * angle.sin()]));
    }
    ConvexBody::canonicalize(&pts)
}

fn c4_selector_equivariance(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_eq = cfg.tolerance(ov, "equivariance");
    let bounds = SampleBounds {
        max_translation: 2.0,
        scale_range: (0.4, 2.5),
    };
    let mut out = Outcome::new();
    for id in SelectorId::ALL {
        let mut groups = vec![id.declared_group()];
        if matches!(
            id,
            SelectorId::Centroid | SelectorId::LownerCenter | SelectorId::JohnCenter
        ) && id.declared_group() != GroupTag::Aff
        {
            groups.push(GroupTag::Aff);
        }
        for group in groups {
            let mut rng =
                ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x0400 + id as u64 * 8));
            let mut worst = 0.0f64;
            for trial in 0..200usize {
                let body = random_polygon(&mut rng, 4 + trial % 5, 1.0)?;
                let g = sample(
                    group,
                    &bounds,
                    cfg.seed
                        .wrapping_mul(4096)
                        .wrapping_add(id as u64 * 512 + trial as u64),
                )?;
                let direct = selectors::evaluate(id, &g.apply(&body)?)?;
                let mapped = g.apply_point(&selectors::evaluate(id, &body)?);
                worst = worst.max(rel_gap(&direct, &mapped));
            }
            out.bound(
                &format!("{id} under {group}, 200 trials"),
                worst,
                tol_eq,
            );
        }
    }
    Ok(out)
}

/// Polygon with a prescribed point-symmetry group: the hull of the orbit of
/// random seeds under cyclic-k rotation, optionally with a mirror.
fn symmetric_polygon(rng: &mut ChaCha8Rng, k: usize, mirror: bool) -> Result<ConvexBody> {
    let center = point(&[
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    ]);
    let order = k * if mirror { 2 } else { 1 };
    let seeds_needed = (3usize.div_ceil(order)).max(1).min(16 / order.max(1)).max(1);
    loop {
        let mut pts = Vec::new();
        for _ in 0..seeds_needed {
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            let r = rng.random_range(0.6..=1.4);
            let p = point(&[r * angle.cos(), r * angle.sin()]);
            for j in 0..k {
                let theta = std::f64::consts::TAU * j as f64 / k as f64;
                let rot = AffineTransform::rotation2(theta);
                let q = rot.matrix() * &p;
                pts.push(&center + &q);
                if mirror {
                    let refl = point(&[q[0], -q[1]]);
                    pts.push(&center + refl);
                }
            }
        }
        let body = ConvexBody::canonicalize(&pts)?;
        // Inradius floor keeps slivers out; the ellipsoid solvers are only
        // specified for non-degenerate desk-scale bodies.
        if body.dimension() == 2
            && body.vertices().len() <= 16
            && selectors::chebyshev(&body).map(|(_, r)| r >= 0.1).unwrap_or(false)
        {
            return Ok(body);
        }
    }
}

fn c5_selector_containment(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_fix = cfg.tolerance(ov, "containment");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x0500));
    let mut worst = 0.0f64;
    for trial in 0..50usize {
        let k = 1 + trial % 8;
        let mirror = trial % 3 == 0;
        let body = symmetric_polygon(&mut rng, k, mirror)?;
        let report = symmetry::check_containment(&body, &SelectorId::ALL, GroupTag::Euclidean)?;
        worst = worst.max(report.max_distance());
    }
    let mut out = Outcome::new();
    out.bound(
        "selector distance to fixed subspace over 50 symmetric polygons",
        worst,
        tol_fix,
    );
    Ok(out)
}

fn c6_properness_bounds(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_interval = cfg.tolerance(ov, "properness_interval");
    let mut out = Outcome::new();
    let square = shapes::unit_square();
    let rep = lab::thin_bound_check(&square, 0.1, 1000, cfg.seed.wrapping_add(0x0600))?;
    let m = 2f64.sqrt();
    out.check("square: zero violations over 1000 trials", rep.violations == 0);
    out.bound(
        "square: interval vs closed form",
        (rep.lambda_interval.0 - (m - 0.2) / (m + 0.2))
            .abs()
            .max((rep.lambda_interval.1 - (m + 0.2) / (m - 0.2)).abs()),
        tol_interval,
    );
    let segment = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0]])?;
    let rep = lab::thin_bound_check(&segment, 0.2, 1000, cfg.seed.wrapping_add(0x0601))?;
    out.check("segment: zero violations over 1000 trials", rep.violations == 0);
    out.bound(
        "segment: interval vs closed form",
        (rep.lambda_interval.0 - 0.6 / 1.4)
            .abs()
            .max((rep.lambda_interval.1 - 1.4 / 0.6).abs()),
        tol_interval,
    );
    Ok(out)
}

/// Grid-search oracle for the Chebyshev center: maximize the minimum
/// facet margin over a shrinking grid.
fn chebyshev_grid_oracle(body: &ConvexBody) -> Result<Point> {
    let hs = selectors::to_halfspaces(body)?;
    let margin = |x: &Point| {
        hs.halfspaces
            .iter()
            .map(|(a, b)| (b - a.dot(x)) / a.norm())
            .fold(f64::INFINITY, f64::min)
    };
    let verts = body.vertices();
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in verts {
        lo_x = lo_x.min(v[0]);
        hi_x = hi_x.max(v[0]);
        lo_y = lo_y.min(v[1]);
        hi_y = hi_y.max(v[1]);
    }
    let mut center = point(&[(lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0]);
    let mut half = ((hi_x - lo_x).max(hi_y - lo_y)) / 2.0;
    for _ in 0..9 {
        let mut best = (f64::NEG_INFINITY, center.clone());
        let steps = 40i64;
        for i in -steps..=steps {
            for j in -steps..=steps {
                let x = point(&[
                    center[0] + half * i as f64 / steps as f64,
                    center[1] + half * j as f64 / steps as f64,
                ]);
                let m = margin(&x);
                if m > best.0 {
                    best = (m, x);
                }
            }
        }
        center = best.1;
        half *= 0.15;
    }
    Ok(center)
}

fn c7_optimization_kernels(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_center = cfg.tolerance(ov, "kernel_center");
    let tol_mvee = cfg.tolerance(ov, "mvee_center");
    let mut out = Outcome::new();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x0700));
    let mut worst_lowner = 0.0f64;
    let mut worst_john = 0.0f64;
    for _ in 0..50 {
        let tri = loop {
            let cand = random_polygon(&mut rng, 3, 1.5)?;
            if cand.vertices().len() == 3 {
                break cand;
            }
        };
        let c = selectors::centroid(&tri);
        worst_lowner = worst_lowner.max((selectors::lowner(&tri)?.center - &c).norm());
        worst_john = worst_john.max((selectors::john(&tri)?.center - &c).norm());
    }
    out.bound("lowner center vs triangle centroid, 50 trials", worst_lowner, tol_center);
    out.bound("john center vs triangle centroid, 50 trials", worst_john, tol_center);

    let square = shapes::unit_square();
    let mvee = selectors::lowner(&square)?;
    out.bound(
        "mvee(square) center vs (1/2, 1/2)",
        (&mvee.center - point(&[0.5, 0.5])).norm(),
        tol_mvee,
    );
    let eigs = mvee.shape.symmetric_eigenvalues();
    let radius_err = eigs
        .iter()
        .map(|l| (1.0 / l.sqrt() - 2f64.sqrt() / 2.0).abs())
        .fold(0.0, f64::max);
    out.bound("mvee(square) radii vs sqrt(2)/2", radius_err, tol_center);

    let right = ConvexBody::from_coords(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])?;
    let (cheb, _) = selectors::chebyshev(&right)?;
    let oracle = chebyshev_grid_oracle(&right)?;
    out.bound(
        "chebyshev center vs grid oracle on the right triangle",
        (&cheb - oracle).norm(),
        tol_center,
    );
    Ok(out)
}

fn c8_metric_axioms(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_metric = cfg.tolerance(ov, "metric");
    let bounds = SampleBounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(0x0800));
    let mut worst_triangle = 0.0f64;
    let mut worst_sym = 0.0f64;
    let mut worst_self = 0.0f64;
    let mut worst_iso = 0.0f64;
    let mut worst_sim = 0.0f64;
    for trial in 0..1000usize {
        let a = random_polygon(&mut rng, 3 + trial % 4, 1.0)?;
        let b = random_polygon(&mut rng, 3 + (trial + 1) % 4, 1.0)?;
        let c = random_polygon(&mut rng, 3 + (trial + 2) % 4, 1.0)?;
        let dab = hausdorff(&a, &b)?;
        let dbc = hausdorff(&b, &c)?;
        let dac = hausdorff(&a, &c)?;
        worst_triangle = worst_triangle.max(dac - (dab + dbc));
        worst_sym = worst_sym.max((dab - hausdorff(&b, &a)?).abs());
        worst_self = worst_self.max(hausdorff(&a, &a)?);
        let g = sample(
            GroupTag::Euclidean,
            &bounds,
            cfg.seed.wrapping_mul(8192).wrapping_add(trial as u64),
        )?;
        worst_iso = worst_iso.max((hausdorff(&g.apply(&a)?, &g.apply(&b)?)? - dab).abs());
        let s = sample(
            GroupTag::Sim,
            &bounds,
            cfg.seed
                .wrapping_mul(8192)
                .wrapping_add(500_000 + trial as u64),
        )?;
        let lambda = s.sim_decompose()?.lambda;
        worst_sim =
            worst_sim.max((hausdorff(&s.apply(&a)?, &s.apply(&b)?)? - lambda * dab).abs());
    }
    let mut out = Outcome::new();
    out.bound("triangle inequality slack, 1000 triples", worst_triangle, tol_metric);
    out.bound("symmetry gap", worst_sym, tol_metric);
    out.bound("self distance", worst_self, tol_metric);
    out.bound("euclidean isometry invariance", worst_iso, tol_metric);
    out.bound("similarity scaling covariance", worst_sim, tol_metric);
    Ok(out)
}

fn c9_constant_width(cfg: &VerifyConfig, ov: &mut bool) -> Result<Outcome> {
    let tol_w = cfg.tolerance(ov, "width_tol");
    let tol_gap = cfg.tolerance(ov, "difference_gap");
    let mut out = Outcome::new();
    let reuleaux = shapes::reuleaux_triangle(1.0, 64)?;
    let check = lab::width_check(&reuleaux, tol_w)?;
    out.check("reuleaux passes is_constant_width", check.constant);
    out.bound("reuleaux mean width vs 1", (check.d - 1.0).abs(), tol_w);
    out.bound(
        "reuleaux difference body vs d*ball",
        check.difference_gap,
        tol_gap,
    );
    let disk = shapes::disk256(&point(&[0.0, 0.0]), 0.5)?;
    let mixed = lab::constant_width_convexity_check(&reuleaux, &disk, 0.5, tol_w)?;
    out.check(
        "reuleaux/disk minkowski midpoint stays constant width (2x tolerance)",
        mixed,
    );
    Ok(out)
}

/// Parses one `--tol name=value` argument.
pub fn parse_override(arg: &str) -> Result<(String, f64)> {
    let (name, value) = arg
        .split_once('=')
        .ok_or_else(|| Error::Document(format!("expected name=value, got `{arg}`")))?;
    let name = name.trim().to_string();
    if !DEFAULT_TOLERANCES.iter().any(|(n, _)| *n == name) {
        return Err(Error::Document(format!(
            "unknown tolerance `{name}`; known: {}",
            DEFAULT_TOLERANCES
                .iter()
                .map(|(n, _)| *n)
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let value = f64::from_str(value.trim())
        .map_err(|e| Error::Document(format!("bad tolerance value `{value}`: {e}")))?;
    Ok((name, value))
}
