//! Central tolerance record.
//!
//! Every numeric cutoff used by the geometric kernels lives here so that
//! verification runs are reproducible and the acceptance table can name the
//! tolerance it pins.

/// Dedup / rank / hull-extraction decisions on vertex coordinates.
///
/// Double precision carries ~1e-16 relative noise; 1e-9 leaves a wide safety
/// margin at desk scale (coordinates of order 1..10).
pub const GEOM: f64 = 1e-9;

/// Group-membership detection (similarity test, classification thresholds).
/// Relative; an order of magnitude above accumulated arithmetic error for
/// n <= 3.
pub const GROUP_DETECT: f64 = 1e-8;

/// Orthonormality and recomposition checks on similarity parts.
pub const SIM_PARTS: f64 = 1e-10;

/// Vertex-set matching when testing gK = K in stabilizer enumeration.
pub const STABILIZER_MATCH: f64 = 1e-8;

/// Rank cutoff when solving the joint fixed-point system of a stabilizer.
pub const FIXED_SET_RANK: f64 = 1e-8;

/// `is_fixed` displacement threshold.
pub const FIXED_POINT: f64 = 1e-7;

/// Convex quadratic projection (distance from a point to a polytope).
pub const PROJECTION: f64 = 1e-10;

/// Relative duality-gap target for the minimal enclosing ellipsoid ascent.
///
/// The contract requires at most 1e-7; the default runs tighter because the
/// ellipsoid center is compared against closed-form values at 1e-5..1e-6 and
/// the center error scales like the square root of the gap.
pub const MVEE_GAP: f64 = 1e-12;

/// Gradient-norm target for the inscribed-ellipsoid barrier solve.
pub const JOHN_GRAD: f64 = 1e-7;

/// Iteration cap shared by the iterative optimizers.
pub const MAX_ITER: usize = 100_000;

/// Anchors closer than this in orbit distance count as the same orbit.
pub const ORBIT_SEPARATION: f64 = 1e-6;

/// Rotation-alignment bracket width for the golden-section refinement.
pub const ROTATION_BRACKET: f64 = 1e-10;

/// Number of rotation-grid starts per orientation component in 2D.
pub const ROTATION_STARTS: usize = 720;

/// Direction count for constant-width sampling.
pub const WIDTH_DIRECTIONS: usize = 4096;

/// Minimum node count for the 3D spherical quadrature of the Steiner point.
pub const STEINER_NODES_3D: usize = 5810;
