//! Convex polytope geometry under group actions.
//!
//! The library works with V-representation polytopes (`ConvexBody`) in R^n and
//! the groups of invertible affine maps acting on them. On top of the metric
//! layer (Hausdorff distance, Minkowski combinations, support functions) it
//! provides:
//!
//! - a family of invariant-point selectors (centroid, Chebyshev and circumball
//!   centers, Steiner point, Löwner and John ellipsoid centers), each
//!   equivariant under a declared transformation group;
//! - stabilizer-subgroup enumeration for polytopes and the affine subspace of
//!   points fixed by every stabilizer element;
//! - an equivariant blend map that interpolates a base selector toward
//!   prescribed targets near finitely many anchor orbits, for the Euclidean
//!   and similarity groups;
//! - executable demos and bound checks (segment midpoints, thin-neighborhood
//!   similarity bounds, constant-width bodies).
//!
//! Everything is deterministic: all randomness flows through explicit seeds.

pub mod blend;
pub mod body;
pub mod doc;
pub mod error;
pub mod lab;
pub mod selectors;
pub mod shapes;
pub mod symmetry;
pub mod tol;
pub mod transform;
pub mod verify;

mod hull;
mod minnorm;

pub use body::{BodyFamilyTag, ConvexBody, FamilyKind};
pub use error::{Error, Result};
pub use transform::{AffineTransform, GroupTag, SimilarityParts};

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Points and directions in R^n.
pub type Point = nalgebra::DVector<f64>;

/// Convenience constructor for a point from a slice.
pub fn point(coords: &[f64]) -> Point {
    Point::from_column_slice(coords)
}
