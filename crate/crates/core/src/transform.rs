//! Invertible affine maps g(x) = v + Mx, their group structure, the
//! similarity decomposition g = u + λσ, classification into nested groups,
//! and seeded sampling of group elements.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::ConvexBody;
use crate::{Error, Point, Result};

const DET_FLOOR: f64 = 1e-12;
const CLASSIFY_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct AffineTransform {
    matrix: DMatrix<f64>,
    translation: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupTag {
    Aff,
    Sim,
    Euclidean,
    Orthogonal,
    Translation,
}

impl GroupTag {
    /// Subgroup nesting: Translation, Orthogonal ⊂ Euclidean ⊂ Sim ⊂ Aff.
    pub fn contains(self, other: GroupTag) -> bool {
        use GroupTag::*;
        match self {
            Aff => true,
            Sim => matches!(other, Sim | Euclidean | Orthogonal | Translation),
            Euclidean => matches!(other, Euclidean | Orthogonal | Translation),
            Orthogonal => other == Orthogonal,
            Translation => other == Translation,
        }
    }
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GroupTag::Aff => "aff",
            GroupTag::Sim => "sim",
            GroupTag::Euclidean => "euclidean",
            GroupTag::Orthogonal => "orthogonal",
            GroupTag::Translation => "translation",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for GroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupTag> {
        match s.to_ascii_lowercase().as_str() {
            "aff" | "affine" => Ok(GroupTag::Aff),
            "sim" | "similarity" => Ok(GroupTag::Sim),
            "euclidean" | "e" | "iso" => Ok(GroupTag::Euclidean),
            "orthogonal" | "o" => Ok(GroupTag::Orthogonal),
            "translation" | "t" => Ok(GroupTag::Translation),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }
}

/// g = u + λσ with λ > 0 and σ orthogonal.
#[derive(Debug, Clone)]
pub struct SimilarityParts {
    pub u: Point,
    pub lambda: f64,
    pub sigma: DMatrix<f64>,
}

impl SimilarityParts {
    pub fn recompose(&self) -> AffineTransform {
        AffineTransform {
            matrix: &self.sigma * self.lambda,
            translation: self.u.clone(),
        }
    }
}

impl AffineTransform {
    pub fn new(matrix: DMatrix<f64>, translation: Point) -> Result<AffineTransform> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: matrix.ncols(),
            });
        }
        if translation.len() != matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                got: translation.len(),
            });
        }
        let det = matrix.determinant();
        if det.abs() <= DET_FLOOR || !det.is_finite() {
            return Err(Error::SingularMatrix(det));
        }
        Ok(AffineTransform { matrix, translation })
    }

    pub fn identity(n: usize) -> AffineTransform {
        AffineTransform {
            matrix: DMatrix::identity(n, n),
            translation: Point::zeros(n),
        }
    }

    pub fn translation_by(v: &Point) -> AffineTransform {
        AffineTransform {
            matrix: DMatrix::identity(v.len(), v.len()),
            translation: v.clone(),
        }
    }

    pub fn scaling(n: usize, c: f64) -> Result<AffineTransform> {
        AffineTransform::new(DMatrix::identity(n, n) * c, Point::zeros(n))
    }

    /// Counterclockwise rotation of the plane about the origin.
    pub fn rotation2(theta: f64) -> AffineTransform {
        let (s, c) = theta.sin_cos();
        AffineTransform {
            matrix: DMatrix::from_row_slice(2, 2, &[c, -s, s, c]),
            translation: Point::zeros(2),
        }
    }

    /// Reflection of the plane across the line through the origin at angle
    /// `alpha` to the x-axis.
    pub fn reflection2(alpha: f64) -> AffineTransform {
        let (s, c) = (2.0 * alpha).sin_cos();
        AffineTransform {
            matrix: DMatrix::from_row_slice(2, 2, &[c, s, s, -c]),
            translation: Point::zeros(2),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn apply_point(&self, x: &Point) -> Point {
        &self.matrix * x + &self.translation
    }

    pub fn apply(&self, body: &ConvexBody) -> Result<ConvexBody> {
        if body.dim_ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: body.dim_ambient(),
            });
        }
        let pts: Vec<Point> = body.vertices().iter().map(|v| self.apply_point(v)).collect();
        ConvexBody::canonicalize(&pts)
    }

    /// (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &AffineTransform) -> Result<AffineTransform> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        AffineTransform::new(
            &self.matrix * &other.matrix,
            &self.matrix * &other.translation + &self.translation,
        )
    }

    pub fn inverse(&self) -> Result<AffineTransform> {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMatrix(self.matrix.determinant()))?;
        let t = -(&inv * &self.translation);
        AffineTransform::new(inv, t)
    }

    /// Unique parts (u, λ, σ) with g(x) = u + λσx. λ is read off as
    /// ‖M e_1‖ (sign-safe for reflections), σ = M/λ.
    pub fn sim_decompose(&self) -> Result<SimilarityParts> {
        let lambda = self.matrix.column(0).norm();
        let gram = self.matrix.transpose() * &self.matrix;
        let l2 = lambda * lambda;
        let mut residual = 0.0f64;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let target = if i == j { l2 } else { 0.0 };
                residual = residual.max((gram[(i, j)] - target).abs());
            }
        }
        if residual > CLASSIFY_TOL * l2 {
            return Err(Error::NotASimilarity(residual / l2));
        }
        Ok(SimilarityParts {
            u: self.translation.clone(),
            lambda,
            sigma: &self.matrix / lambda,
        })
    }

    /// All group tags whose defining condition holds within 1e-8.
    /// Aff is always present; the rest are nested refinements.
    pub fn classify(&self) -> Vec<GroupTag> {
        let mut tags = vec![GroupTag::Aff];
        let parts = match self.sim_decompose() {
            Ok(p) => p,
            Err(_) => return tags,
        };
        tags.push(GroupTag::Sim);
        if (parts.lambda - 1.0).abs() <= CLASSIFY_TOL {
            tags.push(GroupTag::Euclidean);
            if parts.u.norm() <= CLASSIFY_TOL {
                tags.push(GroupTag::Orthogonal);
            }
            let n = self.dim();
            let dev = (&self.matrix - DMatrix::<f64>::identity(n, n)).abs().max();
            if dev <= CLASSIFY_TOL {
                tags.push(GroupTag::Translation);
            }
        }
        tags
    }

    pub fn is_in(&self, tag: GroupTag) -> bool {
        self.classify().contains(&tag)
    }

    pub fn approx_eq(&self, other: &AffineTransform, eps: f64) -> bool {
        self.dim() == other.dim()
            && (&self.matrix - &other.matrix).abs().max() <= eps
            && (&self.translation - &other.translation).abs().max() <= eps
    }
}

/// Sampling bounds for random group elements.
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    pub max_translation: f64,
    pub scale_range: (f64, f64),
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_translation: 2.0,
            scale_range: (0.5, 2.0),
        }
    }
}

impl SampleBounds {
    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.scale_range;
        if !(self.max_translation >= 0.0) || !self.max_translation.is_finite() {
            return Err(Error::InvalidBounds(format!(
                "max_translation = {}",
                self.max_translation
            )));
        }
        if !(lo > 0.0 && hi >= lo) || !hi.is_finite() {
            return Err(Error::InvalidBounds(format!("scale_range = ({lo}, {hi})")));
        }
        Ok(())
    }
}

/// Deterministic random element of the requested group. The orthogonal part
/// is Haar on O(n): QR of a Gaussian matrix, sign-fixed, with an explicit
/// coin flip between the two components so reflections appear with
/// probability 1/2.
pub fn sample(group: GroupTag, bounds: &SampleBounds, seed: u64) -> Result<AffineTransform> {
    sample_dim(group, 2, bounds, seed)
}

pub fn sample_dim(
    group: GroupTag,
    n: usize,
    bounds: &SampleBounds,
    seed: u64,
) -> Result<AffineTransform> {
    bounds.validate()?;
    if n == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = bounds.scale_range;
    let shift = random_translation(&mut rng, n, bounds.max_translation);
    let transform = match group {
        GroupTag::Translation => AffineTransform {
            matrix: DMatrix::identity(n, n),
            translation: shift,
        },
        GroupTag::Orthogonal => AffineTransform {
            matrix: haar_orthogonal(&mut rng, n),
            translation: Point::zeros(n),
        },
        GroupTag::Euclidean => AffineTransform {
            matrix: haar_orthogonal(&mut rng, n),
            translation: shift,
        },
        GroupTag::Sim => {
            let lambda = rng.random_range(lo..=hi);
            AffineTransform {
                matrix: haar_orthogonal(&mut rng, n) * lambda,
                translation: shift,
            }
        }
        GroupTag::Aff => {
            // Q1 D Q2 keeps singular values inside scale_range, bounding the
            // condition number of sampled maps.
            let q1 = haar_orthogonal(&mut rng, n);
            let q2 = haar_orthogonal(&mut rng, n);
            let mut d = DMatrix::zeros(n, n);
            for i in 0..n {
                d[(i, i)] = rng.random_range(lo..=hi);
            }
            AffineTransform {
                matrix: q1 * d * q2,
                translation: shift,
            }
        }
    };
    debug_assert!(transform.is_in(group));
    Ok(transform)
}

fn random_translation(rng: &mut ChaCha8Rng, n: usize, max: f64) -> Point {
    Point::from_fn(n, |_, _| {
        if max == 0.0 {
            0.0
        } else {
            rng.random_range(-max..=max)
        }
    })
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller from two uniforms.
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub(crate) fn haar_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if rng.random::<bool>() {
        for i in 0..n {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    q
}
