//! Vectors, Lorentz matrices and the universal covering group in 2+1 dimensions.
//!
//! Metric signature is `(+,-,-)`. An element of the covering group of the
//! proper orthochronous Lorentz group is stored as a matrix together with a
//! lifted rotation angle: the rotation angle of the polar factor of the matrix,
//! unwrapped to a real number. Products are lifted by continuation along a
//! canonical path of the second factor, see [`CoveringLorentz::compose`].

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix3, Vector3};
use thiserror::Error;

/// Tolerance used to accept a matrix as a Lorentz matrix.
pub const LORENTZ_TOL: f64 = 1e-12;

/// Largest number of subdivisions tried by the angle continuation.
const MAX_STEPS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MinkowskiError {
    #[error("matrix is not a proper orthochronous Lorentz matrix (residual {residual:e})")]
    NotLorentz { residual: f64 },
    #[error("angle continuation did not resolve with {steps} steps")]
    LiftFailure { steps: usize },
}

/// A point or vector of 2+1 dimensional Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct MVec3 {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
}

impl MVec3 {
    pub const ZERO: MVec3 = MVec3 { x0: 0.0, x1: 0.0, x2: 0.0 };

    pub const fn new(x0: f64, x1: f64, x2: f64) -> Self {
        MVec3 { x0, x1, x2 }
    }

    /// Minkowski product `u0 v0 - u1 v1 - u2 v2`.
    pub fn dot(&self, other: &MVec3) -> f64 {
        minkowski_inner(self, other)
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    /// Euclidean length, used only for normalisation.
    pub fn euclidean_norm(&self) -> f64 {
        (self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2).sqrt()
    }

    pub fn spatial_norm(&self) -> f64 {
        self.x1.hypot(self.x2)
    }

    /// Principal angle of the spatial part, in `(-pi, pi]`.
    pub fn spatial_angle(&self) -> f64 {
        principal_angle(self.x2.atan2(self.x1))
    }

    /// Image under the reflection `j = diag(-1, -1, 1)`.
    pub fn reflect(&self) -> MVec3 {
        MVec3::new(-self.x0, -self.x1, self.x2)
    }

    pub fn scale(&self, s: f64) -> MVec3 {
        MVec3::new(self.x0 * s, self.x1 * s, self.x2 * s)
    }

    pub fn is_finite(&self) -> bool {
        self.x0.is_finite() && self.x1.is_finite() && self.x2.is_finite()
    }

    pub(crate) fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x0, self.x1, self.x2)
    }

    pub(crate) fn from_vector(v: Vector3<f64>) -> Self {
        MVec3::new(v[0], v[1], v[2])
    }
}

impl From<[f64; 3]> for MVec3 {
    fn from(v: [f64; 3]) -> Self {
        MVec3::new(v[0], v[1], v[2])
    }
}

impl From<MVec3> for [f64; 3] {
    fn from(v: MVec3) -> Self {
        [v.x0, v.x1, v.x2]
    }
}

impl Add for MVec3 {
    type Output = MVec3;
    fn add(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl Sub for MVec3 {
    type Output = MVec3;
    fn sub(self, o: MVec3) -> MVec3 {
        MVec3::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Neg for MVec3 {
    type Output = MVec3;
    fn neg(self) -> MVec3 {
        MVec3::new(-self.x0, -self.x1, -self.x2)
    }
}

impl fmt::Display for MVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x0, self.x1, self.x2)
    }
}

pub fn minkowski_inner(u: &MVec3, v: &MVec3) -> f64 {
    u.x0 * v.x0 - u.x1 * v.x1 - u.x2 * v.x2
}

/// Reduces an angle to `(-pi, pi]`.
pub fn principal_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

fn eta() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(1.0, -1.0, -1.0))
}

fn j_matrix() -> Matrix3<f64> {
    Matrix3::from_diagonal(&Vector3::new(-1.0, -1.0, 1.0))
}

/// A proper orthochronous Lorentz matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix(Matrix3<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix3::identity())
    }

    /// Validates `Λᵀ η Λ = η`, `det Λ = 1` and `Λ₀₀ ≥ 1`.
    ///
    /// The metric residual is measured relative to the squared size of the
    /// entries so that large boosts are not rejected for rounding alone.
    pub fn new(m: Matrix3<f64>) -> Result<Self, MinkowskiError> {
        let scale = m.amax().max(1.0);
        let residual = (m.transpose() * eta() * m - eta()).amax() / (scale * scale);
        let det = m.determinant();
        if !residual.is_finite()
            || residual > LORENTZ_TOL
            || (det - 1.0).abs() > LORENTZ_TOL * scale.powi(3)
            || m[(0, 0)] < 1.0 - LORENTZ_TOL * scale
        {
            return Err(MinkowskiError::NotLorentz { residual });
        }
        Ok(LorentzMatrix(m))
    }

    /// Rotation by `omega` in the `x1`-`x2` plane.
    pub fn rotation(omega: f64) -> Self {
        let (s, c) = omega.sin_cos();
        LorentzMatrix(Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c))
    }

    /// Boost along `x1` with rapidity `t`.
    pub fn boost1(t: f64) -> Self {
        let (c, s) = (t.cosh(), t.sinh());
        LorentzMatrix(Matrix3::new(c, s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0))
    }

    /// The pure (symmetric positive) boost sending `(1, 0, 0)` to the unit
    /// future timelike vector `u`.
    pub fn pure_boost_to(u: &MVec3) -> Self {
        let k = 1.0 / (1.0 + u.x0);
        LorentzMatrix(Matrix3::new(
            u.x0,
            u.x1,
            u.x2,
            u.x1,
            1.0 + u.x1 * u.x1 * k,
            u.x1 * u.x2 * k,
            u.x2,
            u.x1 * u.x2 * k,
            1.0 + u.x2 * u.x2 * k,
        ))
    }

    /// Pure boost with rapidity `chi` in the spatial direction at angle `phi`.
    pub fn pure_boost(chi: f64, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        let sh = chi.sinh();
        Self::pure_boost_to(&MVec3::new(chi.cosh(), sh * c, sh * s))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn apply(&self, v: &MVec3) -> MVec3 {
        MVec3::from_vector(self.0 * v.to_vector())
    }

    pub fn compose(&self, other: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * other.0)
    }

    /// `Λ⁻¹ = η Λᵀ η`.
    pub fn inverse(&self) -> LorentzMatrix {
        LorentzMatrix(eta() * self.0.transpose() * eta())
    }

    /// `j Λ j` with `j = diag(-1, -1, 1)`.
    pub fn reflect_conjugate(&self) -> LorentzMatrix {
        LorentzMatrix(j_matrix() * self.0 * j_matrix())
    }

    /// Splits `Λ = R(θ) S` with `S` a pure boost; returns `(θ, rapidity, direction)`
    /// of the polar factors.
    pub fn polar_parts(&self) -> (f64, f64, f64) {
        let u = MVec3::from_vector(self.0.column(0).into_owned());
        let b = LorentzMatrix::pure_boost_to(&u);
        let r = b.inverse().0 * self.0;
        let theta = principal_angle(r[(2, 1)].atan2(r[(1, 1)]));
        // S = R(θ)⁻¹ B R(θ) is the pure boost to R(-θ) u.
        let v = LorentzMatrix::rotation(-theta).apply(&u);
        let chi = v.spatial_norm().asinh();
        let phi = if v.spatial_norm() > 0.0 { v.spatial_angle() } else { 0.0 };
        (theta, chi, phi)
    }

    pub fn max_abs_diff(&self, other: &LorentzMatrix) -> f64 {
        (self.0 - other.0).amax()
    }
}

/// Rotation angle in `(-pi, pi]` of the rotation factor of `Λ = R(θ) S`.
pub fn polar_rotation_angle(m: &LorentzMatrix) -> f64 {
    m.polar_parts().0
}

/// Follows a principal angle `angle_at(τ)`, `τ ∈ [0, 1]`, continuously from
/// the lifted value `start` at `τ = 0`. Subdivisions are doubled until every
/// step changes the angle by less than `pi/4`.
pub fn continue_angle<F>(start: f64, angle_at: F) -> Result<f64, MinkowskiError>
where
    F: Fn(f64) -> f64,
{
    let mut steps = 8usize;
    loop {
        let mut prev = angle_at(0.0);
        let mut total = 0.0;
        let mut ok = true;
        for k in 1..=steps {
            let cur = angle_at(k as f64 / steps as f64);
            let inc = principal_angle(cur - prev);
            if inc.abs() >= PI / 4.0 {
                ok = false;
                break;
            }
            total += inc;
            prev = cur;
        }
        if ok {
            return Ok(start + total);
        }
        steps *= 2;
        if steps > MAX_STEPS {
            return Err(MinkowskiError::LiftFailure { steps });
        }
    }
}

/// An element of the universal covering group of the Lorentz group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveringLorentz {
    matrix: LorentzMatrix,
    lifted_angle: f64,
}

impl CoveringLorentz {
    pub fn identity() -> Self {
        CoveringLorentz { matrix: LorentzMatrix::identity(), lifted_angle: 0.0 }
    }

    /// Pairs a matrix with a lift of its polar rotation angle. The lift must
    /// agree with the matrix modulo `2π`.
    pub fn new(matrix: LorentzMatrix, lifted_angle: f64) -> Option<Self> {
        let theta = polar_rotation_angle(&matrix);
        let diff = principal_angle(lifted_angle - theta);
        (diff.abs() < 1e-9).then_some(CoveringLorentz { matrix, lifted_angle })
    }

    pub fn rotation(omega: f64) -> Self {
        CoveringLorentz { matrix: LorentzMatrix::rotation(omega), lifted_angle: omega }
    }

    pub fn boost1(t: f64) -> Self {
        CoveringLorentz { matrix: LorentzMatrix::boost1(t), lifted_angle: 0.0 }
    }

    /// `R̃(ω) S(χ, φ)`: a lifted rotation after a pure boost.
    pub fn from_parts(omega: f64, chi: f64, phi: f64) -> Self {
        let m = LorentzMatrix::rotation(omega).compose(&LorentzMatrix::pure_boost(chi, phi));
        CoveringLorentz { matrix: m, lifted_angle: omega }
    }

    pub fn matrix(&self) -> &LorentzMatrix {
        &self.matrix
    }

    pub fn lifted_angle(&self) -> f64 {
        self.lifted_angle
    }

    /// The canonical path from the identity: `τ ↦ R(τ θ̃) S(τ χ, φ)`.
    pub fn path_matrix(&self, tau: f64) -> LorentzMatrix {
        let (_, chi, phi) = self.matrix.polar_parts();
        LorentzMatrix::rotation(tau * self.lifted_angle)
            .compose(&LorentzMatrix::pure_boost(tau * chi, phi))
    }

    /// Returns a closure evaluating [`Self::path_matrix`] without recomputing
    /// the polar decomposition.
    pub fn path(&self) -> impl Fn(f64) -> LorentzMatrix {
        let (_, chi, phi) = self.matrix.polar_parts();
        let theta = self.lifted_angle;
        move |tau| {
            LorentzMatrix::rotation(tau * theta).compose(&LorentzMatrix::pure_boost(tau * chi, phi))
        }
    }

    pub fn compose(&self, other: &CoveringLorentz) -> Result<CoveringLorentz, MinkowskiError> {
        let path = other.path();
        let first = self.matrix;
        let lifted = continue_angle(self.lifted_angle, |tau| {
            polar_rotation_angle(&first.compose(&path(tau)))
        })?;
        Ok(CoveringLorentz { matrix: self.matrix.compose(&other.matrix), lifted_angle: lifted })
    }

    pub fn inverse(&self) -> Result<CoveringLorentz, MinkowskiError> {
        // Shifting the lift of the second factor by 2πk shifts the product's
        // lift by 2πk, so a trial lift fixes the correct one.
        let inv = self.matrix.inverse();
        let trial = CoveringLorentz { matrix: inv, lifted_angle: polar_rotation_angle(&inv) };
        let product = self.compose(&trial)?;
        let turns = (product.lifted_angle / (2.0 * PI)).round();
        let lifted = trial.lifted_angle - 2.0 * PI * turns;
        Ok(CoveringLorentz { matrix: inv, lifted_angle: lifted })
    }

    /// `j g̃ j`: matrix `jΛj`, lifted angle negated.
    pub fn reflect_conjugate(&self) -> CoveringLorentz {
        CoveringLorentz { matrix: self.matrix.reflect_conjugate(), lifted_angle: -self.lifted_angle }
    }
}

/// An element `(x, λ̃)` of the covering group of the Poincaré group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoveringPoincare {
    pub translation: MVec3,
    pub lorentz: CoveringLorentz,
}

impl CoveringPoincare {
    pub fn identity() -> Self {
        CoveringPoincare { translation: MVec3::ZERO, lorentz: CoveringLorentz::identity() }
    }

    pub fn new(translation: MVec3, lorentz: CoveringLorentz) -> Self {
        CoveringPoincare { translation, lorentz }
    }

    pub fn translation(a: MVec3) -> Self {
        CoveringPoincare { translation: a, lorentz: CoveringLorentz::identity() }
    }

    pub fn rotation(omega: f64) -> Self {
        CoveringPoincare::from(CoveringLorentz::rotation(omega))
    }

    pub fn boost1(t: f64) -> Self {
        CoveringPoincare::from(CoveringLorentz::boost1(t))
    }

    pub fn compose(&self, other: &CoveringPoincare) -> Result<CoveringPoincare, MinkowskiError> {
        Ok(CoveringPoincare {
            translation: self.translation + self.lorentz.matrix().apply(&other.translation),
            lorentz: self.lorentz.compose(&other.lorentz)?,
        })
    }

    /// Applies the projected Poincaré transformation to a point.
    pub fn apply(&self, x: &MVec3) -> MVec3 {
        self.translation + self.lorentz.matrix().apply(x)
    }

    pub fn reflect_conjugate(&self) -> CoveringPoincare {
        CoveringPoincare {
            translation: self.translation.reflect(),
            lorentz: self.lorentz.reflect_conjugate(),
        }
    }
}

impl From<CoveringLorentz> for CoveringPoincare {
    fn from(lorentz: CoveringLorentz) -> Self {
        CoveringPoincare { translation: MVec3::ZERO, lorentz }
    }
}

impl Mul for &CoveringPoincare {
    type Output = Result<CoveringPoincare, MinkowskiError>;
    fn mul(self, rhs: &CoveringPoincare) -> Self::Output {
        self.compose(rhs)
    }
}

pub fn cover_compose(
    a: &CoveringPoincare,
    b: &CoveringPoincare,
) -> Result<CoveringPoincare, MinkowskiError> {
    a.compose(b)
}

pub fn cover_rotation(omega: f64) -> CoveringLorentz {
    CoveringLorentz::rotation(omega)
}

pub fn cover_boost1(t: f64) -> CoveringLorentz {
    CoveringLorentz::boost1(t)
}

pub fn cover_translation(a: MVec3) -> CoveringPoincare {
    CoveringPoincare::translation(a)
}

pub fn reflect_conjugate(g: &CoveringPoincare) -> CoveringPoincare {
    g.reflect_conjugate()
}
