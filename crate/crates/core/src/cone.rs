//! Space-like cones, wedges and path classes over the direction manifold.
//!
//! A path class ending at a cone is represented by the cone's apex, its four
//! extreme rays and the *lifted* angles of those rays: angles of their spatial
//! parts, unwrapped to real numbers on a chosen sheet of the universal cover of
//! the circle of space-like directions. The lifted angular arc of a path class
//! is the hull of the lifted ray angles. Winding arithmetic only ever looks at
//! these arcs; causal separation is decided on the rays themselves.
//!
//! A cone with apex `a`, central direction `θ` and half-opening `α < π/2` is
//! the intersection of the two wedges with edge through `a` whose central
//! directions are `θ ∓ (π/2 - α)`. It is bounded by four light-like planes.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::minkowski::{continue_angle, principal_angle, CoveringPoincare, MVec3, MinkowskiError};

const TWO_PI: f64 = 2.0 * PI;

/// Tolerance for comparing lifted angles and separation margins.
pub const GEOMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector {0} is not a unit space-like direction")]
    InvalidDirection(MVec3),
    #[error("degenerate region: {0}")]
    Degenerate(String),
    #[error("operation does not support regions of kind {0:?}")]
    UnsupportedKind(ConeKind),
    #[error("regions are not causally separated")]
    NotSeparated,
    #[error("regions touch along a light-like or angular boundary; refusing to classify")]
    Grazing,
    #[error("no integer satisfies both winding inequalities")]
    NoValidWinding,
    #[error("reference cone is not invariant under the reflection j")]
    NotJInvariant,
    #[error("reference direction lies outside the reference cone")]
    ReferenceOutsideCone,
    #[error(transparent)]
    Lift(#[from] MinkowskiError),
}

/// A unit space-like vector, `e·e = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacelikeDirection(MVec3);

impl SpacelikeDirection {
    pub fn new(e: MVec3) -> Result<Self, GeometryError> {
        let scale = e.euclidean_norm().max(1.0);
        if !e.is_finite() || (e.square() + 1.0).abs() > 1e-12 * scale * scale {
            return Err(GeometryError::InvalidDirection(e));
        }
        Ok(SpacelikeDirection(e))
    }

    /// The direction with rapidity `chi` out of the time-zero plane and
    /// spatial angle `theta`.
    pub fn from_angle(chi: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        SpacelikeDirection(MVec3::new(chi.sinh(), chi.cosh() * c, chi.cosh() * s))
    }

    pub fn vector(&self) -> MVec3 {
        self.0
    }

    pub fn reflect(&self) -> SpacelikeDirection {
        SpacelikeDirection(self.0.reflect())
    }
}

/// `atan2(e2, e1) + 2π·hint`, with the principal branch `(-π, π]`.
pub fn direction_lifted_angle(e: &SpacelikeDirection, hint: i64) -> f64 {
    e.0.spatial_angle() + TWO_PI * hint as f64
}

/// Integral of `dθ` along a discretised path of directions.
pub fn accumulated_angle(path: &[SpacelikeDirection]) -> f64 {
    path.windows(2)
        .map(|w| principal_angle(w[1].0.spatial_angle() - w[0].0.spatial_angle()))
        .sum()
}

/// Lifted angular interval `(alpha_minus, alpha_plus)` of a path class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LiftedArc {
    pub alpha_minus: f64,
    pub alpha_plus: f64,
}

impl LiftedArc {
    pub fn width(&self) -> f64 {
        self.alpha_plus - self.alpha_minus
    }

    pub fn shifted(&self, offset: f64) -> LiftedArc {
        LiftedArc { alpha_minus: self.alpha_minus + offset, alpha_plus: self.alpha_plus + offset }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeKind {
    Cone,
    Wedge,
    ConeComplement,
}

/// A path class of localisation regions: apex plus a sheet over the region's
/// direction set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePath {
    apex: MVec3,
    kind: ConeKind,
    /// Extreme rays of the underlying convex cone (for a complement: of the
    /// cone whose causal complement this is).
    rays: [MVec3; 4],
    ray_angles: [f64; 4],
    /// Light-like normals; the open convex cone is `{x : ⟨ℓ, x - a⟩ < 0}`.
    normals: [MVec3; 4],
    /// Complement arcs are `(hi + 2πk, lo + 2π(k+1))` of the underlying arc.
    complement_turns: i64,
}

impl ConePath {
    /// A space-like cone with lifted central angle `center` and half-opening
    /// `half_opening ∈ (0, π/2)`.
    pub fn cone(apex: MVec3, center: f64, half_opening: f64) -> Result<Self, GeometryError> {
        if !(half_opening > 0.0 && half_opening < FRAC_PI_2) {
            return Err(GeometryError::Degenerate(format!(
                "cone half-opening {half_opening} outside (0, pi/2)"
            )));
        }
        Self::build(apex, center, half_opening, ConeKind::Cone)
    }

    /// The wedge with edge through `apex` whose direction set is the half
    /// circle centred at `center`.
    pub fn wedge(apex: MVec3, center: f64) -> Result<Self, GeometryError> {
        Self::build(apex, center, FRAC_PI_2, ConeKind::Wedge)
    }

    /// The causal complement of a cone, on the sheet adjacent to the cone's
    /// upper arc endpoint.
    pub fn complement(cone: &ConePath) -> Result<Self, GeometryError> {
        if cone.kind != ConeKind::Cone {
            return Err(GeometryError::UnsupportedKind(cone.kind));
        }
        Ok(ConePath { kind: ConeKind::ConeComplement, complement_turns: 0, ..cone.clone() })
    }

    /// Scene-file style constructor: `center_angle + 2π·sheet` is the lifted
    /// centre. For `ConeComplement` the angles describe the underlying cone.
    pub fn from_parts(
        apex: MVec3,
        center_angle: f64,
        half_opening: f64,
        sheet: i64,
        kind: ConeKind,
    ) -> Result<Self, GeometryError> {
        let center = center_angle + TWO_PI * sheet as f64;
        match kind {
            ConeKind::Cone => Self::cone(apex, center, half_opening),
            ConeKind::Wedge => {
                if (half_opening - FRAC_PI_2).abs() > 1e-12 {
                    return Err(GeometryError::Degenerate(format!(
                        "wedge half-opening must be pi/2, got {half_opening}"
                    )));
                }
                Self::wedge(apex, center)
            }
            ConeKind::ConeComplement => Self::complement(&Self::cone(apex, center, half_opening)?),
        }
    }

    fn build(apex: MVec3, center: f64, half: f64, kind: ConeKind) -> Result<Self, GeometryError> {
        if !apex.is_finite() || !center.is_finite() {
            return Err(GeometryError::Degenerate("non-finite cone data".into()));
        }
        let dir = |t: f64| (t.cos(), t.sin());
        let (c0, s0) = dir(center);
        let (cm, sm) = dir(center - half);
        let (cp, sp) = dir(center + half);
        let lift = half.sin();
        let rays = [
            MVec3::new(0.0, cm, sm),
            MVec3::new(lift, c0, s0),
            MVec3::new(-lift, c0, s0),
            MVec3::new(0.0, cp, sp),
        ];
        let ray_angles = [center - half, center, center, center + half];
        let beta = FRAC_PI_2 - half;
        let (c1, s1) = dir(center - beta);
        let (c2, s2) = dir(center + beta);
        let normals = [
            MVec3::new(1.0, c1, s1),
            MVec3::new(-1.0, c1, s1),
            MVec3::new(1.0, c2, s2),
            MVec3::new(-1.0, c2, s2),
        ];
        Ok(ConePath { apex, kind, rays, ray_angles, normals, complement_turns: 0 })
    }

    pub fn apex(&self) -> MVec3 {
        self.apex
    }

    pub fn kind(&self) -> ConeKind {
        self.kind
    }

    pub fn rays(&self) -> &[MVec3; 4] {
        &self.rays
    }

    pub fn boundary_normals(&self) -> &[MVec3; 4] {
        &self.normals
    }

    fn ray_arc(&self) -> LiftedArc {
        let lo = self.ray_angles.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.ray_angles.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        LiftedArc { alpha_minus: lo, alpha_plus: hi }
    }

    /// Lifted angular arc of the path class.
    pub fn arc(&self) -> LiftedArc {
        let a = self.ray_arc();
        match self.kind {
            ConeKind::ConeComplement => {
                let k = self.complement_turns as f64;
                LiftedArc {
                    alpha_minus: a.alpha_plus + TWO_PI * k,
                    alpha_plus: a.alpha_minus + TWO_PI * (k + 1.0),
                }
            }
            _ => a,
        }
    }

    /// Open-region membership. For complements this asks whether `x` is
    /// causally separated from every point of the underlying cone.
    pub fn contains(&self, x: &MVec3) -> bool {
        match self.kind {
            ConeKind::ConeComplement => {
                let d = *x - self.apex;
                let rays: Vec<MVec3> = self.rays.iter().map(|r| -*r).collect();
                separation_margin(&d, &rays) > GEOMETRY_TOL
            }
            _ => {
                let d = *x - self.apex;
                self.normals.iter().all(|l| l.dot(&d) < 0.0)
            }
        }
    }

    /// Closed containment of one convex region in another, together with the
    /// lifted arcs.
    pub fn contained_in(&self, other: &ConePath) -> Result<bool, GeometryError> {
        for c in [self, other] {
            if c.kind == ConeKind::ConeComplement {
                return Err(GeometryError::UnsupportedKind(c.kind));
            }
        }
        let tol = GEOMETRY_TOL;
        let d = self.apex - other.apex;
        let inside = other.normals.iter().all(|l| {
            let ln = l.euclidean_norm();
            l.dot(&d) <= tol * ln * d.euclidean_norm().max(1.0)
                && self.rays.iter().all(|r| l.dot(r) <= tol * ln * r.euclidean_norm())
        });
        let (a, b) = (self.arc(), other.arc());
        Ok(inside && a.alpha_minus >= b.alpha_minus - tol && a.alpha_plus <= b.alpha_plus + tol)
    }

    /// The same region on the sheet shifted by `offset` radians.
    pub fn shifted(&self, offset: f64) -> ConePath {
        let mut out = self.clone();
        for a in out.ray_angles.iter_mut() {
            *a += offset;
        }
        out
    }

    /// Natural action of the covering Poincaré group: the apex moves by the
    /// projected transformation, ray angles are continued along the canonical
    /// path of the Lorentz part.
    pub fn act(&self, g: &CoveringPoincare) -> Result<ConePath, GeometryError> {
        let path = g.lorentz.path();
        let m = g.lorentz.matrix();
        let mut out = self.clone();
        out.apex = g.apply(&self.apex);
        for i in 0..4 {
            let r = self.rays[i];
            out.ray_angles[i] =
                continue_angle(self.ray_angles[i], |tau| path(tau).apply(&r).spatial_angle())?;
            out.rays[i] = m.apply(&r);
            out.normals[i] = m.apply(&self.normals[i]);
        }
        Ok(out)
    }

    /// Canonical action of the reflection `j` for a `j`-invariant reference
    /// frame: points and rays map under `j`, lifted angles `θ ↦ 2c - θ` where
    /// `c` is the lifted centre of the reference cone.
    pub fn reflect(&self, frame: &ReferenceFrame) -> Result<ConePath, GeometryError> {
        if !frame.is_j_invariant() {
            return Err(GeometryError::NotJInvariant);
        }
        let c = frame.cone_center;
        let mut out = self.clone();
        out.apex = self.apex.reflect();
        for i in 0..4 {
            out.rays[i] = self.rays[i].reflect();
            out.normals[i] = self.normals[i].reflect();
            out.ray_angles[i] = 2.0 * c - self.ray_angles[i];
        }
        if self.kind == ConeKind::ConeComplement {
            out.complement_turns = -self.complement_turns - 1;
        }
        Ok(out)
    }

    /// Equality of kind and complement turns, with every coordinate and lifted
    /// angle within `tol`.
    pub fn approx_eq(&self, other: &ConePath, tol: f64) -> bool {
        let close = |a: &MVec3, b: &MVec3| (*a - *b).euclidean_norm() <= tol;
        self.kind == other.kind
            && self.complement_turns == other.complement_turns
            && close(&self.apex, &other.apex)
            && (0..4).all(|i| {
                close(&self.rays[i], &other.rays[i])
                    && close(&self.normals[i], &other.normals[i])
                    && (self.ray_angles[i] - other.ray_angles[i]).abs() <= tol
            })
    }

    /// Re-expresses the path class over another reference frame.
    pub fn rebase(&self, from: &ReferenceFrame, to: &ReferenceFrame) -> Result<ConePath, GeometryError> {
        to.check_direction_in_cone()?;
        Ok(self.shifted(from.rebase_offset(to)))
    }
}

/// Reference direction and reference cone for path classes.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ReferenceFrame {
    /// Lifted angle assigned to the reference direction `e₀`.
    pub direction_angle: f64,
    pub cone_apex: MVec3,
    /// Lifted central angle of the reference cone.
    pub cone_center: f64,
    pub cone_half_opening: f64,
}

impl Default for ReferenceFrame {
    /// Reference direction at angle 0 with the reference cone inside `W₁`.
    fn default() -> Self {
        ReferenceFrame {
            direction_angle: 0.0,
            cone_apex: MVec3::new(0.0, 1.0, 0.0),
            cone_center: 0.0,
            cone_half_opening: PI / 4.0,
        }
    }
}

impl ReferenceFrame {
    /// A `j`-invariant frame whose reference cone contains the positive
    /// (`positive = true`) or negative `x²`-axis.
    pub fn j_invariant(positive: bool) -> Self {
        let c = if positive { FRAC_PI_2 } else { -FRAC_PI_2 };
        ReferenceFrame {
            direction_angle: c,
            cone_apex: MVec3::ZERO,
            cone_center: c,
            cone_half_opening: PI / 4.0,
        }
    }

    pub fn reference_cone(&self) -> Result<ConePath, GeometryError> {
        ConePath::cone(self.cone_apex, self.cone_center, self.cone_half_opening)
    }

    pub fn is_j_invariant(&self) -> bool {
        let a = self.cone_apex;
        let axis = principal_angle(self.cone_center - FRAC_PI_2);
        a.x0.abs() < 1e-12
            && a.x1.abs() < 1e-12
            && (axis.abs() < 1e-12 || (axis.abs() - PI).abs() < 1e-12)
    }

    fn check_direction_in_cone(&self) -> Result<(), GeometryError> {
        if (self.direction_angle - self.cone_center).abs() < self.cone_half_opening {
            Ok(())
        } else {
            Err(GeometryError::ReferenceOutsideCone)
        }
    }

    /// Common lifted-angle offset taking coordinates over `self` to
    /// coordinates over `to`, connecting the two reference directions by the
    /// shorter arc. Always a multiple of `2π`.
    pub fn rebase_offset(&self, to: &ReferenceFrame) -> f64 {
        let (b, nb) = (self.direction_angle, to.direction_angle);
        let raw = nb - b + principal_angle(b - nb);
        TWO_PI * (raw / TWO_PI).round()
    }
}

// ---------------------------------------------------------------------------
// Causal separation

/// Largest `t` such that some `w = (1, w̄)`, `|w̄| ≤ 1`, has
/// `w̄·r̄ - r₀ ≥ t` for every ray and `w̄·d̄ - d₀ ≥ t`; rays and `d` are
/// normalised. A non-negative value means the open set `d + cone(rays)`
/// misses the closed future light cone.
pub(crate) fn separation_margin(d: &MVec3, rays: &[MVec3]) -> f64 {
    let mut fs: Vec<[f64; 3]> = rays
        .iter()
        .map(|r| {
            let n = r.euclidean_norm();
            [r.x1 / n, r.x2 / n, -r.x0 / n]
        })
        .collect();
    let dn = d.euclidean_norm();
    if dn > 1e-13 {
        fs.push([d.x1 / dn, d.x2 / dn, -d.x0 / dn]);
    }
    max_min_affine_on_disc(&fs)
}

fn max_min_affine_on_disc(fs: &[[f64; 3]]) -> f64 {
    let eval = |w: (f64, f64)| -> f64 {
        fs.iter().map(|f| f[0] * w.0 + f[1] * w.1 + f[2]).fold(f64::INFINITY, f64::min)
    };
    let clamp = |w: (f64, f64)| -> Option<(f64, f64)> {
        let n = w.0.hypot(w.1);
        if n <= 1.0 {
            Some(w)
        } else if n <= 1.0 + 1e-12 {
            Some((w.0 / n, w.1 / n))
        } else {
            None
        }
    };
    let mut best = f64::NEG_INFINITY;
    let mut consider = |w: (f64, f64)| {
        if let Some(w) = clamp(w) {
            best = best.max(eval(w));
        }
    };
    consider((0.0, 0.0));
    consider((1.0, 0.0));
    for f in fs {
        let n = f[0].hypot(f[1]);
        if n > 0.0 {
            consider((f[0] / n, f[1] / n));
        }
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            // (a_i - a_j)·w = c_j - c_i intersected with the unit circle.
            let (a, b, c) = (fs[i][0] - fs[j][0], fs[i][1] - fs[j][1], fs[j][2] - fs[i][2]);
            let nn = a * a + b * b;
            if nn < 1e-24 {
                continue;
            }
            let (px, py) = (a * c / nn, b * c / nn);
            let h2 = 1.0 - (px * px + py * py);
            if h2 >= -1e-12 {
                let h = h2.max(0.0).sqrt() / nn.sqrt();
                consider((px - b * h, py + a * h));
                consider((px + b * h, py - a * h));
            }
            for k in j + 1..fs.len() {
                let (a2, b2, c2) = (fs[i][0] - fs[k][0], fs[i][1] - fs[k][1], fs[k][2] - fs[i][2]);
                let det = a * b2 - b * a2;
                if det.abs() < 1e-14 {
                    continue;
                }
                consider(((c * b2 - b * c2) / det, (a * c2 - c * a2) / det));
            }
        }
    }
    best
}

/// Signed margin by which `C1` and `C2` are causally separated; negative
/// values mean some pair of points is causally connected.
pub fn causal_margin(c1: &ConePath, c2: &ConePath) -> Result<f64, GeometryError> {
    for c in [c1, c2] {
        if c.kind == ConeKind::ConeComplement {
            return Err(GeometryError::UnsupportedKind(c.kind));
        }
    }
    let d = c1.apex - c2.apex;
    let rays: Vec<MVec3> = c1.rays.iter().copied().chain(c2.rays.iter().map(|r| -*r)).collect();
    let future = separation_margin(&d, &rays);
    let flip = |v: &MVec3| MVec3::new(-v.x0, v.x1, v.x2);
    let rays_t: Vec<MVec3> = rays.iter().map(flip).collect();
    let past = separation_margin(&flip(&d), &rays_t);
    Ok(future.min(past))
}

/// Whether no point of `C1` is causally connected to a point of `C2`.
///
/// Regions are open. A margin within [`GEOMETRY_TOL`] of zero means the
/// closures touch: for pairs involving a wedge this is the causal-complement
/// situation and counts as separated; for two cones it is rejected.
pub fn causally_separated(c1: &ConePath, c2: &ConePath) -> Result<bool, GeometryError> {
    let m = causal_margin(c1, c2)?;
    if m > GEOMETRY_TOL {
        Ok(true)
    } else if m < -GEOMETRY_TOL {
        Ok(false)
    } else if c1.kind == ConeKind::Wedge || c2.kind == ConeKind::Wedge {
        Ok(true)
    } else {
        Err(GeometryError::Grazing)
    }
}

fn require_separated(c1: &ConePath, c2: &ConePath) -> Result<(), GeometryError> {
    if causally_separated(c1, c2)? {
        Ok(())
    } else {
        Err(GeometryError::NotSeparated)
    }
}

/// `lo ≤ hi` on lifted angles. Touching endpoints are accepted only if a
/// wedge is involved.
fn angle_le(lo: f64, hi: f64, wedge_involved: bool) -> Result<bool, GeometryError> {
    let gap = hi - lo;
    if gap > GEOMETRY_TOL {
        Ok(true)
    } else if gap < -GEOMETRY_TOL {
        Ok(false)
    } else if wedge_involved {
        Ok(true)
    } else {
        Err(GeometryError::Grazing)
    }
}

fn involves_wedge(c1: &ConePath, c2: &ConePath) -> bool {
    c1.kind == ConeKind::Wedge || c2.kind == ConeKind::Wedge
}

/// `C̃1 < C̃2`: every lifted angle of the first lies below every lifted angle
/// of the second.
pub fn precedes(c1: &ConePath, c2: &ConePath) -> Result<bool, GeometryError> {
    require_separated(c1, c2)?;
    angle_le(c1.arc().alpha_plus, c2.arc().alpha_minus, involves_wedge(c1, c2))
}

/// Relative winding number `N(C̃2, C̃1)`: the integer `n` with
/// `r̃(2πn)·C̃1 < C̃2 < r̃(2π(n+1))·C̃1`.
pub fn relative_winding(c2: &ConePath, c1: &ConePath) -> Result<i64, GeometryError> {
    require_separated(c1, c2)?;
    winding_from_arcs(c2, c1)
}

/// Closed-form winding number from the arcs alone, without the separation
/// precondition check.
pub(crate) fn winding_from_arcs(c2: &ConePath, c1: &ConePath) -> Result<i64, GeometryError> {
    let (a1, a2) = (c1.arc(), c2.arc());
    let w = involves_wedge(c1, c2);
    let x = (a2.alpha_minus - a1.alpha_plus) / TWO_PI;
    let n = (x + 1e-12).floor();
    let lower = angle_le(a1.alpha_plus + TWO_PI * n, a2.alpha_minus, w)?;
    let upper = angle_le(a2.alpha_plus, a1.alpha_minus + TWO_PI * (n + 1.0), w)?;
    if lower && upper {
        Ok(n as i64)
    } else {
        Err(GeometryError::NoValidWinding)
    }
}

/// `N(C̃2, C̃1)` found by scanning `n` over `range` against the defining
/// inequalities `r̃(2πn)·C̃1 < C̃2 < r̃(2π(n+1))·C̃1`, with the rotated
/// copies computed through the group action. `None` if no `n` qualifies.
pub fn winding_by_definition(
    c2: &ConePath,
    c1: &ConePath,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Option<i64>, GeometryError> {
    let below = |a: &ConePath, b: &ConePath| a.arc().alpha_plus <= b.arc().alpha_minus + GEOMETRY_TOL;
    for n in range {
        let lower = c1.act(&CoveringPoincare::rotation(TWO_PI * n as f64))?;
        let upper = c1.act(&CoveringPoincare::rotation(TWO_PI * (n + 1) as f64))?;
        if below(&lower, c2) && below(c2, &upper) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn act(g: &CoveringPoincare, c: &ConePath) -> Result<ConePath, GeometryError> {
    c.act(g)
}

pub fn reflect_path(c: &ConePath, frame: &ReferenceFrame) -> Result<ConePath, GeometryError> {
    c.reflect(frame)
}

pub fn rebase(
    c: &ConePath,
    from: &ReferenceFrame,
    to: &ReferenceFrame,
) -> Result<ConePath, GeometryError> {
    c.rebase(from, to)
}

/// The shortest path class from the reference cone to the standard wedge
/// `W₁ = {|x⁰| < x¹}`.
pub fn standard_wedge_path(frame: &ReferenceFrame) -> ConePath {
    let k = (frame.cone_center / TWO_PI).round();
    ConePath::wedge(MVec3::ZERO, TWO_PI * k).expect("finite wedge data")
}
