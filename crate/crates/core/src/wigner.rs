//! Single-particle representations of the covering Poincaré group with
//! arbitrary real spin, evaluated pointwise on the mass shell.
//!
//! `(U(a, g̃)ψ)(p) = e^{isΩ(g̃, Λ⁻¹p)} e^{ia·p} ψ(Λ⁻¹p)`, where `Ω` is the
//! lifted Wigner rotation for the pure standard boosts. The invariant measure
//! is `d²p / 2ω(p)`.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::minkowski::{continue_angle, minkowski_inner, CoveringLorentz, CoveringPoincare, LorentzMatrix, MVec3, MinkowskiError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WignerError {
    #[error("mass must be positive and finite, got {0}")]
    InvalidMass(f64),
    #[error("momentum must be finite")]
    InvalidMomentum,
    #[error(transparent)]
    Lift(#[from] MinkowskiError),
}

/// A point `(ω(p), p₁, p₂)` of the upper mass shell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassShellPoint {
    mass: f64,
    p1: f64,
    p2: f64,
}

impl MassShellPoint {
    pub fn new(mass: f64, p1: f64, p2: f64) -> Result<Self, WignerError> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(WignerError::InvalidMass(mass));
        }
        if !(p1.is_finite() && p2.is_finite()) {
            return Err(WignerError::InvalidMomentum);
        }
        Ok(MassShellPoint { mass, p1, p2 })
    }

    pub fn at_rest(mass: f64) -> Result<Self, WignerError> {
        MassShellPoint::new(mass, 0.0, 0.0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spatial(&self) -> (f64, f64) {
        (self.p1, self.p2)
    }

    pub fn energy(&self) -> f64 {
        (self.p1 * self.p1 + self.p2 * self.p2 + self.mass * self.mass).sqrt()
    }

    pub fn four_vector(&self) -> MVec3 {
        MVec3::new(self.energy(), self.p1, self.p2)
    }

    /// `Λp`, re-projected onto the shell through its spatial part.
    pub fn transformed(&self, m: &LorentzMatrix) -> MassShellPoint {
        let v = m.apply(&self.four_vector());
        MassShellPoint { mass: self.mass, p1: v.x1, p2: v.x2 }
    }

    /// `-jp = (p⁰, p¹, -p²)`.
    pub fn reflected(&self) -> MassShellPoint {
        MassShellPoint { p2: -self.p2, ..*self }
    }
}

/// The pure boost taking `(m, 0, 0)` to `p`.
pub fn standard_boost(p: &MassShellPoint) -> LorentzMatrix {
    LorentzMatrix::pure_boost_to(&p.four_vector().scale(1.0 / p.mass))
}

/// `W(Λ, p) = B_{Λp}⁻¹ Λ B_p`, a rotation.
pub fn wigner_matrix(m: &LorentzMatrix, p: &MassShellPoint) -> LorentzMatrix {
    standard_boost(&p.transformed(m)).inverse().compose(m).compose(&standard_boost(p))
}

fn wigner_angle(m: &LorentzMatrix, p: &MassShellPoint) -> f64 {
    let w = wigner_matrix(m, p);
    let w = w.matrix();
    w[(2, 1)].atan2(w[(1, 1)])
}

/// Lifted Wigner rotation `Ω(g̃, p)`, continued from `0` along the canonical
/// path of `g̃`.
pub fn wigner_rotation(g: &CoveringLorentz, p: &MassShellPoint) -> Result<f64, WignerError> {
    let path = g.path();
    Ok(continue_angle(0.0, |tau| wigner_angle(&path(tau), p))?)
}

/// [`wigner_rotation`] with a fixed number of continuation steps.
pub fn wigner_rotation_steps(g: &CoveringLorentz, p: &MassShellPoint, steps: usize) -> f64 {
    let path = g.path();
    let mut prev = wigner_angle(&path(0.0), p);
    let mut total = 0.0;
    for k in 1..=steps {
        let cur = wigner_angle(&path(k as f64 / steps as f64), p);
        let mut inc = cur - prev;
        inc -= TAU * ((inc + PI) / TAU).floor();
        total += inc;
        prev = cur;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinValue(pub f64);

impl From<Rational64> for SpinValue {
    fn from(r: Rational64) -> Self {
        SpinValue(r.to_f64().unwrap_or(f64::NAN))
    }
}

/// `weight · exp(-|p̄ - center|² / 2 width²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub weight: Complex64,
    pub center: [f64; 2],
    pub width: f64,
}

#[derive(Debug, Clone)]
enum Node {
    Gaussians(Vec<Gaussian>),
    Scaled(Complex64, WaveFunction),
    Rep { g: CoveringPoincare, spin: f64, inner: WaveFunction },
    J(WaveFunction),
}

/// A lazily composed wave function on the mass shell.
#[derive(Debug, Clone)]
pub struct WaveFunction(Arc<Node>);

impl WaveFunction {
    pub fn gaussians(terms: Vec<Gaussian>) -> Self {
        WaveFunction(Arc::new(Node::Gaussians(terms)))
    }

    pub fn gaussian(weight: Complex64, center: [f64; 2], width: f64) -> Self {
        WaveFunction::gaussians(vec![Gaussian { weight, center, width }])
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        WaveFunction(Arc::new(Node::Scaled(c, self.clone())))
    }

    pub fn eval(&self, p: &MassShellPoint) -> Result<Complex64, WignerError> {
        match &*self.0 {
            Node::Gaussians(terms) => Ok(terms
                .iter()
                .map(|t| {
                    let d1 = p.p1 - t.center[0];
                    let d2 = p.p2 - t.center[1];
                    t.weight * (-(d1 * d1 + d2 * d2) / (2.0 * t.width * t.width)).exp()
                })
                .sum()),
            Node::Scaled(c, inner) => Ok(c * inner.eval(p)?),
            Node::Rep { g, spin, inner } => {
                let inv = g.lorentz.matrix().inverse();
                let k = p.transformed(&inv);
                let omega = wigner_rotation(&g.lorentz, &k)?;
                let a_dot_p = minkowski_inner(&g.translation, &p.four_vector());
                Ok(Complex64::from_polar(1.0, spin * omega + a_dot_p) * inner.eval(&k)?)
            }
            Node::J(inner) => Ok(inner.eval(&p.reflected())?.conj()),
        }
    }
}

/// `U(a, g̃)ψ` for spin `s`.
pub fn apply_rep(g: &CoveringPoincare, s: SpinValue, psi: &WaveFunction) -> WaveFunction {
    WaveFunction(Arc::new(Node::Rep { g: *g, spin: s.0, inner: psi.clone() }))
}

/// `(U(j)ψ)(p) = conj ψ(-jp)`.
pub fn apply_j(psi: &WaveFunction) -> WaveFunction {
    WaveFunction(Arc::new(Node::J(psi.clone())))
}

/// `∫ |ψ|² d²p / 2ω` by the trapezoid rule on `[-half_width, half_width]²`
/// with `n` intervals per axis.
pub fn norm_squared(psi: &WaveFunction, mass: f64, half_width: f64, n: usize) -> Result<f64, WignerError> {
    let h = 2.0 * half_width / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        let wi = if i == 0 || i == n { 0.5 } else { 1.0 };
        for k in 0..=n {
            let wk = if k == 0 || k == n { 0.5 } else { 1.0 };
            let p = MassShellPoint::new(mass, -half_width + i as f64 * h, -half_width + k as f64 * h)?;
            sum += wi * wk * psi.eval(&p)?.norm_sqr() / (2.0 * p.energy());
        }
    }
    Ok(sum * h * h)
}

/// Largest `|Ω(g̃₁g̃₂, p) - Ω(g̃₁, Λ₂p) - Ω(g̃₂, p)|` over the samples.
pub fn verify_cocycle(
    g1: &CoveringLorentz,
    g2: &CoveringLorentz,
    samples: &[MassShellPoint],
) -> Result<f64, WignerError> {
    let g12 = g1.compose(g2)?;
    let mut worst = 0.0f64;
    for p in samples {
        let lhs = wigner_rotation(&g12, p)?;
        let rhs = wigner_rotation(g1, &p.transformed(g2.matrix()))? + wigner_rotation(g2, p)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Residuals of the `U(j)` relations, maximised over test functions and samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JRelations {
    /// `U(j)U(g̃)U(j) = U(jg̃j)`.
    pub conjugation: f64,
    /// `U(j)U(x)U(j) = U(jx)`.
    pub translation: f64,
    /// `U(r̃(2π)) = e^{2πis}`.
    pub rotation: f64,
}

impl JRelations {
    pub const TOLERANCE: f64 = 1e-8;

    pub fn passed(&self) -> bool {
        self.conjugation.max(self.translation).max(self.rotation) < Self::TOLERANCE
    }
}

fn max_diff(
    a: &WaveFunction,
    b: &WaveFunction,
    samples: &[MassShellPoint],
) -> Result<f64, WignerError> {
    let mut worst = 0.0f64;
    for p in samples {
        worst = worst.max((a.eval(p)? - b.eval(p)?).norm());
    }
    Ok(worst)
}

pub fn verify_j_relations(
    g: &CoveringPoincare,
    s: SpinValue,
    tests: &[WaveFunction],
    samples: &[MassShellPoint],
) -> Result<JRelations, WignerError> {
    let jgj = g.reflect_conjugate();
    let x = CoveringPoincare::translation(g.translation);
    let jx = CoveringPoincare::translation(g.translation.reflect());
    let r2pi = CoveringPoincare::rotation(TAU);
    let spin_phase = Complex64::from_polar(1.0, TAU * s.0);
    let mut out = JRelations { conjugation: 0.0, translation: 0.0, rotation: 0.0 };
    for psi in tests {
        let sandwich = |h: &CoveringPoincare| apply_j(&apply_rep(h, s, &apply_j(psi)));
        out.conjugation = out.conjugation.max(max_diff(&sandwich(g), &apply_rep(&jgj, s, psi), samples)?);
        out.translation = out.translation.max(max_diff(&sandwich(&x), &apply_rep(&jx, s, psi), samples)?);
        out.rotation = out.rotation.max(max_diff(&apply_rep(&r2pi, s, psi), &psi.scaled(spin_phase), samples)?);
    }
    Ok(out)
}
