//! Operators graded by the background charge `q`.
//!
//! A [`GradedOperator`] maps the sector `q` to `q + shift`, acting there as
//! `e^{2πi P(q)} π_q(obs)` with a quadratic phase polynomial `P` in turns.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;

use super::{FieldError, FieldSymbol, Localization, ObservableWord, PathLabel};
use crate::cone::{relative_winding, standard_wedge_path, ConePath, ReferenceFrame};
use crate::phase::CyclotomicPhase;
use crate::sector::AnyonModel;

/// `a q² + b q + d`, in turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PhasePoly {
    pub a: Rational64,
    pub b: Rational64,
    pub d: Rational64,
}

impl PhasePoly {
    pub fn zero() -> Self {
        PhasePoly::new(Rational64::from_integer(0), Rational64::from_integer(0), Rational64::from_integer(0))
    }

    pub fn new(a: Rational64, b: Rational64, d: Rational64) -> Self {
        PhasePoly { a, b, d }
    }

    pub fn constant(d: Rational64) -> Self {
        PhasePoly { d, ..PhasePoly::zero() }
    }

    pub fn linear(b: Rational64) -> Self {
        PhasePoly { b, ..PhasePoly::zero() }
    }

    pub fn quadratic(a: Rational64) -> Self {
        PhasePoly { a, ..PhasePoly::zero() }
    }

    pub fn eval(&self, q: i64) -> Rational64 {
        let q = Rational64::from_integer(q);
        self.a * q * q + self.b * q + self.d
    }

    pub fn phase_at(&self, q: i64) -> CyclotomicPhase {
        CyclotomicPhase::from_turns(self.eval(q))
    }

    /// `q ↦ P(q + c)`.
    pub fn shifted(&self, c: i64) -> PhasePoly {
        let c = Rational64::from_integer(c);
        PhasePoly {
            a: self.a,
            b: self.b + self.a * c * 2,
            d: self.a * c * c + self.b * c + self.d,
        }
    }

    /// `q ↦ P(-q)`.
    pub fn mirrored(&self) -> PhasePoly {
        PhasePoly { b: -self.b, ..*self }
    }

    /// Whether `e^{2πi P(q)} = 1` for every integer `q`. A quadratic is
    /// integer-valued on `Z` iff it is so at three consecutive integers.
    pub fn is_trivial(&self) -> bool {
        (-1..=1).all(|q| self.eval(q).is_integer())
    }

    /// Equality of the phases at every integer grade.
    pub fn equivalent(&self, other: &PhasePoly) -> bool {
        (*self - *other).is_trivial()
    }
}

impl Add for PhasePoly {
    type Output = PhasePoly;
    fn add(self, o: PhasePoly) -> PhasePoly {
        PhasePoly { a: self.a + o.a, b: self.b + o.b, d: self.d + o.d }
    }
}

impl Neg for PhasePoly {
    type Output = PhasePoly;
    fn neg(self) -> PhasePoly {
        PhasePoly { a: -self.a, b: -self.b, d: -self.d }
    }
}

impl Sub for PhasePoly {
    type Output = PhasePoly;
    fn sub(self, o: PhasePoly) -> PhasePoly {
        self + (-o)
    }
}

impl fmt::Display for PhasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})q² + ({})q + ({})", self.a, self.b, self.d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradedOperator {
    pub shift: i64,
    pub phase: PhasePoly,
    pub obs: ObservableWord,
}

impl GradedOperator {
    pub fn identity() -> Self {
        GradedOperator { shift: 0, phase: PhasePoly::zero(), obs: ObservableWord::unit() }
    }

    /// Gauge transformation `V(t) = Σ_q e^{2πi q t} E_q`.
    pub fn gauge(t: Rational64) -> Self {
        GradedOperator { phase: PhasePoly::linear(t), ..GradedOperator::identity() }
    }

    /// Twist operator with eigenvalue `(ω^{1/2})^{q²(2n+1)}` on the sector `q`.
    pub fn twist(model: &AnyonModel, n: i64) -> Self {
        let h = model.omega_sqrt.turns() * Rational64::from_integer(2 * n + 1);
        GradedOperator { phase: PhasePoly::quadratic(h), ..GradedOperator::identity() }
    }

    pub fn phase_at(&self, q: i64) -> CyclotomicPhase {
        self.phase.phase_at(q)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedOperator) -> GradedOperator {
        GradedOperator {
            shift: self.shift + other.shift,
            phase: self.phase.shifted(other.shift) + other.phase,
            obs: self.obs.twisted(other.shift).concat(&other.obs),
        }
    }

    pub fn adjoint(&self) -> GradedOperator {
        GradedOperator {
            shift: -self.shift,
            phase: -self.phase.shifted(-self.shift),
            obs: self.obs.star().twisted(-self.shift),
        }
    }

    /// Same shift and observable, phases equal at every grade.
    pub fn equivalent(&self, other: &GradedOperator) -> bool {
        self.shift == other.shift && self.obs == other.obs && self.phase.equivalent(&other.phase)
    }

    /// Whether the operator is a grade-independent multiple of `f(shift, obs)`.
    pub fn is_scalar_multiple_of_field(&self) -> bool {
        PhasePoly { d: Rational64::from_integer(0), ..self.phase }.is_trivial()
    }
}

impl fmt::Display for GradedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shift {} phase {} obs {}", self.shift, self.phase, self.obs)
    }
}

/// `f(c, A)` as the shift by `c` with trivial phase.
pub fn graded_form(sym: &FieldSymbol) -> GradedOperator {
    GradedOperator { shift: sym.charge, phase: PhasePoly::zero(), obs: sym.obs.clone() }
}

pub fn graded_compose(g1: &GradedOperator, g2: &GradedOperator) -> GradedOperator {
    g1.compose(g2)
}

/// `Z f Z*` for the twist operator of winding `n`.
pub fn twist_conjugate_with_winding(sym: &FieldSymbol, n: i64, model: &AnyonModel) -> GradedOperator {
    let z = GradedOperator::twist(model, n);
    z.compose(&graded_form(sym)).compose(&z.adjoint())
}

/// `Z(C̃2, C̃1) f Z(C̃2, C̃1)*`.
pub fn twist_conjugate(
    sym: &FieldSymbol,
    c2: &ConePath,
    c1: &ConePath,
    model: &AnyonModel,
) -> Result<GradedOperator, FieldError> {
    let n = relative_winding(c2, c1)?;
    Ok(twist_conjugate_with_winding(sym, n, model))
}

/// Outcome of the twisted locality check for `F₂` against `Z F₁ Z*`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedLocality {
    pub winding: i64,
    /// Grade-wise phase of `F₂·ZF₁Z*` relative to `ZF₁Z*·F₂` once the
    /// exchange relation is used; trivial iff the commutator vanishes.
    pub defect: PhasePoly,
}

impl TwistedLocality {
    pub fn holds(&self) -> bool {
        self.defect.is_trivial()
    }
}

/// Checks `[F₂, Z(C̃2,C̃1) F₁ Z(C̃2,C̃1)*] = 0` grade by grade, using
/// `F₂F₁ = r F₁F₂` with the exchange phase `r` supplied by `exchange_turns`.
pub fn twisted_locality_with(
    f2: &FieldSymbol,
    f1: &FieldSymbol,
    n: i64,
    exchange_turns: Rational64,
    model: &AnyonModel,
) -> TwistedLocality {
    let g1 = twist_conjugate_with_winding(f1, n, model);
    let g2 = graded_form(f2);
    let left = g2.compose(&g1);
    let right = g1.compose(&g2);
    TwistedLocality {
        winding: n,
        defect: left.phase + PhasePoly::constant(exchange_turns) - right.phase,
    }
}

/// Twisted locality for causally separated localizations, with the
/// exchange phase `ω^{c1 c2 (2n+1)}`.
pub fn twisted_locality(
    f2: &FieldSymbol,
    f1: &FieldSymbol,
    model: &AnyonModel,
) -> Result<TwistedLocality, FieldError> {
    let (p2, p1) = (
        f2.loc.cone_path().ok_or(FieldError::Delocalized)?,
        f1.loc.cone_path().ok_or(FieldError::Delocalized)?,
    );
    let n = relative_winding(p2, p1)?;
    let r = model.r_phase(f1.charge, f2.charge, n).turns();
    Ok(twisted_locality_with(f2, f1, n, r, model))
}

fn cpt_twist(model: &AnyonModel, frame: &ReferenceFrame) -> Result<PhasePoly, FieldError> {
    let we = standard_wedge_path(frame);
    let jwe = we.reflect(frame)?;
    let n0 = relative_winding(&we, &jwe)?;
    Ok(GradedOperator::twist(model, n0).phase)
}

/// `Θ G Θ⁻¹` for `Θ = Z* J`, `Z = Z(W̃e, j·W̃e)`, with the charge
/// conjugation phase per unit charge set to `gauge`.
pub fn cpt_conjugate_with_gauge(
    op: &GradedOperator,
    model: &AnyonModel,
    frame: &ReferenceFrame,
    gauge: CyclotomicPhase,
) -> Result<GradedOperator, FieldError> {
    let z = cpt_twist(model, frame)?;
    let c = op.shift;
    let kappa = PhasePoly::constant(gauge.turns() * Rational64::from_integer(c));
    Ok(GradedOperator {
        shift: -c,
        phase: z - op.phase.mirrored() - z.shifted(-c) + kappa,
        obs: op.obs.reflected(),
    })
}

/// `Θ G Θ⁻¹` with trivial charge conjugation phase.
pub fn cpt_conjugate_graded(
    op: &GradedOperator,
    model: &AnyonModel,
    frame: &ReferenceFrame,
) -> Result<GradedOperator, FieldError> {
    cpt_conjugate_with_gauge(op, model, frame, CyclotomicPhase::ONE)
}

pub fn reflect_localization(loc: &Localization, frame: &ReferenceFrame) -> Result<Localization, FieldError> {
    Ok(match loc {
        Localization::Path { label, path } => Localization::Path {
            label: PathLabel { name: label.name.clone(), reflected: !label.reflected },
            path: path.reflect(frame)?,
        },
        Localization::Delocalized => Localization::Delocalized,
    })
}

/// `Θ f(c,A) Θ⁻¹` together with its reflected localization.
pub fn cpt_conjugate(
    sym: &FieldSymbol,
    model: &AnyonModel,
    frame: &ReferenceFrame,
) -> Result<(GradedOperator, Localization), FieldError> {
    let op = cpt_conjugate_graded(&graded_form(sym), model, frame)?;
    Ok((op, reflect_localization(&sym.loc, frame)?))
}
