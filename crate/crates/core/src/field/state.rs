//! Vectors `f(q, A)Ω`, the pseudo-Tomita map and formal vacuum overlaps.

use std::fmt;

use super::{FieldError, FieldSymbol, Localization, ObservableWord};
use crate::cone::{relative_winding, standard_wedge_path, ReferenceFrame};
use crate::phase::CyclotomicPhase;
use crate::sector::AnyonModel;

/// `coeff · f(charge, obs)Ω`, i.e. the vector `(charge, π₀(obs)Ω₀)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub charge: i64,
    pub obs: ObservableWord,
    pub coeff: CyclotomicPhase,
    /// Localization of the generating field.
    pub loc: Localization,
}

impl StateVector {
    pub fn vacuum(loc: Localization) -> Self {
        StateVector { charge: 0, obs: ObservableWord::unit(), coeff: CyclotomicPhase::ONE, loc }
    }

    pub fn from_field(sym: &FieldSymbol) -> Self {
        StateVector {
            charge: sym.charge,
            obs: sym.obs.clone(),
            coeff: CyclotomicPhase::ONE,
            loc: sym.loc.clone(),
        }
    }

    pub fn same_as(&self, other: &StateVector) -> bool {
        self.charge == other.charge
            && self.obs == other.obs
            && self.coeff == other.coeff
            && FieldSymbol::new(0, ObservableWord::unit(), self.loc.clone())
                .same_as(&FieldSymbol::new(0, ObservableWord::unit(), other.loc.clone()))
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ({}, {})", self.coeff, self.charge, self.obs)
    }
}

/// The reduced field `F(s, c; A)`: acts on the sector `q = s` as
/// `(q, B) ↦ (q + c, γ^q(A)·B)` and annihilates every other sector.
pub fn apply_reduced(source: i64, charge: i64, obs: &ObservableWord, v: &StateVector) -> Option<StateVector> {
    (v.charge == source).then(|| StateVector {
        charge: v.charge + charge,
        obs: obs.twisted(v.charge).concat(&v.obs),
        coeff: v.coeff,
        loc: v.loc.clone(),
    })
}

/// `S: λ·(q, A) ↦ λ̄·(-q, γ^{-q}(A*))` for vectors generated from the
/// standard wedge path.
pub fn tomita_s(v: &StateVector, frame: &ReferenceFrame) -> Result<StateVector, FieldError> {
    let path = v.loc.cone_path().ok_or(FieldError::OutsideStandardWedge)?;
    if !path.contained_in(&standard_wedge_path(frame))? {
        return Err(FieldError::OutsideStandardWedge);
    }
    Ok(StateVector {
        charge: -v.charge,
        obs: v.obs.star().twisted(-v.charge),
        coeff: v.coeff.conj(),
        loc: v.loc.clone(),
    })
}

/// Formal vacuum overlap `coeff · ⟨bra Ω, ket Ω⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlap {
    pub coeff: CyclotomicPhase,
    pub bra: FieldSymbol,
    pub ket: FieldSymbol,
}

impl Overlap {
    pub fn new(bra: FieldSymbol, ket: FieldSymbol) -> Self {
        Overlap { coeff: CyclotomicPhase::ONE, bra, ket }
    }
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] <{} Ω, {} Ω>", self.coeff, self.bra, self.ket)
    }
}

/// `⟨F₂Ω, F₁Ω⟩ = ω^{c²} ⟨F₁*Ω, F₂*Ω⟩` for equal charges `c` and
/// `N(C̃2, C̃1) = -1`.
pub fn vacuum_swap(o: &Overlap, model: &AnyonModel) -> Result<Overlap, FieldError> {
    let (f2, f1) = (&o.bra, &o.ket);
    if f2.charge != f1.charge {
        return Err(FieldError::Guard(format!("charges {} and {} differ", f2.charge, f1.charge)));
    }
    let p2 = f2.loc.cone_path().ok_or(FieldError::Delocalized)?;
    let p1 = f1.loc.cone_path().ok_or(FieldError::Delocalized)?;
    let n = relative_winding(p2, p1)?;
    if n != -1 {
        return Err(FieldError::Guard(format!("winding number {n} instead of -1")));
    }
    Ok(Overlap {
        coeff: o.coeff * model.sector_phase(f2.charge),
        bra: f1.adjoint(),
        ket: f2.adjoint(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::sym;
    use super::super::{fuse, Localization};
    use super::*;
    use crate::cone::ConePath;
    use crate::minkowski::MVec3;
    use crate::sector::ChargeGroup;
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn in_wedge(c: i64, obs: &str) -> StateVector {
        let path = ConePath::cone(MVec3::new(0.0, 1.0, 0.0), 0.1, 0.3).unwrap();
        StateVector::from_field(&FieldSymbol::new(c, ObservableWord::parse(obs).unwrap(), Localization::path("C", path)))
    }

    #[test]
    fn tomita_examples() {
        let frame = ReferenceFrame::default();
        let v = in_wedge(1, "A");
        let s = tomita_s(&v, &frame).unwrap();
        assert_eq!(s.charge, -1);
        assert_eq!(s.obs.to_string(), "γ^-1(A*)");
        assert!(tomita_s(&s, &frame).unwrap().same_as(&v));
        let o = in_wedge(0, "A B");
        assert_eq!(tomita_s(&o, &frame).unwrap().obs, o.obs.star());
        let outside = StateVector::from_field(&sym(1, "A", "D", 3.0));
        assert_eq!(tomita_s(&outside, &frame), Err(FieldError::OutsideStandardWedge));
        let shifted = in_wedge(1, "A");
        let other_sheet = StateVector {
            loc: Localization::path("C", shifted.loc.cone_path().unwrap().shifted(std::f64::consts::TAU)),
            ..shifted
        };
        assert_eq!(tomita_s(&other_sheet, &frame), Err(FieldError::OutsideStandardWedge));
    }

    #[test]
    fn reduced_fields_select_the_source() {
        let vac = StateVector::vacuum(Localization::Delocalized);
        let a = ObservableWord::atom("A");
        let b = ObservableWord::atom("B");
        assert!(apply_reduced(1, 2, &a, &vac).is_none());
        let v = apply_reduced(0, 2, &b, &vac).unwrap();
        let w = apply_reduced(2, 1, &a, &v).unwrap();
        let fused = fuse(&FieldSymbol::new(1, a, Localization::Delocalized), &FieldSymbol::new(2, b, Localization::Delocalized));
        assert_eq!((w.charge, w.obs), (fused.charge, fused.obs));
    }

    #[test]
    fn vacuum_swap_examples() {
        // N(C̃2, C̃1) = -1.
        let f1 = sym(1, "A", "C1", 0.0);
        let f2 = sym(1, "B", "C2", -std::f64::consts::PI);
        let fermion = AnyonModel::fermion();
        let swapped = vacuum_swap(&Overlap::new(f2.clone(), f1.clone()), &fermion).unwrap();
        assert_eq!(swapped.coeff, CyclotomicPhase::new(1, 2));
        assert!(swapped.bra.same_as(&f1.adjoint()));
        assert!(swapped.ket.same_as(&f2.adjoint()));
        assert!(matches!(vacuum_swap(&swapped, &fermion), Err(FieldError::Guard(_))));
        let boson = AnyonModel::from_spin(ChargeGroup::Z, Rational64::from_integer(0));
        assert_eq!(vacuum_swap(&Overlap::new(f2.clone(), f1.clone()), &boson).unwrap().coeff, CyclotomicPhase::ONE);
        let mixed = Overlap::new(sym(2, "B", "C2", -std::f64::consts::PI), f1);
        assert!(matches!(vacuum_swap(&mixed, &fermion), Err(FieldError::Guard(_))));
    }

    proptest! {
        #[test]
        fn tomita_is_an_antilinear_involution(c in -8i64..8, k in 0i64..12, m in 1i64..12, t in -3i64..3) {
            let frame = ReferenceFrame::default();
            let v = StateVector { coeff: CyclotomicPhase::new(k, m), ..in_wedge(c, "A B*") };
            let v = StateVector { obs: v.obs.twisted(t), ..v };
            let s = tomita_s(&v, &frame).unwrap();
            prop_assert_eq!(s.coeff, v.coeff.conj());
            prop_assert!(tomita_s(&s, &frame).unwrap().same_as(&v));
        }
    }
}
