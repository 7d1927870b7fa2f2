//! Abelian anyon models: a charge group generated by one automorphism, its
//! statistics phase `ω`, a chosen square root `ω^{1/2}` and the spin.
//!
//! Charges are always lifted integers, also for `Z_N` models. All phase
//! formulas are evaluated exactly.

use std::fmt;

use num_rational::Rational64;
use thiserror::Error;

use crate::phase::CyclotomicPhase;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SectorError {
    #[error("labels ({alpha}, {beta}, {gamma}, {delta}) are not abelian-compatible")]
    IncompatibleLabels { alpha: i64, beta: i64, gamma: i64, delta: i64 },
}

/// The group of superselection sectors, `Z` or `Z_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ChargeGroup {
    Z,
    ZN(u32),
}

impl ChargeGroup {
    /// Representative of `q` in the group: `q` itself for `Z`, `q mod N` otherwise.
    pub fn project(&self, q: i64) -> i64 {
        match *self {
            ChargeGroup::Z => q,
            ChargeGroup::ZN(n) => q.rem_euclid(n as i64),
        }
    }
}

impl fmt::Display for ChargeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChargeGroup::Z => write!(f, "Z"),
            ChargeGroup::ZN(n) => write!(f, "Z_{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SpinRepr {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AnyonModel {
    pub group: ChargeGroup,
    pub omega: CyclotomicPhase,
    pub omega_sqrt: CyclotomicPhase,
    #[serde(with = "spin_serde")]
    pub spin: Rational64,
    /// Particle mass for the single-particle representation checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mass: Option<f64>,
}

mod spin_serde {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::SpinRepr;

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        SpinRepr { p: *r.numer(), q: *r.denom() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let r = SpinRepr::deserialize(d)?;
        if r.q == 0 {
            return Err(serde::de::Error::custom("spin denominator must be nonzero"));
        }
        Ok(Rational64::new(r.p, r.q))
    }
}

/// Superselection channel `(source, charge, range)` with `range = source + charge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Channel {
    source: i64,
    charge: i64,
}

impl Channel {
    pub fn new(source: i64, charge: i64) -> Self {
        Channel { source, charge }
    }

    /// The channel with the given source and range, if `range - source` is its charge.
    pub fn from_labels(source: i64, charge: i64, range: i64) -> Option<Self> {
        (range == source + charge).then_some(Channel { source, charge })
    }

    pub fn source(&self) -> i64 {
        self.source
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn range(&self) -> i64 {
        self.source + self.charge
    }
}

/// One named condition checked by [`validate_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<ModelCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ModelCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl AnyonModel {
    /// A model whose statistics phase is `e^{2πi spin}`. The square root is
    /// `e^{πi spin}`, or its negative when only that one is `Z_N`-periodic.
    pub fn from_spin(group: ChargeGroup, spin: Rational64) -> Self {
        let half = CyclotomicPhase::from_turns(spin / 2);
        let omega_sqrt = match group {
            ChargeGroup::ZN(n) if !half.pow_product(&[n as i64, n as i64]).is_one() => {
                half * CyclotomicPhase::new(1, 2)
            }
            _ => half,
        };
        AnyonModel { group, omega: CyclotomicPhase::from_turns(spin), omega_sqrt, spin, mass: None }
    }

    /// `Z_2` with `ω = -1`, `ω^{1/2} = i`, spin `1/2`.
    pub fn fermion() -> Self {
        Self::from_spin(ChargeGroup::ZN(2), Rational64::new(1, 2))
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = Some(mass);
        self
    }

    /// `ω_q = ω^{q²}`.
    pub fn sector_phase(&self, q: i64) -> CyclotomicPhase {
        self.omega.pow_product(&[q, q])
    }

    /// Spin of the sector `q`, `s q² mod 1`.
    pub fn sector_spin(&self, q: i64) -> Rational64 {
        let s = self.spin * Rational64::from_integer(q * q);
        s - s.floor()
    }

    /// The conjugate charge and whether the two sector phases agree.
    pub fn conjugate_sector(&self, q: i64) -> (i64, bool) {
        (-q, self.sector_phase(-q) == self.sector_phase(q))
    }

    /// Exchange phase `ω^{c1 c2 (2n+1)}` for relative winding number `n`.
    pub fn r_phase(&self, c1: i64, c2: i64, n: i64) -> CyclotomicPhase {
        self.omega.pow_product(&[c1, c2, 2 * n + 1])
    }

    /// `(ω_α ω_γ / ω_β ω_δ)^n` for abelian-compatible labels
    /// `β = α + c1`, `δ = α + c2`, `γ = α + c1 + c2`.
    pub fn monodromy_prefactor(
        &self,
        alpha: i64,
        beta: i64,
        gamma: i64,
        delta: i64,
        n: i64,
    ) -> Result<CyclotomicPhase, SectorError> {
        let (c1, c2) = (beta - alpha, delta - alpha);
        if gamma != alpha + c1 + c2 {
            return Err(SectorError::IncompatibleLabels { alpha, beta, gamma, delta });
        }
        let ratio = self.sector_phase(alpha) * self.sector_phase(gamma)
            / (self.sector_phase(beta) * self.sector_phase(delta));
        Ok(ratio.pow(n))
    }

    /// Twist-operator eigenvalue `(ω^{1/2})^{q²(2n+1)}` on the sector `q`.
    pub fn twist_phase(&self, q: i64, n: i64) -> CyclotomicPhase {
        self.omega_sqrt.pow_product(&[q, q, 2 * n + 1])
    }
}

/// Checks spin-statistics, the square root and, for `Z_N`, that all sector
/// and twist phases are functions on `Z_N`.
pub fn validate_model(model: &AnyonModel) -> ValidationReport {
    let mut checks = Vec::new();
    let spin_phase = CyclotomicPhase::from_turns(model.spin);
    checks.push(ModelCheck {
        name: "spin-statistics",
        passed: spin_phase == model.omega,
        detail: format!("e^(2 pi i s) = {spin_phase}, omega = {}", model.omega),
    });
    let sq = model.omega_sqrt.pow(2);
    checks.push(ModelCheck {
        name: "square-root",
        passed: sq == model.omega,
        detail: format!("(omega^1/2)^2 = {sq}"),
    });
    if let ChargeGroup::ZN(n) = model.group {
        let n = n as i64;
        let wn = model.omega.pow(n);
        checks.push(ModelCheck {
            name: "omega^N = 1",
            passed: wn.is_one(),
            detail: format!("omega^{n} = {wn}"),
        });
        let rn = model.omega_sqrt.pow_product(&[n, n]);
        checks.push(ModelCheck {
            name: "(omega^1/2)^(N^2) = 1",
            passed: rn.is_one(),
            detail: format!("(omega^1/2)^{} = {rn}", n * n),
        });
    }
    if let Some(m) = model.mass {
        checks.push(ModelCheck {
            name: "mass > 0",
            passed: m.is_finite() && m > 0.0,
            detail: format!("mass = {m}"),
        });
    }
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyclic(n: u32, k: i64, m: i64, ks: i64, ms: i64, spin: Rational64) -> AnyonModel {
        AnyonModel {
            group: ChargeGroup::ZN(n),
            omega: CyclotomicPhase::new(k, m),
            omega_sqrt: CyclotomicPhase::new(ks, ms),
            spin,
            mass: None,
        }
    }

    #[test]
    fn sector_phase_examples() {
        let f = AnyonModel::fermion();
        assert_eq!(f.sector_phase(0), CyclotomicPhase::ONE);
        assert_eq!(f.sector_phase(1), CyclotomicPhase::new(1, 2));
        let m = AnyonModel::from_spin(ChargeGroup::ZN(3), Rational64::new(1, 3));
        assert_eq!(m.sector_phase(2), CyclotomicPhase::new(1, 3));
    }

    #[test]
    fn conjugate_sector_examples() {
        let m = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(1, 7));
        assert_eq!(m.conjugate_sector(3), (-3, true));
        assert_eq!(m.conjugate_sector(0), (0, true));
        let z5 = AnyonModel::from_spin(ChargeGroup::ZN(5), Rational64::new(2, 5));
        let (c, same) = z5.conjugate_sector(2);
        assert!(same);
        assert_eq!(z5.group.project(c), 3);
        // ω^4 = ω^9 for ω^5 = 1: the conjugate's lifted and projected phases agree.
        assert_eq!(z5.sector_phase(2), z5.sector_phase(3));
    }

    #[test]
    fn channels_fuse_additively() {
        let e = Channel::new(2, -5);
        assert_eq!(e.range(), -3);
        assert_eq!(Channel::from_labels(2, -5, -3), Some(e));
        assert_eq!(Channel::from_labels(2, -5, 3), None);
    }

    #[test]
    fn r_phase_examples() {
        let f = AnyonModel::fermion();
        assert_eq!(f.r_phase(1, 1, 0), CyclotomicPhase::new(1, 2));
        let m = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(1, 9));
        assert_eq!(m.r_phase(2, 3, -1), m.r_phase(2, 3, 0).inverse());
        let semion = cyclic(4, 1, 4, 1, 8, Rational64::new(1, 4));
        assert_eq!(semion.r_phase(1, 2, 0), CyclotomicPhase::new(1, 2));
    }

    #[test]
    fn monodromy_examples() {
        let m = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(1, 5));
        assert_eq!(m.monodromy_prefactor(3, 4, 6, 5, 0).unwrap(), CyclotomicPhase::ONE);
        assert_eq!(m.monodromy_prefactor(0, 1, 2, 1, 3).unwrap(), m.omega.pow(6));
        assert!(m.monodromy_prefactor(0, 1, 3, 1, 1).is_err());
    }

    #[test]
    fn twist_examples() {
        let f = AnyonModel::fermion();
        assert_eq!(f.twist_phase(0, 5), CyclotomicPhase::ONE);
        assert_eq!(f.twist_phase(1, 0), CyclotomicPhase::new(1, 4));
        let m = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(1, 3));
        for q in -4..=4 {
            assert_eq!(m.twist_phase(q, -1).pow(2), m.omega.pow(-q * q));
            assert_eq!(m.twist_phase(q, 0).pow(2), m.omega.pow(q * q));
        }
    }

    #[test]
    fn validation_examples() {
        let free = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(3, 11));
        assert!(validate_model(&free).passed());
        assert!(validate_model(&AnyonModel::fermion()).passed());
        let bad = cyclic(3, 1, 4, 1, 8, Rational64::new(1, 4));
        let report = validate_model(&bad);
        assert!(!report.passed());
        let failed: Vec<_> = report.failures().map(|c| c.name).collect();
        assert!(failed.contains(&"omega^N = 1"));
        let wrong_spin = cyclic(2, 1, 2, 1, 4, Rational64::new(1, 3));
        assert!(!validate_model(&wrong_spin).passed());
        let z3 = AnyonModel::from_spin(ChargeGroup::ZN(3), Rational64::new(1, 3));
        assert_eq!(z3.omega_sqrt, CyclotomicPhase::new(2, 3));
        assert!(validate_model(&z3).passed());
        let z3_other = AnyonModel { omega_sqrt: z3.omega_sqrt * CyclotomicPhase::new(1, 2), ..z3 };
        assert!(!validate_model(&z3_other).passed());
    }

    #[test]
    fn model_file_round_trip() {
        let text = r#"{"group": {"ZN": 2}, "omega": {"k": 1, "M": 2},
                       "omega_sqrt": {"k": 1, "M": 4}, "spin": {"p": 1, "q": 2}}"#;
        let m: AnyonModel = serde_json::from_str(text).unwrap();
        assert_eq!(m, AnyonModel::fermion());
        let back: AnyonModel = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
        let free: AnyonModel = serde_json::from_str(
            r#"{"group": "Z", "omega": {"k": 1, "M": 3}, "omega_sqrt": {"k": 1, "M": 6},
                "spin": {"p": 1, "q": 3}, "mass": 1.5}"#,
        )
        .unwrap();
        assert_eq!(free.group, ChargeGroup::Z);
        assert_eq!(free.mass, Some(1.5));
    }

    proptest! {
        #[test]
        fn winding_shadow(c1 in -9i64..9, c2 in -9i64..9, n in -9i64..9, k in 0i64..12, m in 1i64..12) {
            let model = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(k, m));
            prop_assert!((model.r_phase(c1, c2, n) * model.r_phase(c1, c2, -1 - n)).is_one());
        }

        #[test]
        fn monodromy_identity(a in -9i64..9, c1 in -9i64..9, c2 in -9i64..9, n in -9i64..9, k in 0i64..12, m in 1i64..12) {
            let model = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(k, m));
            let p = model.monodromy_prefactor(a, a + c1, a + c1 + c2, a + c2, n).unwrap();
            prop_assert_eq!(p, model.omega.pow_product(&[2, c1, c2, n]));
            prop_assert_eq!(p * model.r_phase(c1, c2, 0), model.r_phase(c1, c2, n));
        }

        #[test]
        fn zn_periodicity(n in 1u32..8, k in 0i64..8, q in -20i64..20, w in -5i64..5) {
            let model = AnyonModel::from_spin(ChargeGroup::ZN(n), Rational64::new(k, n as i64));
            prop_assume!(validate_model(&model).passed());
            let nn = n as i64;
            prop_assert_eq!(model.sector_phase(q + nn), model.sector_phase(q));
            prop_assert_eq!(model.twist_phase(q + nn, w), model.twist_phase(q, w));
        }

        #[test]
        fn spin_statistics_per_sector(k in 0i64..12, m in 1i64..12, q in -20i64..20) {
            let model = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(k, m));
            prop_assert_eq!(CyclotomicPhase::from_turns(model.sector_spin(q)), model.sector_phase(q));
        }
    }
}
