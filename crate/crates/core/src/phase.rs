//! Exact roots of unity `e^{2πi k/M}`.

use std::fmt;
use std::ops::{Div, Mul};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;

/// The root of unity `e^{2πi k/M}`, stored in lowest terms with `0 ≤ k < M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "PhaseRepr", into = "PhaseRepr")]
pub struct CyclotomicPhase {
    k: i64,
    m: i64,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PhaseRepr {
    k: i64,
    #[serde(rename = "M")]
    m: i64,
}

impl TryFrom<PhaseRepr> for CyclotomicPhase {
    type Error = String;
    fn try_from(r: PhaseRepr) -> Result<Self, String> {
        if r.m <= 0 {
            return Err(format!("phase denominator must be positive, got {}", r.m));
        }
        Ok(CyclotomicPhase::new(r.k, r.m))
    }
}

impl From<CyclotomicPhase> for PhaseRepr {
    fn from(p: CyclotomicPhase) -> Self {
        PhaseRepr { k: p.k, m: p.m }
    }
}

impl CyclotomicPhase {
    pub const ONE: CyclotomicPhase = CyclotomicPhase { k: 0, m: 1 };

    /// `e^{2πi k/m}`. Panics if `m ≤ 0`.
    pub fn new(k: i64, m: i64) -> Self {
        assert!(m > 0, "phase denominator must be positive");
        let k = k.rem_euclid(m);
        let g = k.gcd(&m);
        CyclotomicPhase { k: k / g, m: m / g }
    }

    /// `e^{2πi r}` for a rational number of turns.
    pub fn from_turns(r: Rational64) -> Self {
        CyclotomicPhase::new(*r.numer(), *r.denom())
    }

    pub fn numerator(&self) -> i64 {
        self.k
    }

    pub fn denominator(&self) -> i64 {
        self.m
    }

    /// The phase as a number of turns in `[0, 1)`.
    pub fn turns(&self) -> Rational64 {
        Rational64::new(self.k, self.m)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0
    }

    pub fn inverse(&self) -> Self {
        CyclotomicPhase::new(-self.k, self.m)
    }

    /// Complex conjugate, equal to the inverse.
    pub fn conj(&self) -> Self {
        self.inverse()
    }

    pub fn pow(&self, e: i64) -> Self {
        let k = (self.k as i128 * e as i128).rem_euclid(self.m as i128) as i64;
        CyclotomicPhase::new(k, self.m)
    }

    /// `self^e` for an exponent given as a product of factors, without
    /// overflowing the intermediate product.
    pub fn pow_product(&self, factors: &[i64]) -> Self {
        let m = self.m as i128;
        let e = factors.iter().fold(1i128, |acc, &f| (acc * (f as i128).rem_euclid(m)) % m);
        self.pow(e as i64)
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = 2.0 * std::f64::consts::PI * self.k as f64 / self.m as f64;
        Complex64::new(t.cos(), t.sin())
    }
}

impl Default for CyclotomicPhase {
    fn default() -> Self {
        CyclotomicPhase::ONE
    }
}

impl Mul for CyclotomicPhase {
    type Output = CyclotomicPhase;
    fn mul(self, o: CyclotomicPhase) -> CyclotomicPhase {
        let l = self.m.lcm(&o.m);
        CyclotomicPhase::new(self.k * (l / self.m) + o.k * (l / o.m), l)
    }
}

impl Div for CyclotomicPhase {
    type Output = CyclotomicPhase;
    fn div(self, o: CyclotomicPhase) -> CyclotomicPhase {
        self * o.inverse()
    }
}

impl std::iter::Product for CyclotomicPhase {
    fn product<I: Iterator<Item = CyclotomicPhase>>(iter: I) -> Self {
        iter.fold(CyclotomicPhase::ONE, |a, b| a * b)
    }
}

impl fmt::Display for CyclotomicPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} of 2π", self.k, self.m)
    }
}
