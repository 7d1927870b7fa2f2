//! Seeded random inputs for the verification sweeps.

use std::f64::consts::{PI, TAU};

use num_rational::Rational64;
use rand::Rng;

use crate::cone::{causal_margin, relative_winding, ConePath};
use crate::field::{FieldSymbol, FieldWord, Localization, ObservableWord};
use crate::minkowski::{CoveringLorentz, CoveringPoincare, MVec3};
use crate::sector::{AnyonModel, ChargeGroup};

/// Pairs closer than this to the separation boundary are resampled.
pub const MARGIN_FLOOR: f64 = 1e-3;

pub fn cone<R: Rng>(rng: &mut R) -> ConePath {
    let apex = MVec3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    let sheet = rng.random_range(-1i64..=1) as f64;
    let center = rng.random_range(-PI..PI) + TAU * sheet;
    ConePath::cone(apex, center, rng.random_range(0.05..1.2)).expect("valid random cone")
}

/// A causally separated pair `(C̃2, C̃1)` with a well-defined winding number.
pub fn separated_pair<R: Rng>(rng: &mut R) -> (ConePath, ConePath) {
    loop {
        let (c2, c1) = (cone(rng), cone(rng));
        let clear = matches!(causal_margin(&c2, &c1), Ok(m) if m > MARGIN_FLOOR);
        if clear && relative_winding(&c2, &c1).is_ok() && relative_winding(&c1, &c2).is_ok() {
            return (c2, c1);
        }
    }
}

pub fn covering_lorentz<R: Rng>(rng: &mut R) -> CoveringLorentz {
    CoveringLorentz::from_parts(rng.random_range(-2.0 * TAU..2.0 * TAU), rng.random_range(0.0..1.5), rng.random_range(-PI..PI))
}

pub fn covering_poincare<R: Rng>(rng: &mut R) -> CoveringPoincare {
    let a = MVec3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    CoveringPoincare::new(a, covering_lorentz(rng))
}

/// A `Z` model with spin `k/m`, `m ≤ 12`.
pub fn model<R: Rng>(rng: &mut R) -> AnyonModel {
    let m = rng.random_range(1i64..=12);
    AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(rng.random_range(0..m), m))
}

pub fn observable<R: Rng>(rng: &mut R) -> ObservableWord {
    let len = rng.random_range(0..=3);
    let names = ["A", "B", "C", "D"];
    let mut w = ObservableWord::unit();
    for _ in 0..len {
        let mut a = ObservableWord::atom(names[rng.random_range(0..names.len())]);
        if rng.random_bool(0.5) {
            a = a.star();
        }
        w = w.concat(&a.twisted(rng.random_range(-2..=2)));
    }
    w
}

pub fn symbol<R: Rng>(rng: &mut R, path: ConePath, name: &str) -> FieldSymbol {
    FieldSymbol::new(rng.random_range(-4..=4), observable(rng), Localization::path(name, path))
}

/// `len` narrow cones at the origin on distinct directions, pairwise
/// separated and spread over `sheets` consecutive sheets.
pub fn separated_family<R: Rng>(rng: &mut R, len: usize, sheets: i64) -> Vec<ConePath> {
    'outer: loop {
        let mut out: Vec<ConePath> = Vec::with_capacity(len);
        for _ in 0..len {
            let center = rng.random_range(-PI..PI) + TAU * rng.random_range(0..sheets.max(1)) as f64;
            let c = ConePath::cone(MVec3::ZERO, center, rng.random_range(0.05..0.25)).expect("valid cone");
            for d in &out {
                let clear = matches!(causal_margin(&c, d), Ok(m) if m > MARGIN_FLOOR);
                if !clear || relative_winding(&c, d).is_err() || relative_winding(d, &c).is_err() {
                    continue 'outer;
                }
            }
            out.push(c);
        }
        return out;
    }
}

/// A word of `len` symbols with pairwise separated localizations.
pub fn word<R: Rng>(rng: &mut R, len: usize, sheets: i64) -> FieldWord {
    let paths = separated_family(rng, len, sheets);
    FieldWord::new(paths.into_iter().enumerate().map(|(k, p)| symbol(rng, p, &format!("C{k}"))).collect())
}
