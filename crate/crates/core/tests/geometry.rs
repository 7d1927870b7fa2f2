use std::f64::consts::{PI, TAU};

use plektonlab::cli::{load_scene, Scene};
use plektonlab::cone::{causally_separated, relative_winding, ConePath, GeometryError, ReferenceFrame};
use plektonlab::minkowski::{CoveringLorentz, CoveringPoincare, MVec3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lifted cone parameters: apex, centre, half-opening.
#[derive(Debug, Clone, Copy)]
struct Params {
    apex: [f64; 3],
    center: f64,
    half: f64,
}

impl Params {
    fn path(&self) -> ConePath {
        ConePath::cone(MVec3::new(self.apex[0], self.apex[1], self.apex[2]), self.center, self.half).unwrap()
    }
}

/// The integer n with `arc1 + 2πn < arc2 < arc1 + 2π(n+1)`, by scanning.
fn oracle(c2: &Params, c1: &Params) -> Option<i64> {
    (-5..=5).find(|&n| {
        let shift = TAU * n as f64;
        c1.center + c1.half + shift <= c2.center - c2.half && c2.center + c2.half <= c1.center - c1.half + shift + TAU
    })
}

fn random_params(rng: &mut ChaCha8Rng) -> Params {
    Params {
        apex: [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
        center: rng.random_range(-3.0 * PI..3.0 * PI),
        half: rng.random_range(0.05..1.2),
    }
}

fn separated(rng: &mut ChaCha8Rng) -> (Params, Params) {
    loop {
        let (a, b) = (random_params(rng), random_params(rng));
        if causally_separated(&a.path(), &b.path()) == Ok(true) {
            return (a, b);
        }
    }
}

#[test]
fn opposed_scene_file() {
    let scene = load_scene(std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/opposed.json"))).unwrap();
    assert_eq!(relative_winding(scene.get("C2").unwrap(), scene.get("C1").unwrap()), Ok(-1));
    assert_eq!(relative_winding(scene.get("C1").unwrap(), scene.get("C2").unwrap()), Ok(0));
    assert_eq!(relative_winding(scene.get("T").unwrap(), scene.get("C1").unwrap()), Err(GeometryError::NotSeparated));
    let pair = Scene::opposed_pair();
    assert_eq!(relative_winding(pair.get("C2").unwrap(), pair.get("C1").unwrap()), Ok(-1));
}

#[test]
fn same_sheet_ordered_pair() {
    let c1 = ConePath::cone(MVec3::ZERO, 0.0, 0.2).unwrap();
    let c2 = ConePath::cone(MVec3::new(0.0, 0.5, 0.5), 1.0, 0.2).unwrap();
    assert_eq!(relative_winding(&c2, &c1), Ok(0));
    assert_eq!(relative_winding(&c1, &c2), Ok(-1));
    assert_eq!(relative_winding(&c2.shifted(TAU), &c1), Ok(1));
}

#[test]
fn closed_form_matches_scan_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let (a, b) = separated(&mut rng);
        let expected = oracle(&a, &b);
        assert!(expected.is_some(), "{a:?} {b:?}");
        assert_eq!(relative_winding(&a.path(), &b.path()).ok(), expected, "{a:?} {b:?}");
    }
}

#[test]
fn overlapping_arcs_are_never_separated() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let (a, b) = (random_params(&mut rng), random_params(&mut rng));
        if oracle(&a, &b).is_none() {
            assert_ne!(causally_separated(&a.path(), &b.path()), Ok(true), "{a:?} {b:?}");
        }
    }
}

fn arb_params() -> impl Strategy<Value = Params> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -3.0 * PI..3.0 * PI, 0.05..1.2f64)
        .prop_map(|(t, x, y, center, half)| Params { apex: [t, x, y], center, half })
}

fn arb_group() -> impl Strategy<Value = CoveringPoincare> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0 * TAU..2.0 * TAU, 0.0..1.5f64, -PI..PI).prop_map(
        |(t, x, y, omega, chi, phi)| CoveringPoincare::new(MVec3::new(t, x, y), CoveringLorentz::from_parts(omega, chi, phi)),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn antisymmetry(a in arb_params(), b in arb_params()) {
        let (c2, c1) = (a.path(), b.path());
        prop_assume!(causally_separated(&c1, &c2) == Ok(true));
        prop_assert_eq!(relative_winding(&c2, &c1).unwrap() + relative_winding(&c1, &c2).unwrap(), -1);
    }

    #[test]
    fn covariance(a in arb_params(), b in arb_params(), g in arb_group()) {
        let (c2, c1) = (a.path(), b.path());
        prop_assume!(causally_separated(&c1, &c2) == Ok(true));
        let n = relative_winding(&c2, &c1).unwrap();
        prop_assert_eq!(relative_winding(&c2.act(&g).unwrap(), &c1.act(&g).unwrap()), Ok(n));
    }

    #[test]
    fn reflection_swaps_order(a in arb_params(), b in arb_params(), positive in any::<bool>()) {
        let (c2, c1) = (a.path(), b.path());
        prop_assume!(causally_separated(&c1, &c2) == Ok(true));
        let frame = ReferenceFrame::j_invariant(positive);
        let (j2, j1) = (c2.reflect(&frame).unwrap(), c1.reflect(&frame).unwrap());
        prop_assert_eq!(relative_winding(&j2, &j1), relative_winding(&c1, &c2));
    }

    #[test]
    fn sheet_shift(a in arb_params(), b in arb_params(), k in -3i64..3) {
        let (c2, c1) = (a.path(), b.path());
        prop_assume!(causally_separated(&c1, &c2) == Ok(true));
        let n = relative_winding(&c2, &c1).unwrap();
        prop_assert_eq!(relative_winding(&c2.shifted(TAU * k as f64), &c1), Ok(n + k));
    }
}

/// Whether some point of `a` and some point of `b` are causally related.
/// For `x - y = d(λ, μ)`, linear in the ray weights, `±d0 - |d_spatial|` is
/// concave, so projected subgradient ascent over growing boxes finds a
/// causal pair whenever one exists at a visible margin.
fn causal_pair_by_ascent(a: &ConePath, b: &ConePath) -> bool {
    let dirs: Vec<MVec3> = a.rays().iter().copied().chain(b.rays().iter().map(|r| MVec3::ZERO - *r)).collect();
    let base = a.apex() - b.apex();
    let d = |w: &[f64]| dirs.iter().zip(w).fold(base, |x, (r, wi)| x + r.scale(*wi));
    for sign in [1.0, -1.0] {
        for bound in [1.0, 10.0, 100.0, 1e3, 1e4] {
            let mut w = vec![bound / 16.0; 8];
            for k in 0..4000 {
                let v = d(&w);
                let n = v.x1.hypot(v.x2);
                if sign * v.x0 - n >= 0.0 {
                    return true;
                }
                let step = bound / (20.0 * (k as f64 + 1.0).sqrt());
                for (wi, r) in w.iter_mut().zip(&dirs) {
                    let g = sign * r.x0 - (v.x1 * r.x1 + v.x2 * r.x2) / n.max(1e-300);
                    *wi = (*wi + step * g).clamp(0.0, bound);
                }
            }
        }
    }
    false
}

#[test]
fn separation_matches_ascent_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut decided = 0;
    while decided < 1000 {
        let (a, b) = (random_params(&mut rng).path(), random_params(&mut rng).path());
        let margin = plektonlab::cone::causal_margin(&a, &b).unwrap();
        if margin.abs() < 0.05 {
            continue;
        }
        decided += 1;
        assert_eq!(margin < 0.0, causal_pair_by_ascent(&a, &b), "{a:?} {b:?} margin {margin}");
    }
}

#[test]
fn precedes_is_a_strict_order() {
    use plektonlab::cone::precedes;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut triples = 0;
    while triples < 500 {
        let c: Vec<ConePath> = (0..3).map(|_| random_params(&mut rng).path()).collect();
        let pairs = [(0, 1), (1, 2), (0, 2)];
        if !pairs.iter().all(|&(i, j)| causally_separated(&c[i], &c[j]) == Ok(true)) {
            continue;
        }
        triples += 1;
        for x in &c {
            assert!(!precedes(x, &x.shifted(0.0)).unwrap_or(false));
        }
        for p in 0..3 {
            for q in 0..3 {
                for r in 0..3 {
                    if p != q && q != r && p != r && precedes(&c[p], &c[q]) == Ok(true) && precedes(&c[q], &c[r]) == Ok(true) {
                        assert_eq!(precedes(&c[p], &c[r]), Ok(true));
                    }
                }
            }
        }
    }
}
