//! Verification suites. Each suite draws from its own seeded generator, so
//! reports do not depend on whether suites run in parallel.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{sample, Check, Report, Scene};
use crate::cone::{relative_winding, standard_wedge_path, winding_by_definition, ConePath, ReferenceFrame};
use crate::field::{
    cpt_conjugate, cpt_conjugate_graded, exchange, graded_form, lattice_oracle, normal_form, route_coefficients,
    state::{tomita_s, vacuum_swap, Overlap, StateVector},
    twist_conjugate_with_winding, twisted_locality, FieldError, FieldSymbol, FieldWord, GradedOperator, Localization,
    ObservableWord,
};
use crate::minkowski::{CoveringLorentz, CoveringPoincare, MVec3};
use crate::phase::CyclotomicPhase;
use crate::sector::{AnyonModel, ChargeGroup};
use crate::wigner::{
    apply_rep, norm_squared, verify_cocycle, verify_j_relations, wigner_rotation, wigner_rotation_steps, Gaussian,
    MassShellPoint, SpinValue, WaveFunction,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Geometry,
    Braid,
    Twist,
    Cpt,
    Tomita,
    Wigner,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Geometry, Suite::Braid, Suite::Twist, Suite::Cpt, Suite::Tomita, Suite::Wigner];

    fn index(self) -> u64 {
        Suite::EACH.iter().position(|s| *s == self).unwrap_or(Suite::EACH.len()) as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Geometry => "geometry",
            Suite::Braid => "braid",
            Suite::Twist => "twist",
            Suite::Cpt => "cpt",
            Suite::Tomita => "tomita",
            Suite::Wigner => "wigner",
            Suite::All => "all",
        })
    }
}

/// Inputs shared by all suites.
#[derive(Debug, Clone)]
pub struct Context {
    pub model: AnyonModel,
    pub scene: Option<Scene>,
    pub frame: ReferenceFrame,
    pub seed: u64,
    pub sweep: f64,
}

impl Context {
    pub fn new(model: AnyonModel, scene: Option<Scene>, seed: u64, sweep: f64) -> Self {
        let frame = scene.as_ref().map(|s| s.frame.clone()).unwrap_or_else(|| ReferenceFrame::j_invariant(true));
        Context { model, scene, frame, seed, sweep }
    }

    fn size(&self, base: usize) -> usize {
        ((base as f64 * self.sweep).ceil() as usize).max(1)
    }

    fn rng(&self, suite: Suite) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ (suite.index() + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

/// Runs one suite (not `All`).
pub fn run_suite(suite: Suite, ctx: &Context) -> Vec<Check> {
    let mut rng = ctx.rng(suite);
    let mut checks = match suite {
        Suite::Geometry => geometry(ctx, &mut rng),
        Suite::Braid => braid(ctx, &mut rng),
        Suite::Twist => twist(ctx, &mut rng),
        Suite::Cpt => cpt(ctx, &mut rng),
        Suite::Tomita => tomita(ctx, &mut rng),
        Suite::Wigner => wigner(ctx, &mut rng),
        Suite::All => Vec::new(),
    };
    for c in &mut checks {
        c.name = format!("{suite}: {}", c.name);
    }
    checks
}

pub fn verify(suite: Suite, ctx: &Context, parallel: bool) -> Report {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let results: Vec<Vec<Check>> = if parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = suites.iter().map(|&su| s.spawn(move || run_suite(su, ctx))).collect();
            handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
        })
    } else {
        suites.iter().map(|&su| run_suite(su, ctx)).collect()
    };
    Report::new(format!("verify {suite}"), Some(ctx.seed), results.into_iter().flatten().collect())
}

fn count_check(name: &str, failures: usize, total: usize, note: &str) -> Check {
    Check::exact(name, failures == 0, format!("{failures}/{total} mismatches"), note)
}

fn geometry(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    let pair = Scene::opposed_pair();
    let (c1, c2) = (pair.get("C1").expect("C1"), pair.get("C2").expect("C2"));
    checks.push(match relative_winding(c2, c1) {
        Ok(n) => Check::exact("opposed-pair winding N(C2, C1)", n == -1, n.to_string(), "expected -1"),
        Err(e) => Check::error("opposed-pair winding N(C2, C1)", e),
    });

    if let Some(scene) = &ctx.scene {
        let (mut bad, mut total, mut skipped) = (0, 0, 0);
        for (i, (_, a)) in scene.paths.iter().enumerate() {
            for (_, b) in &scene.paths[i + 1..] {
                match (relative_winding(a, b), relative_winding(b, a)) {
                    (Ok(x), Ok(y)) => {
                        total += 1;
                        bad += usize::from(x + y != -1);
                    }
                    _ => skipped += 1,
                }
            }
        }
        checks.push(count_check("scene antisymmetry", bad, total, &format!("{skipped} pairs not separated")));
    }

    let n = ctx.size(1000);
    let frame = if ctx.frame.is_j_invariant() { ctx.frame.clone() } else { ReferenceFrame::j_invariant(true) };
    let (mut anti, mut oracle, mut cov, mut refl, mut rebase) = (0, 0, 0, 0, 0);
    for _ in 0..n {
        let (c2, c1) = sample::separated_pair(rng);
        let n21 = relative_winding(&c2, &c1).expect("sampled pair is separated");
        let n12 = relative_winding(&c1, &c2).expect("sampled pair is separated");
        anti += usize::from(n21 + n12 != -1);
        oracle += usize::from(winding_by_definition(&c2, &c1, -5..=5).ok().flatten() != Some(n21));
        let g = sample::covering_poincare(rng);
        let moved = c2.act(&g).and_then(|a| Ok((a, c1.act(&g)?)));
        cov += usize::from(!matches!(moved.and_then(|(a, b)| relative_winding(&a, &b)), Ok(m) if m == n21));
        let reflected = c2.reflect(&frame).and_then(|a| Ok((a, c1.reflect(&frame)?)));
        refl += usize::from(!matches!(reflected.and_then(|(a, b)| relative_winding(&a, &b)), Ok(m) if m == n12));
        let to = ReferenceFrame { direction_angle: rng.random_range(-3.0 * PI..3.0 * PI), ..ReferenceFrame::default() };
        let to = ReferenceFrame { cone_center: to.direction_angle, ..to };
        let from = ReferenceFrame::default();
        let rebased = c2.rebase(&from, &to).and_then(|a| Ok((a, c1.rebase(&from, &to)?)));
        rebase += usize::from(!matches!(rebased.and_then(|(a, b)| relative_winding(&a, &b)), Ok(m) if m == n21));
    }
    checks.push(count_check("antisymmetry N12 + N21 = -1", anti, n, "random separated pairs"));
    checks.push(count_check("closed form vs definition scan", oracle, n, "n in [-5, 5]"));
    checks.push(count_check("covariance under covering Poincaré group", cov, n, "random group elements"));
    checks.push(count_check("reflection N(jC2, jC1) = N(C1, C2)", refl, n, "j-invariant reference cone"));
    checks.push(count_check("rebase invariance", rebase, n, "random reference directions"));

    let r2 = CoveringLorentz::rotation(TAU);
    checks.push(match r2.compose(&r2) {
        Ok(g) => Check::residual("r(2π)∘r(2π) = r(4π)", (g.lifted_angle() - 2.0 * TAU).abs(), 1e-12, "lifted angle"),
        Err(e) => Check::error("r(2π)∘r(2π) = r(4π)", e),
    });
    let mut worst = 0.0f64;
    for _ in 0..ctx.size(50) {
        let t = rng.random_range(-2.0..2.0);
        let g = CoveringLorentz::rotation(PI).compose(&CoveringLorentz::boost1(t)).and_then(|x| x.compose(&CoveringLorentz::rotation(-PI)));
        worst = worst.max(match g {
            Ok(g) => g.matrix().max_abs_diff(CoveringLorentz::boost1(-t).matrix()) + g.lifted_angle().abs(),
            Err(_) => f64::INFINITY,
        });
    }
    checks.push(Check::residual("r(π) b(t) r(-π) = b(-t)", worst, 1e-9, "matrix and lift"));
    let mut worst = 0.0f64;
    for _ in 0..ctx.size(200) {
        let (a, b, c) = (sample::covering_poincare(rng), sample::covering_poincare(rng), sample::covering_poincare(rng));
        let l = a.compose(&b).and_then(|ab| ab.compose(&c));
        let r = b.compose(&c).and_then(|bc| a.compose(&bc));
        let j = a.compose(&b).map(|ab| ab.reflect_conjugate());
        let jj = a.reflect_conjugate().compose(&b.reflect_conjugate());
        worst = worst.max(match (l, r, j, jj) {
            (Ok(l), Ok(r), Ok(j), Ok(jj)) => (l.lorentz.lifted_angle() - r.lorentz.lifted_angle()).abs()
                .max(l.lorentz.matrix().max_abs_diff(r.lorentz.matrix()))
                .max((j.lorentz.lifted_angle() - jj.lorentz.lifted_angle()).abs()),
            _ => f64::INFINITY,
        });
    }
    checks.push(Check::residual("associativity and j-homomorphism", worst, 1e-9, "random triples"));
    checks
}

fn braid(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    let model = &ctx.model;
    let fermion = AnyonModel::fermion();
    let fig_word = |c2: i64, c1: i64| {
        let a = ConePath::cone(MVec3::ZERO, 1.0, 0.2).expect("cone");
        let b = ConePath::cone(MVec3::ZERO, 0.0, 0.2).expect("cone");
        FieldWord::new(vec![
            FieldSymbol::new(c2, ObservableWord::atom("A"), Localization::path("C2", a)),
            FieldSymbol::new(c1, ObservableWord::atom("B"), Localization::path("C1", b)),
        ])
    };
    checks.push(match exchange(&fig_word(1, 1), 0, &fermion) {
        Ok(w) => Check::exact("fermion anticommutation", w.coeff == CyclotomicPhase::new(1, 2), w.coeff.to_string(), "n = 0"),
        Err(e) => Check::error("fermion anticommutation", e),
    });

    let n = ctx.size(1000);
    let (mut inv, mut errors) = (0, 0);
    for _ in 0..n {
        let len = rng.random_range(2..=4);
        let w = sample::word(rng, len, 3);
        let i = rng.random_range(0..len - 1);
        match exchange(&w, i, model).and_then(|x| exchange(&x, i, model)) {
            Ok(back) => inv += usize::from(!back.same_as(&w)),
            Err(_) => errors += 1,
        }
    }
    checks.push(count_check("exchange involution", inv + errors, n, "random words, length 2-4"));

    let m = ctx.size(100);
    let mut conf = 0;
    for _ in 0..m {
        let w = sample::word(rng, 4, 3);
        let mut order: Vec<usize> = (0..4).collect();
        for k in (1..4).rev() {
            order.swap(k, rng.random_range(0..=k));
        }
        let ok = match (route_coefficients(&w, &order, model), normal_form(&w, &order, model)) {
            (Ok(routes), Ok(nf)) => routes.iter().all(|c| *c == nf.coeff),
            _ => false,
        };
        conf += usize::from(!ok);
    }
    checks.push(count_check("4-factor confluence", conf, m, "all reduced transposition routes"));

    let (mut shadow, mut mono) = (0, 0);
    for _ in 0..n {
        let (c1, c2, k, a) = (rng.random_range(-9..=9), rng.random_range(-9..=9), rng.random_range(-9..=9), rng.random_range(-9..=9));
        shadow += usize::from(!(model.r_phase(c1, c2, k) * model.r_phase(c1, c2, -1 - k)).is_one());
        let ok = match model.monodromy_prefactor(a, a + c1, a + c1 + c2, a + c2, k) {
            Ok(p) => p == model.omega.pow_product(&[2, c1, c2, k]) && p * model.r_phase(c1, c2, 0) == model.r_phase(c1, c2, k),
            Err(_) => false,
        };
        mono += usize::from(!ok);
    }
    checks.push(count_check("r(n) r(-1-n) = 1", shadow, n, "random labels"));
    checks.push(count_check("monodromy prefactor = ω^(2 c1 c2 n)", mono, n, "random abelian labels"));

    let mut models = vec![
        AnyonModel::fermion(),
        AnyonModel::from_spin(ChargeGroup::ZN(3), Rational64::new(1, 3)),
        AnyonModel::from_spin(ChargeGroup::ZN(4), Rational64::new(1, 4)),
    ];
    if matches!(model.group, ChargeGroup::ZN(k) if k <= 5) && crate::sector::validate_model(model).passed() {
        models.push(model.clone());
    }
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for mdl in &models {
        for _ in 0..ctx.size(10) {
            let len = rng.random_range(1..=5);
            match lattice_oracle(mdl, &sample::word(rng, len, 1)) {
                Ok(r) => worst = worst.max(r.max_residual()),
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    checks.push(if failures.is_empty() {
        Check::residual("lattice oracle", worst, 1e-12, "clock/shift matrices, N ≤ 5, up to 5 sites")
    } else {
        Check::error("lattice oracle", failures.join("; "))
    });
    checks
}

fn twist(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    let model = &ctx.model;
    let n = ctx.size(500);
    let (mut loc, mut graded) = (0, 0);
    for _ in 0..n {
        let (p2, p1) = sample::separated_pair(rng);
        let f2 = sample::symbol(rng, p2, "C2");
        let f1 = sample::symbol(rng, p1, "C1");
        match twisted_locality(&f2, &f1, model) {
            Ok(t) => {
                loc += usize::from(!t.holds());
                let coeff = exchange(&FieldWord::new(vec![f2.clone(), f1.clone()]), 0, model).map(|w| w.coeff);
                let g1 = twist_conjugate_with_winding(&f1, t.winding, model);
                let g2 = graded_form(&f2);
                let ok = coeff.is_ok_and(|c| (-6..=6).all(|q| g1.compose(&g2).phase_at(q) / g2.compose(&g1).phase_at(q) == c));
                graded += usize::from(!ok);
            }
            Err(_) => loc += 1,
        }
    }
    checks.push(count_check("twisted locality [F2, Z F1 Z*] = 0", loc, n, "exact polynomial identity in q"));
    checks.push(count_check("graded phase ratio = exchange coefficient", graded, n, "q in [-6, 6]"));

    let obs = FieldSymbol::new(0, ObservableWord::atom("A"), Localization::Delocalized);
    let trivial = (-1..=1).all(|w| twist_conjugate_with_winding(&obs, w, model).phase.is_trivial());
    checks.push(Check::exact("twist commutes with observables", trivial, trivial.to_string(), "charge 0"));

    for positive in [true, false] {
        let frame = ReferenceFrame::j_invariant(positive);
        let name = format!("canonical twist, reference cone on {} x2-axis", if positive { "+" } else { "-" });
        let we = standard_wedge_path(&frame);
        let n0 = we.reflect(&frame).and_then(|jwe| relative_winding(&we, &jwe));
        checks.push(match n0 {
            Ok(n0) => {
                let sign = if positive { -1 } else { 1 };
                let expected_n = if positive { -1 } else { 0 };
                let ok = n0 == expected_n
                    && (-6..=6).all(|q| model.twist_phase(q, n0) == model.omega_sqrt.pow(sign * q * q));
                Check::exact(name, ok, format!("N(We, jWe) = {n0}"), "Z E_q = ω^(∓q²/2) E_q")
            }
            Err(e) => Check::error(name, e),
        });
    }
    checks
}

fn cpt(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let frame = &ctx.frame;
    if !frame.is_j_invariant() {
        return vec![Check::error("precondition", "reference cone is not j-invariant")];
    }
    let model = &ctx.model;
    let n = ctx.size(1000);
    let (mut square, mut charge, mut geo) = (0, 0, 0);
    for _ in 0..n {
        let path = sample::cone(rng);
        let sym = sample::symbol(rng, path, "C");
        let Ok((op, loc)) = cpt_conjugate(&sym, model, frame) else {
            square += 1;
            continue;
        };
        charge += usize::from(op.shift != -sym.charge || op.obs != sym.obs.reflected());
        let expected = sym.loc.cone_path().and_then(|p| p.reflect(frame).ok());
        let geo_ok = match (&loc, expected) {
            (Localization::Path { label, path }, Some(e)) => label.reflected && path.approx_eq(&e, 1e-12),
            _ => false,
        };
        geo += usize::from(!geo_ok);
        let back = cpt_conjugate_graded(&op, model, frame);
        let loc_back = crate::field::graded::reflect_localization(&loc, frame);
        let ok = matches!((back, loc_back), (Ok(b), Ok(l)) if b.equivalent(&graded_form(&sym))
            && FieldSymbol { loc: l.clone(), ..sym.clone() }.same_as(&sym));
        square += usize::from(!ok);
    }
    let mut gauge = 0;
    for _ in 0..ctx.size(100) {
        let v = GradedOperator::gauge(Rational64::new(rng.random_range(-20..=20), rng.random_range(1..=20)));
        gauge += usize::from(!cpt_conjugate_graded(&v, model, frame).is_ok_and(|w| w.equivalent(&v)));
    }
    vec![
        count_check("Θ² = 1", square, n, "random symbols, operators and paths"),
        count_check("charge conjugation c -> -c", charge, n, "observable marked by αj"),
        count_check("geometric action C -> jC", geo, n, "reflected path classes"),
        count_check("Θ V(t) Θ* = V(t)", gauge, ctx.size(100), "gauge group"),
    ]
}

/// A state generated by a field localized in a cone inside the standard wedge path.
fn wedge_state(rng: &mut ChaCha8Rng, frame: &ReferenceFrame) -> StateVector {
    let we = standard_wedge_path(frame);
    let base = we.arc().alpha_minus + PI / 2.0;
    loop {
        let apex = MVec3::new(0.0, rng.random_range(0.5..2.0), rng.random_range(-2.0..2.0));
        let c = ConePath::cone(apex, base + rng.random_range(-0.6..0.6), rng.random_range(0.05..0.6)).expect("cone");
        if c.contained_in(&we).unwrap_or(false) {
            let sym = sample::symbol(rng, c, "C");
            let coeff = CyclotomicPhase::new(rng.random_range(0..12), rng.random_range(1..=12));
            return StateVector { coeff, ..StateVector::from_field(&sym) };
        }
    }
}

fn tomita(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    let frame = &ctx.frame;
    let n = ctx.size(1000);
    let (mut square, mut shape) = (0, 0);
    for _ in 0..n {
        let v = wedge_state(rng, frame);
        let ok = tomita_s(&v, frame).and_then(|s| Ok((s.clone(), tomita_s(&s, frame)?)));
        square += usize::from(!matches!(&ok, Ok((s, b)) if b.same_as(&v) && s.coeff == v.coeff.conj()));
        let neutral = StateVector { charge: 0, ..v };
        shape += usize::from(!tomita_s(&neutral, frame).is_ok_and(|s| s.obs == neutral.obs.star() && s.charge == 0));
    }
    checks.push(count_check("S² = 1", square, n, "random states from the standard wedge path"));
    checks.push(count_check("S on charge 0 is the star map", shape, n, "observable shape"));
    let outside = StateVector::from_field(&FieldSymbol::new(
        1,
        ObservableWord::atom("A"),
        Localization::path("C", ConePath::cone(MVec3::new(0.0, -1.0, 0.0), PI, 0.2).expect("cone")),
    ));
    let rejected = matches!(tomita_s(&outside, frame), Err(FieldError::OutsideStandardWedge));
    checks.push(Check::exact("S outside the wedge path is rejected", rejected, rejected.to_string(), ""));

    let pair = Scene::opposed_pair();
    let f1 = FieldSymbol::new(1, ObservableWord::atom("A"), Localization::path("C1", pair.get("C1").expect("C1").clone()));
    let f2 = FieldSymbol::new(1, ObservableWord::atom("B"), Localization::path("C2", pair.get("C2").expect("C2").clone()));
    checks.push(match vacuum_swap(&Overlap::new(f2, f1), &AnyonModel::fermion()) {
        Ok(o) => Check::exact("vacuum swap, fermion", o.coeff == CyclotomicPhase::new(1, 2), o.coeff.to_string(), "factor ω = -1"),
        Err(e) => Check::error("vacuum swap, fermion", e),
    });
    let mut guard = 0;
    for _ in 0..n {
        let (p2, p1) = loop {
            let (a, b) = sample::separated_pair(rng);
            match relative_winding(&a, &b) {
                Ok(-1) => break (a, b),
                Ok(0) => break (b, a),
                _ => {}
            }
        };
        let c = rng.random_range(-4..=4);
        let f2 = FieldSymbol { charge: c, ..sample::symbol(rng, p2, "C2") };
        let f1 = FieldSymbol { charge: c, ..sample::symbol(rng, p1, "C1") };
        let ok = vacuum_swap(&Overlap::new(f2, f1), &ctx.model)
            .is_ok_and(|o| o.coeff == ctx.model.sector_phase(c) && matches!(vacuum_swap(&o, &ctx.model), Err(FieldError::Guard(_))));
        guard += usize::from(!ok);
    }
    checks.push(count_check("second vacuum swap rejected", guard, n, "winding guard N = 0"));
    checks
}

fn shell_point(rng: &mut ChaCha8Rng, mass: f64) -> MassShellPoint {
    MassShellPoint::new(mass, rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)).expect("finite point")
}

fn wave_function(rng: &mut ChaCha8Rng) -> WaveFunction {
    WaveFunction::gaussians(
        (0..2)
            .map(|_| Gaussian {
                weight: Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
                center: [rng.random_range(-0.8..0.8), rng.random_range(-0.8..0.8)],
                width: rng.random_range(0.5..1.0),
            })
            .collect(),
    )
}

fn wigner(ctx: &Context, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let mut checks = Vec::new();
    let mass = ctx.model.mass.unwrap_or(1.0);
    if !(mass.is_finite() && mass > 0.0) {
        return vec![Check::error("precondition", format!("mass must be positive, got {mass}"))];
    }
    let spin = SpinValue::from(ctx.model.spin);

    let n = ctx.size(100);
    let mut worst = 0.0f64;
    for _ in 0..n {
        let (g1, g2) = (sample::covering_lorentz(rng), sample::covering_lorentz(rng));
        let p = shell_point(rng, mass);
        worst = worst.max(verify_cocycle(&g1, &g2, &[p]).unwrap_or(f64::INFINITY));
    }
    checks.push(Check::residual("cocycle", worst, 1e-9, "random triples"));

    let mut worst = 0.0f64;
    for _ in 0..ctx.size(20) {
        let g = sample::covering_lorentz(rng);
        let p = shell_point(rng, mass);
        let fine = wigner_rotation_steps(&g, &p, 1024);
        worst = worst.max((fine - wigner_rotation_steps(&g, &p, 2048)).abs());
        worst = worst.max((fine - wigner_rotation(&g, &p).unwrap_or(f64::INFINITY)).abs());
    }
    checks.push(Check::residual("continuation step halving", worst, 1e-10, "fixed vs adaptive steps"));

    let psi = wave_function(rng);
    let samples: Vec<MassShellPoint> = (0..ctx.size(10)).map(|_| shell_point(rng, mass)).collect();
    for (label, s) in [("model spin", spin.0), ("s = 0", 0.0), ("s = 1/2", 0.5), ("s = 1/3", 1.0 / 3.0)] {
        let mut worst = 0.0f64;
        for k in 1..=3 {
            let u = apply_rep(&CoveringPoincare::rotation(TAU * k as f64), SpinValue(s), &psi);
            let phase = Complex64::from_polar(1.0, TAU * k as f64 * s);
            for p in &samples {
                worst = worst.max(match (u.eval(p), psi.eval(p)) {
                    (Ok(a), Ok(b)) => (a - phase * b).norm(),
                    _ => f64::INFINITY,
                });
            }
        }
        checks.push(Check::residual(format!("U(r(2πk)) = e^(2πiks), {label}"), worst, 1e-9, "k = 1, 2, 3"));
    }

    let mut j = [0.0f64; 3];
    for _ in 0..ctx.size(10) {
        let g = sample::covering_poincare(rng);
        match verify_j_relations(&g, spin, &[psi.clone()], &samples) {
            Ok(r) => {
                j[0] = j[0].max(r.conjugation);
                j[1] = j[1].max(r.translation);
                j[2] = j[2].max(r.rotation);
            }
            Err(_) => j = [f64::INFINITY; 3],
        }
    }
    checks.push(Check::residual("U(j) U(g) U(j) = U(jgj)", j[0], 1e-8, "random group elements"));
    checks.push(Check::residual("U(j) U(x) U(j) = U(jx)", j[1], 1e-8, "random translations"));
    checks.push(Check::residual("U(r(2π)) = e^(2πis)", j[2], 1e-8, "model spin"));

    let mut worst = 0.0f64;
    let n0 = norm_squared(&psi, mass, 10.0, 200).unwrap_or(f64::NAN);
    for _ in 0..ctx.size(2) {
        let g = CoveringPoincare::new(
            MVec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            CoveringLorentz::from_parts(rng.random_range(-TAU..TAU), rng.random_range(0.0..0.8), rng.random_range(-PI..PI)),
        );
        let n1 = norm_squared(&apply_rep(&g, spin, &psi), mass, 10.0, 200).unwrap_or(f64::NAN);
        worst = worst.max(((n1 - n0) / n0).abs());
    }
    checks.push(Check::residual("unitarity", if worst.is_nan() { f64::INFINITY } else { worst }, 1e-6, "trapezoid quadrature"));

    let p = shell_point(rng, mass);
    let z3 = AnyonModel::from_spin(ChargeGroup::ZN(3), Rational64::new(1, 3));
    for (label, model) in [("Z_3, s = 1/3", &z3), ("model", &ctx.model)] {
        let u = apply_rep(&CoveringPoincare::rotation(TAU), SpinValue::from(model.spin), &psi);
        let residual = match (u.eval(&p), psi.eval(&p)) {
            (Ok(a), Ok(b)) if b.norm() > 1e-6 => (a / b - model.sector_phase(1).to_complex()).norm(),
            _ => f64::INFINITY,
        };
        checks.push(Check::residual(format!("spin-statistics, {label}"), residual, 1e-9, "2π-rotation eigenvalue vs ω"));
    }
    checks
}
