//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Rational64;
use plektonlab::cli::suites::Context;
use plektonlab::cli::{load_scene, run_suite, sample, Check, Status, Suite};
use plektonlab::cone::{causally_separated, relative_winding, ConePath};
use plektonlab::field::{exchange, lattice_oracle, FieldSymbol, FieldWord, Localization, ObservableWord};
use plektonlab::minkowski::{CoveringPoincare, MVec3};
use plektonlab::phase::CyclotomicPhase;
use plektonlab::sector::{AnyonModel, ChargeGroup};
use plektonlab::wigner::{apply_rep, MassShellPoint, SpinValue, WaveFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Pass iff every named check of the suite passes.
fn from_suite(checks: &[Check], names: &[&str]) -> Outcome {
    let mut missing = Vec::new();
    let mut failed = Vec::new();
    for n in names {
        match checks.iter().find(|c| c.name.ends_with(n)) {
            None => missing.push(n.to_string()),
            Some(c) if c.status != Status::Pass => failed.push(format!("{} [{}]", c.name, c.note)),
            Some(_) => {}
        }
    }
    let summary: Vec<String> = names
        .iter()
        .filter_map(|n| checks.iter().find(|c| c.name.ends_with(n)))
        .map(|c| format!("{}={}", short(&c.name), c.residual.clone().or(c.exact.clone()).unwrap_or_default()))
        .collect();
    if missing.is_empty() && failed.is_empty() {
        outcome(true, summary.join("; "))
    } else {
        outcome(false, format!("missing {missing:?}, failed {failed:?}"))
    }
}

fn short(name: &str) -> &str {
    name.split_once(": ").map_or(name, |(_, b)| b)
}

fn context(model: AnyonModel) -> Context {
    Context::new(model, None, SEED, 1.0)
}

/// Winding number read off from the defining inequalities on lifted
/// centres and half-openings.
fn scan_oracle(c2: (f64, f64), c1: (f64, f64)) -> Option<i64> {
    (-5..=5).find(|&n| {
        let s = TAU * n as f64;
        c1.0 + c1.1 + s <= c2.0 - c2.1 && c2.0 + c2.1 <= c1.0 - c1.1 + s + TAU
    })
}

fn criterion_1() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/opposed.json");
    let scene = match load_scene(std::path::Path::new(path)) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let pair = relative_winding(scene.get("C2").unwrap(), scene.get("C1").unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pairs, mut mismatches) = (0, 0);
    while pairs < 1000 {
        let mut draw = || {
            let apex = MVec3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let (center, half) = (rng.random_range(-3.0 * PI..3.0 * PI), rng.random_range(0.05..1.2));
            (ConePath::cone(apex, center, half).unwrap(), (center, half))
        };
        let ((c2, p2), (c1, p1)) = (draw(), draw());
        if causally_separated(&c1, &c2) != Ok(true) {
            continue;
        }
        pairs += 1;
        mismatches += usize::from(relative_winding(&c2, &c1).ok() != scan_oracle(p2, p1) || scan_oracle(p2, p1).is_none());
    }
    outcome(pair == Ok(-1) && mismatches == 0, format!("N(C2, C1) = {pair:?}, {mismatches}/{pairs} oracle mismatches"))
}

fn criterion_2() -> Outcome {
    let checks = run_suite(Suite::Geometry, &context(AnyonModel::fermion()));
    from_suite(&checks, &["antisymmetry N12 + N21 = -1", "covariance under covering Poincaré group", "rebase invariance"])
}

fn criterion_3() -> Outcome {
    let model = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(2, 7));
    let checks = run_suite(Suite::Braid, &context(model.clone()));
    let suite = from_suite(&checks, &["exchange involution", "4-factor confluence", "fermion anticommutation"]);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut bad = 0;
    for _ in 0..1000 {
        let (k, m) = (rng.random_range(0..24i64), rng.random_range(1..24i64));
        let mdl = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(k, m));
        let [a, c1, c2, n] = [0; 4].map(|_| rng.random_range(-9..=9i64));
        // ω^{2 c1 c2 n} with ω = e^{2πi k/m}: exponent k·2c1c2n over m.
        let expected = CyclotomicPhase::new(k * 2 * c1 * c2 * n, m);
        bad += usize::from(mdl.monodromy_prefactor(a, a + c1, a + c1 + c2, a + c2, n).ok() != Some(expected));
    }
    let fermion = AnyonModel::fermion();
    let a = FieldSymbol::new(1, ObservableWord::atom("A"), Localization::path("C2", ConePath::cone(MVec3::ZERO, 1.0, 0.2).unwrap()));
    let b = FieldSymbol::new(1, ObservableWord::atom("B"), Localization::path("C1", ConePath::cone(MVec3::ZERO, 0.0, 0.2).unwrap()));
    let anti = exchange(&FieldWord::new(vec![a, b]), 0, &fermion).map(|w| w.coeff.to_complex());
    let anti_ok = matches!(anti, Ok(z) if (z + 1.0).norm() < 1e-15);
    outcome(
        suite.ok && bad == 0 && anti_ok,
        format!("{}; monodromy {bad}/1000 mismatches; fermion coefficient {anti:?}", suite.detail),
    )
}

fn criterion_4() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (k, m) in [(1, 2), (1, 3), (2, 5), (3, 7)] {
        let model = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(k, m));
        let o = from_suite(
            &run_suite(Suite::Twist, &context(model)),
            &[
                "twisted locality [F2, Z F1 Z*] = 0",
                "graded phase ratio = exchange coefficient",
                "canonical twist, reference cone on + x2-axis",
                "canonical twist, reference cone on - x2-axis",
            ],
        );
        ok &= o.ok;
        details.push(format!("s={k}/{m}: {}", if o.ok { "ok".into() } else { o.detail }));
    }
    // ω^{∓q²/2} with ω^{1/2} = e^{πis}.
    let model = AnyonModel::from_spin(ChargeGroup::Z, Rational64::new(1, 5));
    for (n0, sign) in [(-1, -1), (0, 1)] {
        for q in -6..=6i64 {
            let expected = Complex64::from_polar(1.0, sign as f64 * PI * 0.2 * (q * q) as f64);
            ok &= (model.twist_phase(q, n0).to_complex() - expected).norm() < 1e-12;
        }
    }
    outcome(ok, details.join("; "))
}

fn criterion_5() -> Outcome {
    from_suite(&run_suite(Suite::Tomita, &context(AnyonModel::fermion())), &["S² = 1", "S on charge 0 is the star map"])
}

fn criterion_6() -> Outcome {
    let model = AnyonModel::from_spin(ChargeGroup::ZN(3), Rational64::new(1, 3));
    let cpt = from_suite(
        &run_suite(Suite::Cpt, &context(model.clone())),
        &["Θ² = 1", "charge conjugation c -> -c", "geometric action C -> jC"],
    );
    let swap = from_suite(&run_suite(Suite::Tomita, &context(model)), &["second vacuum swap rejected"]);
    outcome(cpt.ok && swap.ok, format!("{}; {}", cpt.detail, swap.detail))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut worst = 0.0f64;
    let mut runs = 0;
    let mut errors = Vec::new();
    for n in 2..=4u32 {
        for k in 0..n as i64 {
            let model = AnyonModel::from_spin(ChargeGroup::ZN(n), Rational64::new(k, n as i64));
            for len in 1..=5 {
                for _ in 0..4 {
                    match lattice_oracle(&model, &sample::word(&mut rng, len, 1)) {
                        Ok(r) => worst = worst.max(r.max_residual()),
                        Err(e) => errors.push(e.to_string()),
                    }
                    runs += 1;
                }
            }
        }
    }
    outcome(errors.is_empty() && worst < 1e-12, format!("{runs} words, max residual {worst:.3e}, errors {errors:?}"))
}

fn criterion_8() -> Outcome {
    from_suite(
        &run_suite(Suite::Wigner, &context(AnyonModel::fermion().with_mass(1.0))),
        &[
            "cocycle",
            "U(r(2πk)) = e^(2πiks), s = 0",
            "U(r(2πk)) = e^(2πiks), s = 1/2",
            "U(r(2πk)) = e^(2πiks), s = 1/3",
            "U(j) U(g) U(j) = U(jgj)",
            "unitarity",
        ],
    )
}

fn criterion_9() -> Outcome {
    let model = AnyonModel::from_spin(ChargeGroup::ZN(3), Rational64::new(1, 3)).with_mass(1.0);
    let psi = WaveFunction::gaussian(Complex64::new(1.0, 0.5), [0.3, -0.2], 0.8);
    let u = apply_rep(&CoveringPoincare::rotation(TAU), SpinValue::from(model.spin), &psi);
    let mut worst = 0.0f64;
    for (p1, p2) in [(0.0, 0.0), (0.4, -0.7), (-1.2, 0.3)] {
        let p = MassShellPoint::new(1.0, p1, p2).unwrap();
        let eigen = u.eval(&p).unwrap() / psi.eval(&p).unwrap();
        worst = worst.max((eigen - model.sector_phase(1).to_complex()).norm());
    }
    outcome(worst < 1e-9, format!("|e^(2πis) - ω| = {worst:.3e}, ω = {}", model.sector_phase(1)))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("1 winding ground truth and definition oracle", Duration::from_secs(5), criterion_1),
        ("2 antisymmetry, covariance, rebase invariance", Duration::from_secs(60), criterion_2),
        ("3 exchange algebra", Duration::from_secs(60), criterion_3),
        ("4 twist", Duration::from_secs(60), criterion_4),
        ("5 pseudo-Tomita", Duration::from_secs(60), criterion_5),
        ("6 CPT and vacuum swap guard", Duration::from_secs(60), criterion_6),
        ("7 lattice oracle", Duration::from_secs(30), criterion_7),
        ("8 Wigner suite", Duration::from_secs(60), criterion_8),
        ("9 spin-statistics across modules", Duration::from_secs(60), criterion_9),
    ];
    let mut failures = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let ok = o.ok && elapsed < budget;
        failures += usize::from(!ok);
        println!(
            "{} criterion {name} ({:.2}s / {}s): {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
