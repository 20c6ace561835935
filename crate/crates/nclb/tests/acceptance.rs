//! One line per acceptance criterion. Criterion 1 asks for the opposite sign of the
//! trace the curvature formula produces; it is reported as FAIL and the faithful value
//! is asserted instead.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use nclb::diffcalc::{calculus_checks, kappa};
use nclb::error::Error;
use nclb::gralg::sample::random_element;
use nclb::gralg::{AlgebraElement, GradingGroup, Presentation, PresentationSpec};
use nclb::linemod::LineModule;
use nclb::preset::Preset;
use nclb::report::Check;
use nclb::tensalg::{
    formal_case_check, hopf_galois_check, star_compat_rescale, xi_alpha, xi_properties, Case, TensorAlgebra,
};
use nclb::thomnum::{adjoint_residual, BLAlgebra, Grid, NumericRep, ThomConfig, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const KNOWN_CONFLICTS: [u32; 1] = [1];

fn all_pass(checks: &[Check]) -> Outcome {
    match checks.iter().find(|c| !c.passed()) {
        None => Ok(format!("{} checks", checks.len())),
        Some(c) => Err(format!("{}: {}", c.id, c.witness)),
    }
}

fn ok(b: bool, yes: String, no: String) -> Outcome {
    if b {
        Ok(yes)
    } else {
        Err(no)
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn rng(n: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed + n)
}

fn c1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_nclb"))
        .args(["chern", "--preset", "slq2", "--zeta", "0"])
        .output()
        .map_err(|x| x.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text.lines().find_map(|l| l.find("omega =").map(|i| l[i..].trim().to_string())).unwrap_or_default();
    assert!(line.contains("omega = -q^3 e+^e-"), "trace of the curvature formula changed: {line}");
    ok(line.ends_with("omega = q^3 e+^e-"), line.clone(), format!("{line} (expected q^3 e+^e-)"))
}

fn c2() -> Outcome {
    let s = Preset::slq2();
    let dga = s.calculus.clone().unwrap();
    let k = kappa(&dga, s.module("plus").map_err(e)?).map_err(e)?;
    let c = Preset::circle();
    let kc = kappa(c.calculus.as_ref().unwrap(), c.line_module().map_err(e)?).map_err(e)?;
    let want = dga.parse("e0").map_err(e)?;
    ok(k == want && kc.is_zero(), format!("slq2 {k}, circle 0"), format!("slq2 {k}, circle {kc}"))
}

fn c3() -> Outcome {
    for p in [Preset::slq2(), Preset::circle()] {
        for lm in &p.modules {
            let m = lm.idempotent();
            let n = m.len();
            for i in 0..n {
                for k in 0..n {
                    let sq = AlgebraElement::sum(&p.pres, (0..n).map(|j| &m[i][j] * &m[j][k]));
                    if sq != m[i][k] {
                        return Err(format!("{}: (P²)[{i}][{k}] = {sq}, P = {}", lm.name(), m[i][k]));
                    }
                }
            }
        }
    }
    Ok("all line modules of both presets".into())
}

fn c4() -> Outcome {
    let mut n = 0;
    for p in [Preset::slq2(), Preset::circle()] {
        let m = p.metric().map_err(e)?;
        let checks = m.gram_checks(&m.gram().map_err(e)?).map_err(e)?;
        all_pass(&checks)?;
        n += checks.len();
    }
    Ok(format!("{n} identities exact"))
}

fn c5() -> Outcome {
    let mut r = rng(5);
    for p in [Preset::slq2(), Preset::circle()] {
        let tz = TensorAlgebra::with_metric(&p.metric().map_err(e)?);
        let lm = tz.line_module().clone();
        let gr = p.pres.grading();
        for _ in 0..200 {
            let (a, b) = (r.gen_range(-3..=3i64), r.gen_range(-3..=3i64));
            let x = tz.element(a, &random_element(&p.pres, Some(&gr.scale(lm.degree(), a)), 4, 2, &mut r)).map_err(e)?;
            let y = tz.element(b, &random_element(&p.pres, Some(&gr.scale(lm.degree(), b)), 4, 2, &mut r)).map_err(e)?;
            let lhs = tz.star(&tz.product(&x, &y).map_err(e)?).map_err(e)?;
            let rhs = tz.product(&tz.star(&y).map_err(e)?, &tz.star(&x).map_err(e)?).map_err(e)?;
            if lhs != rhs {
                return Err(format!("{}: x = {x:?}, y = {y:?}", p.pres.name()));
            }
        }
        all_pass(&tz.dual_basis_checks().map_err(e)?)?;
    }
    Ok("200 pairs per preset, dual basis exact".into())
}

fn c6() -> Outcome {
    let mut r = rng(6);
    for p in [Preset::slq2(), Preset::circle()] {
        let lm = p.line_module().map_err(e)?;
        for case in Case::ALL {
            all_pass(&[formal_case_check(lm, case, 3, 50, &mut r).map_err(e)?])?;
        }
    }
    Ok("cases 1-5, shapes up to 3, 50 samples".into())
}

fn c7() -> Outcome {
    let c = Preset::circle();
    let xa = star_compat_rescale(&xi_alpha(&c.metric().map_err(e)?).map_err(e)?).map_err(e)?;
    if !xa.alpha.is_one() {
        return Err(format!("alpha = {}", xa.alpha));
    }
    all_pass(&xi_properties(&xa, 100, &mut rng(7)).map_err(e)?)
}

fn c8() -> Outcome {
    for p in [Preset::slq2(), Preset::circle()] {
        for lm in &p.modules {
            all_pass(&[hopf_galois_check(lm, 4).map_err(e)?])?;
        }
    }
    Ok("|k| ≤ 4, every line module".into())
}

fn c9() -> Outcome {
    let s = Preset::slq2();
    let r = s.pres.check_confluence(1000, 8, &mut rng(9)).map_err(e)?;
    ok(
        r.mismatches.is_empty() && r.words_tested == 1000,
        format!("{} words, 0 mismatches", r.words_tested),
        format!("{} mismatches, first {:?}", r.mismatches.len(), r.mismatches.first()),
    )
}

fn c10() -> Outcome {
    let s = Preset::slq2();
    let dga = s.calculus.clone().unwrap();
    let lm = s.calculus_module().unwrap();
    let mut r = rng(10);
    all_pass(&calculus_checks(&dga, lm, 100, &mut r).map_err(e)?)?;
    let e0 = dga.parse("e0").map_err(e)?;
    let zero = s.pres.grading().zero();
    for _ in 0..100 {
        let x = random_element(&s.pres, Some(&zero), 6, 3, &mut r);
        if dga.right_mul(&e0, &x).map_err(e)? != e0.left_mul(&x).map_err(e)? {
            return Err(format!("e0 x ≠ x e0 for x = {x}"));
        }
    }
    Ok("d² = 0, Leibniz on 100 forms; e0 central on 100 samples".into())
}

fn c11() -> Outcome {
    let c = Preset::circle();
    let report = nclb::thomnum::thom_checks(&c.metric().map_err(e)?, &ThomConfig::default()).map_err(e)?;
    for id in ["associativity", "adjoint", "norm bound"] {
        let check = report.checks.iter().find(|k| k.id == id).ok_or(format!("missing {id}"))?;
        all_pass(std::slice::from_ref(check))?;
    }
    let res = &report.residuals;
    Ok(format!(
        "associativity {:.1e}, adjoint {:.1e}, norm ratio {:.3} (C = {:.4})",
        res["associativity"], res["adjoint"], res["norm ratio"], report.constant
    ))
}

fn c12() -> Outcome {
    let c = Preset::circle();
    let rep = NumericRep::circle(&c.metric().map_err(e)?, 8).map_err(e)?;
    let grid = Arc::new(Grid::uniform(256, 20.0).map_err(e)?);
    let broken = BLAlgebra::new(&Arc::new(rep.with_broken_star()), &grid);
    let residual = adjoint_residual(&broken, Variant::C0, 10, &mut rng(12)).map_err(e)?;
    if residual < 1e-6 {
        return Err(format!("broken star passes adjoint ({residual:.1e})"));
    }

    let spec = PresentationSpec {
        name: "inconsistent".into(),
        generators: vec!["x".into(), "y".into()],
        grading: GradingGroup::integers(),
        degrees: vec![vec![0], vec![0]],
        rules: vec![("x y".into(), "1".into()), ("y x".into(), "2".into())],
        star: None,
        antipode: None,
    };
    let bad = Presentation::new(&spec).map_err(e)?;
    let report = bad.check_confluence(200, 6, &mut rng(13)).map_err(e)?;
    if report.mismatches.is_empty() {
        return Err("inconsistent rules pass confluence".into());
    }

    let s = Preset::slq2();
    let lm = s.module("plus").map_err(e)?;
    let two = AlgebraElement::parse(&s.pres, "2").map_err(e)?;
    let v2 = lm.v().iter().map(|v| &two * v).collect();
    let scaled = LineModule::new("v2", &s.pres, lm.degree().clone(), v2, lm.w().to_vec(), None, None);
    match scaled {
        Err(Error::DegenerateVectors(_)) => {}
        other => return Err(format!("v scaled by 2 gave {other:?}")),
    }
    Ok(format!("adjoint residual {residual:.1e}, {} mismatches, DegenerateVectors", report.mismatches.len()))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 12] = [
    (1, "Chern trace slq2", 5, c1),
    (2, "kappa", 1, c2),
    (3, "idempotent", 1, c3),
    (4, "Gram identities", 5, c4),
    (5, "T_Z star", 10, c5),
    (6, "associativity case table", 60, c6),
    (7, "xi/alpha circle", 10, c7),
    (8, "Hopf-Galois", 5, c8),
    (9, "confluence fuzz", 30, c9),
    (10, "calculus soundness", 30, c10),
    (11, "numeric Thom suite", 120, c11),
    (12, "negative controls", 120, c12),
];

fn main() {
    let mut unexpected = Vec::new();
    for (n, name, limit, f) in CRITERIA {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let slow = elapsed > Duration::from_secs(limit);
        let (status, detail) = match (&outcome, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; too slow")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        println!("{status} criterion {n:>2} ({name}): {detail} [{:.2} s, limit {limit} s]", elapsed.as_secs_f64());
        if status == "FAIL" && !KNOWN_CONFLICTS.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
