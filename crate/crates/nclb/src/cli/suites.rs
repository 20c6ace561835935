use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hermet::metric_checks;
use crate::linemod::line_axioms;
use crate::preset::Preset;
use crate::report::{Check, SuiteReport};
use crate::tensalg::{
    formal_case_check, formal_sign_check, hopf_galois_check, star_compat_rescale, xi_alpha, xi_properties, Case,
    EvenOdd, TensorAlgebra,
};
use crate::thomnum::{thom_checks, ThomConfig};

pub const SUITES: [&str; 10] =
    ["calculus", "chern", "confluence", "even-odd", "gram", "hopf-galois", "line-axioms", "thom", "tz-star", "xi-alpha"];

/// Settings shared by every suite of one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub q0: f64,
    pub timings: bool,
}

/// Parse `all` or a comma list into sorted, de-duplicated suite names.
pub fn parse_suites(s: &str) -> Result<Vec<&'static str>> {
    if s.trim() == "all" {
        return Ok(SUITES.to_vec());
    }
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let known = SUITES.iter().find(|k| **k == name).ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
        out.push(*known);
    }
    if out.is_empty() {
        return Err(Error::UnknownSuite(s.to_string()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Every suite draws from its own stream, so selecting suites does not change results.
fn suite_rng(seed: u64, suite: &str) -> ChaCha8Rng {
    let h = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| Check { id: format!("{prefix}: {}", c.id), ..c }).collect()
}

pub fn run_suite(preset: &Preset, suite: &str, cfg: &RunConfig) -> SuiteReport {
    let start = Instant::now();
    let mut rng = suite_rng(cfg.seed, suite);
    let mut report = match run_checks(preset, suite, cfg, &mut rng) {
        Ok(Outcome::Checks(c)) => SuiteReport::new(suite, c),
        Ok(Outcome::Skip(reason)) => SuiteReport::skipped(suite, reason),
        Err(Error::NoStarOnL) => SuiteReport::skipped(suite, format!("NoStarOnL: {}", Error::NoStarOnL)),
        Err(e) => SuiteReport::new(suite, vec![Check::fail("error", e.to_string())]),
    };
    if cfg.timings {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report
}

enum Outcome {
    Checks(Vec<Check>),
    Skip(String),
}

fn run_checks(preset: &Preset, suite: &str, cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let n = cfg.samples;
    let checks = match suite {
        "confluence" => {
            if preset.pres.generators().is_empty() {
                return Ok(Outcome::Skip("no generators".into()));
            }
            let r = preset.pres.check_confluence(10 * n, 8, rng)?;
            let witness = match r.mismatches.iter().min_by_key(|m| m.word.len()) {
                None => format!("{} words, length ≤ 8, 3 reduction orders each", r.words_tested),
                Some(m) => format!("{}: {} vs {} ({} mismatches)", m.word, m.first, m.second, r.mismatches.len()),
            };
            vec![Check::from_bool("normal forms agree", r.mismatches.is_empty(), witness)]
        }
        "line-axioms" => {
            let mut out = Vec::new();
            for lm in &preset.modules {
                out.extend(prefixed(lm.name(), line_axioms(lm, n, rng)?));
            }
            out
        }
        "gram" => {
            let m = preset.metric()?;
            let gd = m.gram()?;
            let mut out = m.gram_checks(&gd)?;
            out.extend(metric_checks(&m, n, rng)?);
            let mut pole = None;
            for x in gd.upper.iter().chain(&gd.lower).flatten() {
                for c in x.terms().values() {
                    if let Err(e) = c.eval(cfg.q0) {
                        pole.get_or_insert_with(|| format!("{x}: {e}"));
                    }
                }
            }
            out.push(Check::from_bool(
                "Gram entries finite at q0",
                pole.is_none(),
                pole.unwrap_or_else(|| format!("q0 = {}", cfg.q0)),
            ));
            out
        }
        "tz-star" => {
            let m = preset.metric()?;
            let tz = TensorAlgebra::with_metric(&m);
            let lm = tz.line_module().clone();
            let mut out = vec![tz_anti_hom(&tz, 2 * n, rng)?];
            out.extend(tz.dual_basis_checks()?);
            for case in Case::ALL {
                out.push(formal_case_check(&lm, case, 3, n.div_ceil(2), rng)?);
            }
            out.push(formal_sign_check(&tz, 3, 1, rng)?);
            out
        }
        "hopf-galois" => {
            let mut out = Vec::new();
            for lm in &preset.modules {
                out.push(Check { id: format!("{}: k in [-4, 4]", lm.name()), ..hopf_galois_check(lm, 4)? });
            }
            out
        }
        "xi-alpha" => {
            let xa = xi_alpha(&preset.metric()?)?;
            let before = xa.alpha.clone();
            let xa = star_compat_rescale(&xa)?;
            let mut out = vec![Check::from_bool(
                "star compatible rescale",
                xa.alpha.is_one(),
                format!("alpha = {before}, alpha' = {}", xa.alpha),
            )];
            out.extend(xi_properties(&xa, n, rng)?);
            out
        }
        "even-odd" => {
            let xa = star_compat_rescale(&xi_alpha(&preset.metric()?)?)?;
            EvenOdd::new(&xa)?.checks(n, rng)?
        }
        "calculus" => {
            let (Some(dga), Some(lm)) = (&preset.calculus, preset.calculus_module()) else {
                return Ok(Outcome::Skip("preset has no differential calculus".into()));
            };
            crate::diffcalc::calculus_checks(dga, lm, n, rng)?
        }
        "chern" => {
            let (Some(dga), Some(lm)) = (&preset.calculus, preset.calculus_module()) else {
                return Ok(Outcome::Skip("preset has no differential calculus".into()));
            };
            crate::diffcalc::chern_checks(dga, lm, &dga.zero(), n, rng)?
        }
        "thom" => {
            let m = preset.metric()?;
            let tcfg = ThomConfig { samples: n, seed: cfg.seed, ..ThomConfig::default() };
            match thom_checks(&m, &tcfg) {
                Ok(r) => r.checks,
                Err(Error::BadPresentation(why)) => {
                    return Ok(Outcome::Skip(format!("only the circle has a numeric model ({why})")))
                }
                Err(e) => return Err(e),
            }
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(Outcome::Checks(checks))
}

/// `(xy)* = y*x*` on random pairs of grades in `[-3, 3]`.
fn tz_anti_hom(tz: &TensorAlgebra, pairs: usize, rng: &mut ChaCha8Rng) -> Result<Check> {
    use crate::gralg::sample::random_element;
    use crate::report::Shrink;
    use rand::Rng;
    let lm = tz.line_module();
    let p = lm.presentation();
    let gr = p.grading();
    let mut bad = Shrink::default();
    for _ in 0..pairs {
        let (a, b) = (rng.gen_range(-3..=3i64), rng.gen_range(-3..=3i64));
        let x = tz.element(a, &random_element(p, Some(&gr.scale(lm.degree(), a)), 4, 2, rng))?;
        let y = tz.element(b, &random_element(p, Some(&gr.scale(lm.degree(), b)), 4, 2, rng))?;
        let lhs = tz.star(&tz.product(&x, &y)?)?;
        let rhs = tz.product(&tz.star(&y)?, &tz.star(&x)?)?;
        if lhs != rhs {
            bad.record(x.payload().max_word_len() + y.payload().max_word_len(), || format!("x = {x:?}, y = {y:?}"));
        }
    }
    Ok(bad.finish("(xy)* = y*x*", pairs, format!("{pairs} pairs, grades in [-3, 3]")))
}
