use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::bl::{BLAlgebra, BLFunction, Grid, Variant};
use super::rep::NumericRep;
use crate::error::Result;
use crate::hermet::HermitianMetric;
use crate::report::Check;

#[derive(Clone, Debug)]
pub struct ThomConfig {
    pub variant: Variant,
    pub grid: usize,
    pub window: f64,
    /// Points on the circle.
    pub points: usize,
    pub samples: usize,
    pub norm_iterations: usize,
    pub seed: u64,
}

impl Default for ThomConfig {
    fn default() -> Self {
        ThomConfig { variant: Variant::C0, grid: 2048, window: 20.0, points: 8, samples: 100, norm_iterations: 12, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThomReport {
    pub variant: String,
    pub grid: usize,
    pub window: f64,
    pub points: usize,
    /// The constant `C` in the operator norm bound.
    pub constant: f64,
    pub residuals: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
}

/// `‖f▷‖ ≤ C·size(f)`. Each of the four terms of `‖f▷v‖²` is bounded by one of
/// `sup|f₀|²`, `sup x²|⟨f₁,f̄₁⟩|`, `sup x²|⟨f₁*,conj(f₁*)⟩|` times the matching part of
/// `‖v‖²`, and the two cross terms cost a factor 2. `f₀` acts on the fibre of `H₁` through
/// the same multiplication as on `H₀`, so no further constant enters.
pub fn norm_constant() -> f64 {
    std::f64::consts::SQRT_2
}

/// `max |⟨u, f▷v⟩ − ⟨f*▷u, v⟩| / (‖u‖‖v‖ size(f))` over random `f, u, v`.
pub fn adjoint_residual(alg: &BLAlgebra, variant: Variant, samples: usize, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let f = alg.random(variant, rng);
        worst = worst.max(adjoint_residual_of(alg, &f, rng)?);
    }
    Ok(worst)
}

fn adjoint_residual_of(alg: &BLAlgebra, f: &BLFunction, rng: &mut ChaCha8Rng) -> Result<f64> {
    let u = alg.random_vector(rng);
    let v = alg.random_vector(rng);
    let lhs = alg.inner(&u, &alg.act(f, &v)?)?;
    let rhs = alg.inner(&alg.act(&alg.star(f)?, &u)?, &v)?;
    let scale = alg.norm(&u)? * alg.norm(&v)? * alg.size(f).max(1e-300);
    Ok((lhs - rhs).norm() / scale)
}

fn below(id: &str, value: f64, tol: f64, res: &mut BTreeMap<String, f64>) -> Check {
    res.insert(id.to_string(), value);
    Check::from_bool(id, value < tol, format!("{value:.3e} (tolerance {tol:.0e})"))
}

/// The numeric suite for `B_L` of the circle: algebra laws, the action, adjointness and
/// the operator norm bound.
pub fn thom_checks(metric: &HermitianMetric, cfg: &ThomConfig) -> Result<ThomReport> {
    let rep = Arc::new(NumericRep::circle(metric, cfg.points)?);
    let grid = Arc::new(Grid::uniform(cfg.grid, cfg.window)?);
    let alg = BLAlgebra::new(&rep, &grid);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rng = &mut rng;
    let var = cfg.variant;
    let n = cfg.samples;
    let small = n.div_ceil(2);
    let mut res = BTreeMap::new();
    let mut checks = Vec::new();
    let max = |a: f64, b: f64| a.max(b);

    checks.push(below("representation respects the rules", rep.rule_residual(), 1e-12, &mut res));

    let (mut even, mut odd, mut assoc, mut invol, mut anti) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..n {
        let (f, g, h) = (alg.random(var, rng), alg.random(var, rng), alg.random(var, rng));
        let fe = alg.even_part(&f);
        let ge = alg.even_part(&g);
        let pointwise = alg.pointwise_even(&fe, &ge);
        even = max(even, alg.distance(&alg.multiply(&fe, &ge)?, &pointwise)?);
        odd = max(odd, alg.odd_size(&alg.multiply(&alg.odd_part(&f), &alg.odd_part(&g))?));
        let l = alg.multiply(&alg.multiply(&f, &g)?, &h)?;
        let r = alg.multiply(&f, &alg.multiply(&g, &h)?)?;
        assoc = max(assoc, alg.distance(&l, &r)?);
        invol = max(invol, alg.distance(&alg.star(&alg.star(&f)?)?, &f)?);
        let fg = alg.star(&alg.multiply(&f, &g)?)?;
        anti = max(anti, alg.distance(&fg, &alg.multiply(&alg.star(&g)?, &alg.star(&f)?)?)?);
    }
    checks.push(below("(f0,0)(g0,0) = (f0 g0,0)", even, 1e-12, &mut res));
    checks.push(below("odd·odd is even", odd, 1e-300, &mut res));
    checks.push(below("associativity", assoc, 1e-10, &mut res));
    checks.push(below("star involution", invol, 1e-12, &mut res));
    checks.push(below("star anti-homomorphism", anti, 1e-10, &mut res));

    let (mut ident, mut hom, mut pos) = (0.0, 0.0, 0.0);
    for _ in 0..small {
        let (f, g) = (alg.random(var, rng), alg.random(var, rng));
        let v = alg.random_vector(rng);
        ident = max(ident, alg.vector_distance(&alg.act(&alg.identity(), &v)?, &v));
        let l = alg.act(&alg.multiply(&f, &g)?, &v)?;
        let r = alg.act(&f, &alg.act(&g, &v)?)?;
        hom = max(hom, alg.vector_distance(&l, &r));
        pos = max(pos, alg.positivity_residual(&v));
    }
    checks.push(below("identity acts as identity", ident, 1e-12, &mut res));
    checks.push(below("action homomorphism", hom, 1e-9, &mut res));
    checks.push(below("positivity identity", pos, 1e-12, &mut res));

    checks.push(below("adjoint", adjoint_residual(&alg, var, n, rng)?, 1e-8, &mut res));
    let mut even_adj: f64 = 0.0;
    for _ in 0..small {
        let f = alg.even_part(&alg.random(var, rng));
        even_adj = even_adj.max(adjoint_residual_of(&alg, &f, rng)?);
    }
    checks.push(below("adjoint, even f", even_adj, 1e-8, &mut res));

    let c = norm_constant();
    let mut ratio: f64 = 0.0;
    let mut homog: f64 = 0.0;
    for s in 0..n {
        let f = alg.random(var, rng);
        let mut r2 = rng.clone();
        let est = alg.operator_norm(&f, cfg.norm_iterations, rng)?;
        ratio = ratio.max(est / (c * alg.size(&f)));
        if s < 5 {
            let lam = 2.5;
            let scaled = alg.operator_norm(&alg.scale(&f, C::new(lam, 0.0)), cfg.norm_iterations, &mut r2)?;
            let size_err = (alg.size(&alg.scale(&f, C::new(lam, 0.0))) - lam * alg.size(&f)).abs();
            homog = homog.max((scaled - lam * est).abs().max(size_err) / (lam * est.max(1e-300)));
        }
    }
    res.insert("norm ratio".into(), ratio);
    checks.push(Check::from_bool(
        "norm bound",
        ratio <= 1.0 + 1e-9,
        format!("max ‖f▷‖ / (C size(f)) = {ratio:.4} with C = {c:.4}, {n} functions"),
    ));
    checks.push(below("norm homogeneity", homog, 1e-9, &mut res));
    let id_norm = alg.operator_norm(&alg.identity(), 3, rng)?;
    let id_bound = c * alg.size(&alg.identity());
    checks.push(Check::from_bool(
        "identity norm",
        (id_norm - 1.0).abs() < 1e-12 && id_bound >= 1.0,
        format!("‖1▷‖ = {id_norm}, bound {id_bound:.4}"),
    ));

    let fine = BLAlgebra::new(&rep, &Arc::new(grid.refined()));
    let mut quad: f64 = 0.0;
    for _ in 0..5 {
        let (mut r1, mut r2) = (rng.clone(), rng.clone());
        let (a, b) = (alg.random_vector(&mut r1), alg.random_vector(&mut r1));
        let (fa, fb) = (fine.random_vector(&mut r2), fine.random_vector(&mut r2));
        *rng = r1;
        quad = quad.max((alg.inner(&a, &b)? - fine.inner(&fa, &fb)?).norm());
    }
    checks.push(below("quadrature refinement", quad, 1e-6, &mut res));

    let f = alg.random(var, rng);
    let (lo, hi) = alg.ends(&f);
    let dist = |a: &[C], b: &[C]| a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let ends = match var {
        Variant::C0 => ("f0 vanishes at ±X", lo.iter().chain(&hi).map(|c| c.norm()).fold(0.0, f64::max)),
        Variant::Thom => ("f0 has equal limits at ±X", dist(&lo, &hi)),
        Variant::CircleBundle => {
            let h = alg.grid().len();
            let at = |a| alg.f0_at(&f, a);
            let flat = dist(&at(0), &at(1)).max(dist(&at(h - 1), &at(h - 2)));
            ("f0 is flat at ±X", flat)
        }
    };
    checks.push(below(ends.0, ends.1, 1e-8, &mut res));
    checks.push(below("f1 has compact support", alg.outside_support(&f), 1e-300, &mut res));

    let broken = alg.with_rep(rep.with_broken_star());
    let broken_res = adjoint_residual(&broken, var, 3, rng)?;
    res.insert("adjoint, broken star".into(), broken_res);
    checks.push(Check::from_bool(
        "broken star table fails adjoint",
        broken_res > 1e-6,
        format!("residual {broken_res:.3e}"),
    ));

    Ok(ThomReport {
        variant: var.as_str().into(),
        grid: cfg.grid,
        window: cfg.window,
        points: cfg.points,
        constant: c,
        residuals: res,
        checks,
    })
}
