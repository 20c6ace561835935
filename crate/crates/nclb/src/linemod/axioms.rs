use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::module::LineModule;
use crate::error::Result;
use crate::gralg::sample::{random_element, random_scalar};
use crate::gralg::AlgebraElement;
use crate::report::{Check, Shrink};

type AE = AlgebraElement;

/// A random central degree-0 element; falls back to a scalar when the sampled
/// element is not central.
pub fn central_sample(lm: &LineModule, rng: &mut ChaCha8Rng) -> AE {
    let p = lm.presentation();
    let zero = p.grading().zero();
    if rng.gen_bool(0.5) {
        let x = random_element(p, Some(&zero), 4, 2, rng);
        if x.is_central() {
            return x;
        }
    }
    AE::scalar(p, random_scalar(rng))
}

fn eq_check(id: &str, lhs: &AE, rhs: &AE, ok: &str) -> Check {
    Check::from_bool(id, lhs == rhs, if lhs == rhs { ok.to_string() } else { format!("{lhs} ≠ {rhs}") })
}

/// Exact checks of the line-module axioms on random homogeneous samples.
pub fn line_axioms(lm: &LineModule, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let p = lm.presentation();
    let gr = p.grading();
    let g = lm.degree().clone();
    let neg = gr.neg(&g);
    let zero = gr.zero();
    let one = AE::one(p);
    let n = lm.rank();
    let mut out = Vec::new();

    let wv = AE::sum(p, lm.w().iter().zip(lm.v()).map(|(w, v)| w * v));
    out.push(eq_check("w^T v = 1", &wv, &one, "1"));

    let pm = lm.idempotent();
    let mut bad = None;
    for i in 0..n {
        for k in 0..n {
            let s = AE::sum(p, (0..n).map(|j| &pm[i][j] * &pm[j][k]));
            if s != pm[i][k] && bad.is_none() {
                bad = Some(format!("(P²)[{i}][{k}] = {s} ≠ {}", pm[i][k]));
            }
        }
    }
    out.push(Check::from_bool("P^2 = P", bad.is_none(), bad.unwrap_or_else(|| format!("{n}x{n} exact"))));

    let tr = AE::sum(p, (0..n).map(|i| pm[i][i].clone()));
    out.push(Check::from_bool("trace P has degree 0", tr.has_degree(&zero), format!("tr P = {tr}")));

    let mut dual = Shrink::default();
    let mut snake_l = Shrink::default();
    let mut snake_r = Shrink::default();
    let mut prop34 = Shrink::default();
    let mut inverses = Shrink::default();
    let mut right = Shrink::default();
    let mut inject = Shrink::default();
    let coev1 = lm.coev(&one)?;
    for _ in 0..samples {
        let b = random_element(p, Some(&g), 3, 2, rng);
        let b2 = random_element(p, Some(&g), 3, 2, rng);
        let f = random_element(p, Some(&neg), 3, 2, rng);
        let f2 = random_element(p, Some(&neg), 3, 2, rng);
        let a = random_element(p, Some(&zero), 2, 2, rng);
        let size = b.max_word_len() + f.max_word_len() + a.max_word_len();
        let e = lm.element(&b)?;
        let e2 = lm.element(&b2)?;
        let phi = lm.dual_element(&f)?;
        let phi2 = lm.dual_element(&f2)?;

        let mut rebuilt = AE::zero(p);
        for i in 0..n {
            rebuilt = &rebuilt + &(&lm.ev(&e, &lm.e_lower(i))? * lm.e_upper(i).payload());
        }
        if rebuilt != b {
            dual.record(size, || format!("x = {b}"));
        }

        let mut left = AE::zero(p);
        let mut rightside = AE::zero(p);
        for (c, c1) in &coev1 {
            left = &left + &(&lm.ev(&e, c)? * c1.payload());
            rightside = &rightside + &(c.payload() * &lm.ev(c1, &phi)?);
        }
        if left != b {
            snake_l.record(size, || format!("e = {b}"));
        }
        if rightside != f {
            snake_r.record(size, || format!("φ = {f}"));
        }

        // ev⊗id = id⊗coev⁻¹ on L⊗L°⊗L, and coev⁻¹⊗id = id⊗ev on L°⊗L⊗L°.
        let one_way = &lm.ev(&e, &phi)? * &b2;
        let other = &b * &lm.coev_inv(&[(phi.clone(), e2.clone())])?;
        let one_way2 = &lm.coev_inv(&[(phi.clone(), e.clone())])? * &f2;
        let other2 = &f * &lm.ev(&e, &phi2)?;
        if one_way != other || one_way2 != other2 {
            prop34.record(size, || format!("e = {b}, φ = {f}, f = {b2}"));
        }

        let back = AE::sum(p, lm.ev_inv(&a)?.iter().map(|(x, y)| lm.ev(x, y).unwrap()));
        if back != a || lm.coev_inv(&lm.coev(&a)?)? != a {
            inverses.record(size, || format!("a = {a}"));
        }

        let z = lm.right_factor(|x| x.try_mul(&a))?;
        if z != a || &b * &a != &b * &z {
            right.record(size, || format!("a = {a}"));
        }

        let recovered = AE::sum(p, lm.w().iter().zip(lm.v()).map(|(w, v)| w * &(v * &a)));
        if recovered != a {
            inject.record(size, || format!("a = {a}"));
        }
    }
    out.push(dual.finish("dual basis x = Σ e_i(x) e^i", samples, "exact"));
    out.push(snake_l.finish("snake (ev⊗id)(e⊗coev 1) = e", samples, "exact"));
    out.push(snake_r.finish("snake (id⊗ev)(coev 1⊗φ) = φ", samples, "exact"));
    out.push(prop34.finish("ev⊗id = id⊗coev⁻¹", samples, "both identities exact"));
    out.push(inverses.finish("ev∘ev⁻¹ = id, coev⁻¹∘coev = id", samples, "exact"));
    out.push(right.finish("module maps are right multiplications", samples, "z = Σ w_i T(v_i)"));
    out.push(inject.finish("L.a = 0 implies a = 0", samples, "a = Σ w_i (v_i a)"));

    let mut phis = Shrink::default();
    let unital = lm.phi(&one)? == one;
    for _ in 0..samples.min(50) {
        let z1 = central_sample(lm, rng);
        let z2 = central_sample(lm, rng);
        let lhs = lm.phi(&(&z1 * &z2))?;
        let rhs = &lm.phi(&z1)? * &lm.phi(&z2)?;
        if lhs != rhs {
            phis.record(z1.max_word_len() + z2.max_word_len(), || format!("z = {z1}, z' = {z2}"));
        }
    }
    if unital {
        out.push(phis.finish("Φ_L unital and multiplicative", samples.min(50), "exact"));
    } else {
        out.push(Check::fail("Φ_L unital and multiplicative", "Φ_L(1) ≠ 1"));
    }
    Ok(out)
}
