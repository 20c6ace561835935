use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::connection::Connection;
use super::dga::Dga;
use super::form::Form;
use crate::error::{Error, Result};
use crate::gralg::sample::random_element;
use crate::linemod::LineModule;
use crate::report::{Check, Shrink};

fn random_form(dga: &Dga, k: usize, rng: &mut ChaCha8Rng) -> Result<Form> {
    let p = dga.presentation();
    let nb = dga.basis().len();
    let mut out = dga.zero();
    if k > nb {
        return Ok(out);
    }
    for _ in 0..rng.gen_range(1..=2) {
        let c = random_element(p, None, 2, 2, rng);
        let mut m: Vec<usize> = (0..nb).collect();
        while m.len() > k {
            m.remove(rng.gen_range(0..m.len()));
        }
        let mut t = dga.function(&c)?;
        for i in m {
            t = dga.wedge(&t, &dga.basis_form(i))?;
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}

/// A random single-term element of `Ω¹A`, or zero when there are no horizontal forms.
pub(crate) fn random_omega1a(dga: &Dga, rng: &mut ChaCha8Rng) -> Result<Form> {
    let hs: Vec<usize> = (0..dga.basis().len()).filter(|&i| dga.basis()[i].horizontal).collect();
    if hs.is_empty() {
        return Ok(dga.zero());
    }
    let i = hs[rng.gen_range(0..hs.len())];
    let p = dga.presentation();
    let want = p.grading().neg(&dga.basis()[i].degree);
    let c = random_element(p, Some(&want), 3, 1, rng);
    dga.wedge(&dga.function(&c)?, &dga.basis_form(i))
}

/// `d² = 0`, graded Leibniz, `A` commuting with the basis, and the derivation identities of `∇`.
pub fn calculus_checks(dga: &Arc<Dga>, lm: &Arc<LineModule>, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let p = dga.presentation();
    let zero_deg = p.grading().zero();
    let mut out = Vec::new();

    let mut dd = Shrink::default();
    let mut leib = Shrink::default();
    let mut central = Shrink::default();
    for _ in 0..samples {
        let k = rng.gen_range(0..=2);
        let x = random_form(dga, k, rng)?;
        let ddx = dga.d(&dga.d(&x)?)?;
        if !ddx.is_zero() {
            dd.record(x.size(), || format!("x = {x}, ddx = {ddx}"));
        }
        let l = rng.gen_range(0..=2);
        let y = random_form(dga, l, rng)?;
        let lhs = dga.d(&dga.wedge(&x, &y)?)?;
        let first = dga.wedge(&dga.d(&x)?, &y)?;
        let second = dga.wedge(&x, &dga.d(&y)?)?;
        let rhs = if k % 2 == 0 { first.try_add(&second)? } else { first.try_sub(&second)? };
        if lhs != rhs {
            leib.record(x.size() + y.size(), || format!("x = {x}, y = {y}"));
        }
        let a = random_element(p, Some(&zero_deg), 4, 2, rng);
        for i in 0..dga.basis().len() {
            let e = dga.basis_form(i);
            if dga.right_mul(&e, &a)? != e.left_mul(&a)? {
                central.record(a.max_word_len(), || format!("{} a ≠ a {} for a = {a}", e, e));
            }
        }
    }
    out.push(dd.finish("d² = 0", samples, "exact"));
    out.push(leib.finish("graded Leibniz", samples, "exact"));
    out.push(central.finish("basis 1-forms commute with A", samples, "exact"));

    let g = lm.degree().clone();
    let mut left = Shrink::default();
    let mut twisted = Shrink::default();
    let mut sig0 = Shrink::default();
    let mut curv = Shrink::default();
    let n = samples.min(50);
    for _ in 0..n {
        let zeta = if rng.gen_bool(0.5) { random_omega1a(dga, rng)? } else { dga.zero() };
        let conn = Connection::new(dga, lm, zeta.clone())?;
        let b = random_element(p, Some(&g), 3, 2, rng);
        let a = random_element(p, Some(&zero_deg), 2, 2, rng);
        let size = b.max_word_len() + a.max_word_len() + zeta.size();

        let lhs = conn.nabla(&(&a * &b))?;
        let rhs = dga.right_mul(&dga.d_function(&a)?, &b)?.try_add(&conn.nabla(&b)?.left_mul(&a)?)?;
        if lhs != rhs {
            left.record(size, || format!("a = {a}, b = {b}, ζ = {zeta}"));
        }

        let lhs = conn.nabla(&(&b * &a))?.try_sub(&dga.right_mul(&conn.nabla(&b)?, &a)?)?;
        if lhs != conn.sigma(&b, &a)? {
            twisted.record(size, || format!("a = {a}, b = {b}, ζ = {zeta}"));
        }

        let eta = random_omega1a(dga, rng)?;
        if conn.sigma0(&b, &eta)? != eta.left_mul(&b)? {
            sig0.record(size, || format!("b = {b}, η = {eta}"));
        }

        if conn.curvature(&b)? != conn.curvature_direct(&b)? {
            curv.record(size, || format!("b = {b}, ζ = {zeta}"));
        }
    }
    out.push(left.finish("∇(a b) = da b + a ∇b", n, "exact"));
    out.push(twisted.finish("∇(b a) = ∇(b) a + σ(b ⊗ da)", n, "exact"));
    out.push(sig0.finish("σ₀(b ⊗ η) = b η", n, "exact"));
    out.push(curv.finish("closed-form curvature = (d - ∇∧)∇", n, "exact"));
    Ok(out)
}

/// The trace of the curvature for a given `ζ`, its independence of `ζ` up to `d(Ω¹A)`,
/// and metric compatibility.
pub fn chern_checks(
    dga: &Arc<Dga>,
    lm: &Arc<LineModule>,
    zeta: &Form,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Check>> {
    let p = dga.presentation();
    let g = lm.degree().clone();
    let conn = Connection::new(dga, lm, zeta.clone())?;
    let omega = conn.chern()?;
    let mut out = vec![
        Check::pass("kappa", format!("kappa = {}", conn.kappa())),
        Check::pass("omega", format!("omega = {omega}")),
    ];
    let closed = conn.curvature_form()?;
    out.push(Check::from_bool("omega = dη - η∧η", omega == closed, format!("dη - η∧η = {closed}")));

    let mut curv = Shrink::default();
    let n = samples.min(20);
    for _ in 0..n {
        let b = random_element(p, Some(&g), 3, 2, rng);
        if conn.curvature(&b)? != conn.curvature_direct(&b)? {
            curv.record(b.max_word_len(), || format!("b = {b}"));
        }
    }
    out.push(curv.finish("closed-form curvature = (d - ∇∧)∇", n, "exact"));

    let mut class = Shrink::default();
    let mut used = 0;
    for _ in 0..samples.min(50) {
        let s = random_omega1a(dga, rng)?;
        let k = conn.kappa();
        let side = dga.wedge(&s, &s)?.is_zero()
            && dga.wedge(&s, k)?.try_add(&dga.wedge(k, &s)?)?.is_zero()
            && dga.wedge(&s, zeta)?.try_add(&dga.wedge(zeta, &s)?)?.is_zero();
        if !side {
            continue;
        }
        used += 1;
        let shifted = Connection::new(dga, lm, zeta.try_add(&s)?)?.chern()?;
        let diff = shifted.try_sub(&omega)?;
        if diff != dga.d(&s)? {
            class.record(s.size(), || format!("ζ' = {s}: difference {diff}"));
        }
    }
    out.push(class.finish("ω(ζ + ζ') - ω(ζ) = dζ'", used, format!("{used} samples with ζ'∧ζ' = 0")));

    out.push(match conn.metric_compatible() {
        Ok(true) => Check::pass("metric compatible ζ + ζ* = 0", "compatible"),
        Ok(false) => Check::pass("metric compatible ζ + ζ* = 0", "not compatible"),
        Err(Error::NoFormStar) => Check::skip("metric compatible ζ + ζ* = 0", "NoFormStar: no star on 1-forms"),
        Err(e) => return Err(e),
    });
    Ok(out)
}
