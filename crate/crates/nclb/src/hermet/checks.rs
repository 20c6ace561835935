use rand_chacha::ChaCha8Rng;

use super::metric::HermitianMetric;
use crate::error::Result;
use crate::gralg::sample::random_element;
use crate::report::{Check, Shrink};

/// `⟨a·e, f̄⟩ = a⟨e,f̄⟩`, `⟨e, conj(a·f)⟩ = ⟨e,f̄⟩a*` and `⟨e,f̄⟩* = ⟨f,ē⟩` on random samples.
pub fn metric_checks(m: &HermitianMetric, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let lm = m.line_module();
    let p = lm.presentation();
    let zero = p.grading().zero();
    let (mut left, mut right, mut sym) = (Shrink::default(), Shrink::default(), Shrink::default());
    for _ in 0..samples {
        let a = random_element(p, Some(&zero), 2, 2, rng);
        let e = random_element(p, Some(lm.degree()), 3, 2, rng);
        let f = random_element(p, Some(lm.degree()), 3, 2, rng);
        let size = a.max_word_len() + e.max_word_len() + f.max_word_len();
        let ef = m.inner(&lm.element(&e)?, &lm.element(&f)?)?;
        let ae = m.inner(&lm.element(&a.try_mul(&e)?)?, &lm.element(&f)?)?;
        if ae != a.try_mul(&ef)? {
            left.record(size, || format!("a = {a}, e = {e}, f = {f}"));
        }
        let af = m.inner(&lm.element(&e)?, &lm.element(&a.try_mul(&f)?)?)?;
        if af != ef.try_mul(&a.star()?)? {
            right.record(size, || format!("a = {a}, e = {e}, f = {f}"));
        }
        if ef.star()? != m.inner(&lm.element(&f)?, &lm.element(&e)?)? {
            sym.record(size, || format!("e = {e}, f = {f}"));
        }
    }
    Ok(vec![
        left.finish("⟨a e, f̄⟩ = a⟨e, f̄⟩", samples, format!("{samples} samples")),
        right.finish("⟨e, conj(a f)⟩ = ⟨e, f̄⟩ a*", samples, format!("{samples} samples")),
        sym.finish("⟨e, f̄⟩* = ⟨f, ē⟩", samples, format!("{samples} samples")),
    ])
}
