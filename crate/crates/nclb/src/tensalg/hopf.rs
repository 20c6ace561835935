use crate::error::Result;
use crate::gralg::AlgebraElement;
use crate::linemod::LineModule;
use crate::report::Check;

type AE = AlgebraElement;

/// Pairs `(l, r)` with `l ∈ B_{kg}`, `r ∈ B_{-kg}` and `Σ l r = 1`, built by nesting the
/// line module witnesses: `ccc` for `k > 0`, `cc` for `k < 0`.
pub fn hopf_galois_witnesses(lm: &LineModule, k: i64) -> Result<Vec<(AE, AE)>> {
    let base = if k >= 0 { lm.ccc() } else { lm.cc() };
    let mut acc = vec![(AE::one(lm.presentation()), AE::one(lm.presentation()))];
    for _ in 0..k.unsigned_abs() {
        let mut next = Vec::with_capacity(acc.len() * base.len());
        for (x, y) in base {
            for (l, r) in &acc {
                next.push((x.try_mul(l)?, r.try_mul(y)?));
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Degrees and `Σ l r = 1` for every `|k| ≤ max`.
pub fn hopf_galois_check(lm: &LineModule, max: i64) -> Result<Check> {
    let p = lm.presentation();
    let gr = p.grading();
    for k in -max..=max {
        let w = hopf_galois_witnesses(lm, k)?;
        let dl = gr.scale(lm.degree(), k);
        let dr = gr.neg(&dl);
        if let Some((l, r)) = w.iter().find(|(l, r)| !l.has_degree(&dl) || !r.has_degree(&dr)) {
            return Ok(Check::fail("hopf-galois witnesses", format!("k = {k}: ({l}, {r}) has the wrong degrees")));
        }
        let total = AE::sum(p, w.iter().map(|(l, r)| l * r));
        if !total.is_one() {
            return Ok(Check::fail("hopf-galois witnesses", format!("k = {k}: Σ l r = {total}")));
        }
    }
    Ok(Check::pass("hopf-galois witnesses", format!("|k| ≤ {max}")))
}
