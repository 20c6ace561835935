use rand_chacha::ChaCha8Rng;

use super::tz::{TensorAlgebra, TzElement};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::gralg::sample::random_element;
use crate::gralg::AlgebraElement;
use crate::hermet::{find_inverse, HermitianMetric};
use crate::report::{Check, Shrink};

type AE = AlgebraElement;

/// `ξ ∈ T(L)` of grade 2 and the central element `α`, for a line module with `2g = 0`.
#[derive(Clone, Debug)]
pub struct XiAlpha {
    pub metric: HermitianMetric,
    pub tz: TensorAlgebra,
    pub xi: TzElement,
    pub alpha: AE,
    /// The fourth root used by [`star_compat_rescale`], when it was applied.
    pub beta: Option<AE>,
}

impl XiAlpha {
    pub fn xi_payload(&self) -> &AE {
        self.xi.payload()
    }

    pub fn is_star_compatible(&self) -> bool {
        self.alpha.is_one()
    }
}

/// `ξ = e^{j*} g_{ji} ⊗ e^i` and `α = ⟨e^{j*} g_{ji}, conj(e^{i*})⟩`.
pub fn xi_alpha(m: &HermitianMetric) -> Result<XiAlpha> {
    let lm = m.line_module();
    let p = lm.presentation();
    let gr = p.grading();
    if !gr.is_zero(&gr.scale(lm.degree(), 2)) || p.star_table().is_none() {
        return Err(Error::NoStarOnL);
    }
    let gd = m.gram()?;
    let n = lm.rank();
    let mut xi = AE::zero(p);
    for j in 0..n {
        let vs = lm.v()[j].star()?;
        for i in 0..n {
            xi = xi.try_add(&vs.try_mul(&gd.lower[j][i])?.try_mul(&lm.v()[i])?)?;
        }
    }
    let alpha = xi.try_mul(m.scale())?;
    let zero = gr.zero();
    if !alpha.is_central() {
        return Err(Error::NotCentral(format!("alpha = {alpha}")));
    }
    if alpha.star()? != alpha {
        return Err(Error::NotHermitian(format!("alpha = {alpha}")));
    }
    find_inverse(&alpha)?;
    for w in p.normal_words(4, Some(&zero)) {
        let a = AE::from_word(p, &w, Scalar::one())?;
        if !a.commutes_with(&xi) {
            return Err(Error::VerificationFailed(format!("ξ does not commute with {a}")));
        }
    }
    let tz = TensorAlgebra::with_metric(m);
    let xi = tz.element(2, &xi)?;
    Ok(XiAlpha { metric: m.clone(), tz, xi, alpha, beta: None })
}

/// The central Hermitian fourth root of a positive rational constant.
pub fn fourth_root(alpha: &AE) -> Result<AE> {
    alpha
        .as_scalar()
        .and_then(|s| s.rational_root(4))
        .map(|s| AE::scalar(alpha.presentation(), s))
        .ok_or_else(|| Error::NoFourthRoot(alpha.to_string()))
}

/// Rescale the metric by `β⁻²` where `β⁴ = α`, and recompute; the result has `α'² = 1`.
pub fn star_compat_rescale(xa: &XiAlpha) -> Result<XiAlpha> {
    let beta = fourth_root(&xa.alpha)?;
    let b2 = find_inverse(&beta.pow(2))?;
    let mut out = xi_alpha(&xa.metric.rescale(&b2)?)?;
    if !out.alpha.pow(2).is_one() {
        return Err(Error::NotStarCompatible(out.alpha.to_string()));
    }
    out.beta = Some(beta);
    Ok(out)
}

/// The identities around `ξ` and `α`, sampled on random elements of `L`.
pub fn xi_properties(xa: &XiAlpha, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let m = &xa.metric;
    let lm = m.line_module();
    let p = lm.presentation();
    let gr = p.grading();
    let xi = xa.xi_payload();
    let phi_alpha = lm.phi(&xa.alpha)?;
    let z = m.scale();

    let mut move_e = Shrink::default();
    let mut factor = Shrink::default();
    for _ in 0..samples {
        let e = random_element(p, Some(lm.degree()), 3, 2, rng);
        let f = random_element(p, Some(lm.degree()), 3, 2, rng);
        if xi.try_mul(&e)? != e.try_mul(xi)?.try_mul(&phi_alpha)? {
            move_e.record(e.max_word_len(), || format!("e = {e}"));
        }
        // (G⋆)(f) has payload f z.
        let ev = e.try_mul(&f)?.try_mul(z)?;
        if e.try_mul(&f)? != ev.try_mul(xi)? {
            factor.record(e.max_word_len() + f.max_word_len(), || format!("e = {e}, f = {f}"));
        }
    }

    let zero = gr.zero();
    let central = p
        .normal_words(4, Some(&zero))
        .into_iter()
        .map(|w| AE::from_word(p, &w, Scalar::one()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|a| !a.commutes_with(xi));
    let aphia = xa.alpha.try_mul(&phi_alpha)?;

    let positivity = match m.gram()?.root {
        None => Check::skip("positivity witness", "no closed-form Hermitian root"),
        Some(r) => {
            let n = lm.rank();
            let mut total = AE::zero(p);
            for k in 0..n {
                let x = AE::sum(p, (0..n).map(|j| &lm.v()[j].star().unwrap() * &r[j][k]));
                total = total.try_add(&m.inner(&lm.element(&x)?, &lm.element(&x)?)?)?;
            }
            Check::from_bool("positivity witness", total == xa.alpha, format!("Σ ⟨x_k, x̄_k⟩ = {total}"))
        }
    };

    Ok(vec![
        Check::from_bool("alpha = 1", xa.alpha.is_one(), format!("alpha = {}", xa.alpha)),
        move_e.finish("ξ⊗e = e⊗ξ·Φ_L(α)", samples, format!("{samples} samples")),
        Check::from_bool("α Φ_L(α) = 1", aphia.is_one(), format!("α Φ_L(α) = {aphia}")),
        factor.finish("e⊗f = ev(e⊗(G⋆)f) ξ", samples, format!("{samples} pairs")),
        Check::from_bool(
            "a ξ = ξ a",
            central.is_none(),
            central.map_or_else(|| "degree-0 normal words up to length 4".into(), |a| format!("a = {a}")),
        ),
        Check::from_bool("ξ* = ξ", xi.star()? == *xi, format!("ξ = {xi}")),
        Check::from_bool("α* = α", xa.alpha.star()? == xa.alpha, format!("α = {}", xa.alpha)),
        positivity,
    ])
}

/// `A ⊕ L` with `e f = ⟨e, conj(f*)⟩`, for a star compatible metric.
#[derive(Clone, Debug)]
pub struct EvenOdd {
    metric: HermitianMetric,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenOddElement {
    pub even: AE,
    pub odd: AE,
}

impl EvenOdd {
    pub fn new(xa: &XiAlpha) -> Result<Self> {
        if !xa.is_star_compatible() {
            return Err(Error::NotStarCompatible(xa.alpha.to_string()));
        }
        Ok(EvenOdd { metric: xa.metric.clone() })
    }

    pub fn element(&self, even: &AE, odd: &AE) -> Result<EvenOddElement> {
        let lm = self.metric.line_module();
        let gr = lm.presentation().grading();
        if !even.has_degree(&gr.zero()) || !odd.has_degree(lm.degree()) {
            return Err(Error::BadDegrees(format!("({even}, {odd})")));
        }
        Ok(EvenOddElement { even: even.clone(), odd: odd.clone() })
    }

    /// `⟨e, conj(f*)⟩ = e f z`.
    pub fn odd_product(&self, e: &AE, f: &AE) -> Result<AE> {
        e.try_mul(f)?.try_mul(self.metric.scale())
    }

    pub fn multiply(&self, x: &EvenOddElement, y: &EvenOddElement) -> Result<EvenOddElement> {
        Ok(EvenOddElement {
            even: x.even.try_mul(&y.even)?.try_add(&self.odd_product(&x.odd, &y.odd)?)?,
            odd: x.even.try_mul(&y.odd)?.try_add(&x.odd.try_mul(&y.even)?)?,
        })
    }

    pub fn star(&self, x: &EvenOddElement) -> Result<EvenOddElement> {
        Ok(EvenOddElement { even: x.even.star()?, odd: x.odd.star()? })
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> EvenOddElement {
        let lm = self.metric.line_module();
        let p = lm.presentation();
        EvenOddElement {
            even: random_element(p, Some(&p.grading().zero()), 2, 2, rng),
            odd: random_element(p, Some(lm.degree()), 3, 2, rng),
        }
    }

    pub fn checks(&self, samples: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
        let lm = self.metric.line_module();
        let p = lm.presentation();
        let size = |x: &EvenOddElement| x.even.max_word_len() + x.odd.max_word_len();
        let (mut assoc, mut anti, mut invol, mut consist, mut even) =
            (Shrink::default(), Shrink::default(), Shrink::default(), Shrink::default(), Shrink::default());
        for _ in 0..samples {
            let (x, y, z) = (self.random(rng), self.random(rng), self.random(rng));
            let l = self.multiply(&self.multiply(&x, &y)?, &z)?;
            let r = self.multiply(&x, &self.multiply(&y, &z)?)?;
            if l != r {
                assoc.record(size(&x) + size(&y) + size(&z), || format!("x = {x:?}, y = {y:?}, z = {z:?}"));
            }
            if self.star(&self.multiply(&x, &y)?)? != self.multiply(&self.star(&y)?, &self.star(&x)?)? {
                anti.record(size(&x) + size(&y), || format!("x = {x:?}, y = {y:?}"));
            }
            if self.star(&self.star(&x)?)? != x {
                invol.record(size(&x), || format!("x = {x:?}"));
            }
            let (e, f) = (&x.odd, &y.odd);
            let lhs = self.odd_product(e, f)?.star()?;
            let rhs = self.odd_product(&f.star()?, &e.star()?)?;
            if lhs != rhs {
                consist.record(size(&x) + size(&y), || format!("e = {e}, f = {f}"));
            }
            let ex = EvenOddElement { even: x.even.clone(), odd: AE::zero(p) };
            let ey = EvenOddElement { even: y.even.clone(), odd: AE::zero(p) };
            let prod = self.multiply(&ex, &ey)?;
            if prod.even != &x.even * &y.even || !prod.odd.is_zero() {
                even.record(size(&x) + size(&y), || format!("a = {}, a' = {}", x.even, y.even));
            }
        }
        let zi = self.metric.scale_inverse();
        let mut witness = AE::zero(p);
        for (w, v) in lm.w().iter().zip(lm.v()) {
            witness = witness.try_add(&self.odd_product(w, &v.try_mul(zi)?)?)?;
        }
        Ok(vec![
            assoc.finish("associativity", samples, format!("{samples} triples")),
            anti.finish("(xy)* = y*x*", samples, format!("{samples} pairs")),
            invol.finish("x** = x", samples, format!("{samples} samples")),
            Check::from_bool("1 in odd·odd", witness.is_one(), format!("Σ w_i·(v_i z⁻¹) = {witness}")),
            consist.finish("⟨e, conj(f*)⟩* = ⟨f*, conj(e)⟩", samples, format!("{samples} pairs")),
            even.finish("(a,0)(a',0) = (aa',0)", samples, format!("{samples} pairs")),
        ])
    }
}
