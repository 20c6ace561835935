use std::sync::Arc;

use super::dga::Dga;
use super::form::Form;
use crate::error::{Error, Result};
use crate::gralg::AlgebraElement;
use crate::linemod::LineModule;

type AE = AlgebraElement;

/// `κ = Σ c_i dc'_i`.
pub fn kappa(dga: &Dga, lm: &LineModule) -> Result<Form> {
    let mut k = dga.zero();
    for (c, c1) in lm.cc() {
        k = k.try_add(&dga.d_function(c1)?.left_mul(c)?)?;
    }
    Ok(k)
}

/// The covariant derivative `∇(b) = Σ d(b c_i)⊗c'_i + b ζ c_i⊗c'_i` on `L = B_g`,
/// with `Ω¹B ⊗_A L` multiplied out into forms with degree-`g` coefficients.
#[derive(Clone, Debug)]
pub struct Connection {
    dga: Arc<Dga>,
    lm: Arc<LineModule>,
    zeta: Form,
    kappa: Form,
    eta: Form,
}

impl Connection {
    /// `ζ` must lie in `Ω¹A`.
    pub fn new(dga: &Arc<Dga>, lm: &Arc<LineModule>, zeta: Form) -> Result<Self> {
        if !dga.in_omega1_a(&zeta) {
            return Err(Error::NotInOmegaA(zeta.to_string()));
        }
        let kappa = kappa(dga, lm)?;
        let eta = zeta.try_sub(&kappa)?;
        Ok(Connection { dga: dga.clone(), lm: lm.clone(), zeta, kappa, eta })
    }

    pub fn zeta(&self) -> &Form {
        &self.zeta
    }

    pub fn kappa(&self) -> &Form {
        &self.kappa
    }

    /// `η = ζ - κ`.
    pub fn eta(&self) -> &Form {
        &self.eta
    }

    pub fn dga(&self) -> &Arc<Dga> {
        &self.dga
    }

    pub fn line_module(&self) -> &Arc<LineModule> {
        &self.lm
    }

    /// The summands `ω_i = d(b c_i) + b ζ c_i` of `∇(b) = Σ ω_i ⊗ c'_i`.
    fn parts(&self, b: &AE) -> Result<Vec<(Form, AE)>> {
        let d = &self.dga;
        let zb = self.zeta.left_mul(b)?;
        self.lm
            .cc()
            .iter()
            .map(|(c, c1)| {
                let w = d.d_function(&b.try_mul(c)?)?.try_add(&d.right_mul(&zb, c)?)?;
                Ok((w, c1.clone()))
            })
            .collect()
    }

    pub fn nabla(&self, b: &AE) -> Result<Form> {
        self.lm.element(b)?;
        let mut out = self.dga.zero();
        for (w, c1) in self.parts(b)? {
            out = out.try_add(&self.dga.right_mul(&w, &c1)?)?;
        }
        Ok(out)
    }

    /// `σ₀(b ⊗ η) = b η c_i ⊗ c'_i`, multiplied out.
    pub fn sigma0(&self, b: &AE, eta: &Form) -> Result<Form> {
        if !self.dga.in_omega1_a(eta) {
            return Err(Error::NotInOmegaA(eta.to_string()));
        }
        let be = eta.left_mul(b)?;
        let mut out = self.dga.zero();
        for (c, c1) in self.lm.cc() {
            out = out.try_add(&self.dga.right_mul(&self.dga.right_mul(&be, c)?, c1)?)?;
        }
        Ok(out)
    }

    /// `σ(b ⊗ da) = b da + b (a η - η a)`, so that `∇(b a) = ∇(b) a + σ(b ⊗ da)`.
    pub fn sigma(&self, b: &AE, a: &AE) -> Result<Form> {
        let d = &self.dga;
        let comm = self.eta.left_mul(a)?.try_sub(&d.right_mul(&self.eta, a)?)?;
        d.d_function(a)?.try_add(&comm)?.left_mul(b)
    }

    /// Closed form `R(b) = b (dη - η∧η)`.
    pub fn curvature(&self, b: &AE) -> Result<Form> {
        self.lm.element(b)?;
        self.curvature_form()?.left_mul(b)
    }

    /// `dη - η∧η`.
    pub fn curvature_form(&self) -> Result<Form> {
        let d = &self.dga;
        d.d(&self.eta)?.try_sub(&d.wedge(&self.eta, &self.eta)?)
    }

    /// `R = (d⊗id - id∧∇)∇` expanded term by term, without the closed form.
    pub fn curvature_direct(&self, b: &AE) -> Result<Form> {
        let d = &self.dga;
        let mut out = d.zero();
        for (w, c1) in self.parts(b)? {
            out = out.try_add(&d.right_mul(&d.d(&w)?, &c1)?)?;
            out = out.try_sub(&d.wedge(&w, &self.nabla(&c1)?)?)?;
        }
        Ok(out)
    }

    /// The trace `ω_L = Σ c_k R(c'_k)` of the curvature.
    pub fn chern(&self) -> Result<Form> {
        let mut out = self.dga.zero();
        for (c, c1) in self.lm.cc() {
            out = out.try_add(&self.curvature(c1)?.left_mul(c)?)?;
        }
        Ok(out)
    }

    /// `ζ + ζ* = 0`, where a star on 1-forms exists.
    pub fn metric_compatible(&self) -> Result<bool> {
        if self.zeta.is_zero() {
            return Ok(true);
        }
        Ok(self.zeta.try_add(&self.dga.star(&self.zeta)?)?.is_zero())
    }
}
