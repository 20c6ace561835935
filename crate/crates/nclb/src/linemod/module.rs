use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gralg::{AlgebraElement, Degree, Presentation};

type AE = AlgebraElement;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    L,
    Dual,
}

/// An element of `L` or `L°`, tagged with the module it belongs to.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    module: u64,
    side: Side,
    payload: AE,
}

impl ModuleElement {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn payload(&self) -> &AE {
        &self.payload
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.side, self.payload)
    }
}

#[derive(Debug)]
pub struct LineModule {
    id: u64,
    name: String,
    pres: Arc<Presentation>,
    g: Degree,
    v: Vec<AE>,
    w: Vec<AE>,
    cc: Vec<(AE, AE)>,
    ccc: Vec<(AE, AE)>,
    p: Vec<Vec<AE>>,
}

fn expect_degree(x: &AE, d: &Degree, what: &str) -> Result<()> {
    if x.has_degree(d) {
        Ok(())
    } else {
        Err(Error::BadDegrees(format!("{what} = {x} should have degree {d}")))
    }
}

fn pair_sum(p: &Arc<Presentation>, pairs: &[(AE, AE)]) -> Result<AE> {
    let mut acc = AE::zero(p);
    for (x, y) in pairs {
        acc = acc.try_add(&x.try_mul(y)?)?;
    }
    Ok(acc)
}

impl LineModule {
    /// Validates `wᵀv = 1`, the degrees, and both witnesses. `cc` defaults to `Σ w_i⊗v_i`;
    /// a missing `ccc` is taken to be `Σ v_i⊗w_i` when that sums to 1.
    pub fn new(
        name: &str,
        pres: &Arc<Presentation>,
        g: Degree,
        v: Vec<AE>,
        w: Vec<AE>,
        cc: Option<Vec<(AE, AE)>>,
        ccc: Option<Vec<(AE, AE)>>,
    ) -> Result<LineModule> {
        if v.is_empty() || v.len() != w.len() {
            return Err(Error::DegenerateVectors(format!("v has {} entries, w has {}", v.len(), w.len())));
        }
        let all = v.iter().chain(&w).chain(cc.iter().flatten().flat_map(|(x, y)| [x, y]));
        if all.chain(ccc.iter().flatten().flat_map(|(x, y)| [x, y])).any(|x| x.presentation().id() != pres.id()) {
            return Err(Error::MixedPresentation);
        }
        let gr = pres.grading();
        let neg = gr.neg(&g);
        for (i, (vi, wi)) in v.iter().zip(&w).enumerate() {
            expect_degree(vi, &g, &format!("v[{i}]"))?;
            expect_degree(wi, &neg, &format!("w[{i}]"))?;
        }
        let wv = pair_sum(pres, &w.iter().cloned().zip(v.iter().cloned()).collect::<Vec<_>>())?;
        if !wv.is_one() {
            return Err(Error::DegenerateVectors(format!("wᵀv = {wv}, not 1")));
        }
        let cc = cc.unwrap_or_else(|| w.iter().cloned().zip(v.iter().cloned()).collect());
        for (i, (c, c1)) in cc.iter().enumerate() {
            expect_degree(c, &neg, &format!("cc[{i}].0"))?;
            expect_degree(c1, &g, &format!("cc[{i}].1"))?;
        }
        let s = pair_sum(pres, &cc)?;
        if !s.is_one() {
            return Err(Error::VerificationFailed(format!("Σ c c' = {s}, not 1")));
        }
        let ccc = match ccc {
            Some(x) => x,
            None => {
                let guess: Vec<_> = v.iter().cloned().zip(w.iter().cloned()).collect();
                if !pair_sum(pres, &guess)?.is_one() {
                    return Err(Error::MissingWitness);
                }
                guess
            }
        };
        for (i, (c2, c3)) in ccc.iter().enumerate() {
            expect_degree(c2, &g, &format!("ccc[{i}].0"))?;
            expect_degree(c3, &neg, &format!("ccc[{i}].1"))?;
        }
        let s = pair_sum(pres, &ccc)?;
        if !s.is_one() {
            return Err(Error::VerificationFailed(format!("Σ c'' c''' = {s}, not 1")));
        }
        let p = v.iter().map(|vi| w.iter().map(|wj| vi * wj).collect()).collect();
        Ok(LineModule {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            pres: pres.clone(),
            g,
            v,
            w,
            cc,
            ccc,
            p,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn degree(&self) -> &Degree {
        &self.g
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self) -> &[AE] {
        &self.v
    }

    pub fn w(&self) -> &[AE] {
        &self.w
    }

    pub fn cc(&self) -> &[(AE, AE)] {
        &self.cc
    }

    pub fn ccc(&self) -> &[(AE, AE)] {
        &self.ccc
    }

    /// The idempotent `P_ij = v_i w_j`.
    pub fn idempotent(&self) -> &[Vec<AE>] {
        &self.p
    }

    fn wrap(&self, side: Side, payload: AE) -> ModuleElement {
        ModuleElement { module: self.id, side, payload }
    }

    fn own(&self, e: &ModuleElement, side: Side) -> Result<()> {
        if e.module != self.id {
            return Err(Error::WrongModule(format!("element of another module than `{}`", self.name)));
        }
        if e.side != side {
            return Err(Error::WrongModule(format!("expected a {side:?} element, got {:?}", e.side)));
        }
        Ok(())
    }

    /// `b·wᵀ` for `b` of degree `g`.
    pub fn element(&self, b: &AE) -> Result<ModuleElement> {
        expect_degree(b, &self.g, "L payload")?;
        Ok(self.wrap(Side::L, b.clone()))
    }

    /// `v·b` for `b` of degree `-g`.
    pub fn dual_element(&self, b: &AE) -> Result<ModuleElement> {
        expect_degree(b, &self.pres.grading().neg(&self.g), "L° payload")?;
        Ok(self.wrap(Side::Dual, b.clone()))
    }

    /// Dual basis `e^i`, payload `v_i`.
    pub fn e_upper(&self, i: usize) -> ModuleElement {
        self.wrap(Side::L, self.v[i].clone())
    }

    /// Dual basis `e_i`, payload `w_i`.
    pub fn e_lower(&self, i: usize) -> ModuleElement {
        self.wrap(Side::Dual, self.w[i].clone())
    }

    pub fn ev(&self, e: &ModuleElement, f: &ModuleElement) -> Result<AE> {
        self.own(e, Side::L)?;
        self.own(f, Side::Dual)?;
        e.payload.try_mul(&f.payload)
    }

    fn degree_zero(&self, a: &AE) -> Result<()> {
        expect_degree(a, &self.pres.grading().zero(), "coefficient")
    }

    /// `coev(a) = Σ a c_i ⊗ c'_i` in `L° ⊗ L`.
    pub fn coev(&self, a: &AE) -> Result<Vec<(ModuleElement, ModuleElement)>> {
        self.degree_zero(a)?;
        self.cc
            .iter()
            .map(|(c, c1)| Ok((self.wrap(Side::Dual, a.try_mul(c)?), self.wrap(Side::L, c1.clone()))))
            .collect()
    }

    /// `ev⁻¹(a) = Σ a c''_i ⊗ c'''_i` in `L ⊗ L°`.
    pub fn ev_inv(&self, a: &AE) -> Result<Vec<(ModuleElement, ModuleElement)>> {
        self.degree_zero(a)?;
        self.ccc
            .iter()
            .map(|(c2, c3)| Ok((self.wrap(Side::L, a.try_mul(c2)?), self.wrap(Side::Dual, c3.clone()))))
            .collect()
    }

    /// `coev⁻¹` on `L° ⊗ L`, multiplying out.
    pub fn coev_inv(&self, pairs: &[(ModuleElement, ModuleElement)]) -> Result<AE> {
        let mut acc = AE::zero(&self.pres);
        for (f, e) in pairs {
            self.own(f, Side::Dual)?;
            self.own(e, Side::L)?;
            acc = acc.try_add(&f.payload.try_mul(&e.payload)?)?;
        }
        Ok(acc)
    }

    fn conjugate_through(&self, z: &AE, pairs: &[(AE, AE)]) -> Result<AE> {
        let mut acc = AE::zero(&self.pres);
        for (x, y) in pairs {
            acc = acc.try_add(&x.try_mul(z)?.try_mul(y)?)?;
        }
        Ok(acc)
    }

    /// The centre automorphism `Φ_L(z) = Σ c_i z c'_i`, checked against `z e^i = e^i Φ_L(z)`.
    pub fn phi(&self, z: &AE) -> Result<AE> {
        self.degree_zero(z)?;
        if !z.is_central() {
            return Err(Error::NotCentral(z.to_string()));
        }
        let out = self.conjugate_through(z, &self.cc)?;
        for vi in &self.v {
            if z.try_mul(vi)? != vi.try_mul(&out)? {
                return Err(Error::VerificationFailed(format!("z·e ≠ e·Φ(z) for z = {z}, e = {vi}")));
            }
        }
        Ok(out)
    }

    /// `Φ_{L°}(z) = Σ c''_i z c'''_i`, so that `z φ = φ Φ_{L°}(z)` on `L°`.
    pub fn phi_dual(&self, z: &AE) -> Result<AE> {
        self.degree_zero(z)?;
        if !z.is_central() {
            return Err(Error::NotCentral(z.to_string()));
        }
        let out = self.conjugate_through(z, &self.ccc)?;
        for wi in &self.w {
            if z.try_mul(wi)? != wi.try_mul(&out)? {
                return Err(Error::VerificationFailed(format!("z·φ ≠ φ·Φ°(z) for z = {z}, φ = {wi}")));
            }
        }
        Ok(out)
    }

    /// The element `z` with `T(x) = x z` for a left module map `T` on payloads.
    pub fn right_factor(&self, t: impl Fn(&AE) -> Result<AE>) -> Result<AE> {
        let mut acc = AE::zero(&self.pres);
        for (wi, vi) in self.w.iter().zip(&self.v) {
            acc = acc.try_add(&wi.try_mul(&t(vi)?)?)?;
        }
        Ok(acc)
    }

    /// `L ⊗_A M`, again a line module, of degree `g_L + g_M`.
    pub fn tensor(&self, m: &LineModule) -> Result<LineModule> {
        if self.pres.id() != m.pres.id() {
            return Err(Error::MixedPresentation);
        }
        let mut v = Vec::new();
        let mut w = Vec::new();
        for (wl, vl) in self.w.iter().zip(&self.v) {
            for (wm, vm) in m.w.iter().zip(&m.v) {
                w.push(wl * wm);
                v.push(vm * vl);
            }
        }
        let mut cc = Vec::new();
        for (cl, cl1) in &self.cc {
            for (cm, cm1) in &m.cc {
                cc.push((cm * cl, cl1 * cm1));
            }
        }
        let mut ccc = Vec::new();
        for (cl2, cl3) in &self.ccc {
            for (cm2, cm3) in &m.ccc {
                ccc.push((cl2 * cm2, cm3 * cl3));
            }
        }
        let g = self.pres.grading().add(&self.g, &m.g);
        LineModule::new(&format!("{}.{}", self.name, m.name), &self.pres, g, v, w, Some(cc), Some(ccc))
    }
}
