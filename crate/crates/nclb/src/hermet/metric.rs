use std::sync::Arc;

use super::inverse::find_inverse;
use crate::error::{Error, Result};
use crate::gralg::AlgebraElement;
use crate::linemod::{LineModule, ModuleElement};
use crate::report::Check;

type AE = AlgebraElement;
type Matrix = Vec<Vec<AE>>;

/// The metric `⟨b, b̄'⟩ = b b'* z` on a line module with `(wᵀ)* = v`.
#[derive(Clone, Debug)]
pub struct HermitianMetric {
    lm: Arc<LineModule>,
    z: AE,
    z_inv: AE,
}

#[derive(Clone, Debug)]
pub struct GramData {
    /// `g^{ij} = ⟨e^i, ē^j⟩`.
    pub upper: Matrix,
    /// `g_{ij}`, normalized by `g_{ij} P_{jk} = g_{ik}`.
    pub lower: Matrix,
    /// Hermitian `r` with `r r = g^{..}`, when a closed form exists.
    pub root: Option<Matrix>,
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let p = a[0][0].presentation();
    (0..n)
        .map(|i| (0..n).map(|k| AE::sum(p, (0..n).map(|j| &a[i][j] * &b[j][k]))).collect())
        .collect()
}

fn first_mismatch(a: &Matrix, b: &Matrix) -> Option<String> {
    for (i, (ra, rb)) in a.iter().zip(b).enumerate() {
        for (k, (x, y)) in ra.iter().zip(rb).enumerate() {
            if x != y {
                return Some(format!("[{i}][{k}]: {x} ≠ {y}"));
            }
        }
    }
    None
}

impl HermitianMetric {
    pub fn new(lm: &Arc<LineModule>) -> Result<Self> {
        for (i, (w, v)) in lm.w().iter().zip(lm.v()).enumerate() {
            let ws = w.star()?;
            if ws != *v {
                return Err(Error::NotHermitian(format!("w[{i}]* = {ws} but v[{i}] = {v}")));
            }
        }
        let one = AE::one(lm.presentation());
        Ok(HermitianMetric { lm: lm.clone(), z: one.clone(), z_inv: one })
    }

    pub fn line_module(&self) -> &Arc<LineModule> {
        &self.lm
    }

    /// The central rescaling factor (1 for the plain metric).
    pub fn scale(&self) -> &AE {
        &self.z
    }

    pub fn scale_inverse(&self) -> &AE {
        &self.z_inv
    }

    /// `G' = R_z G`, i.e. `⟨e, f̄⟩' = ⟨e, f̄⟩ z`.
    pub fn rescale(&self, z: &AE) -> Result<Self> {
        if !z.has_degree(&z.presentation().grading().zero()) || !z.is_central() {
            return Err(Error::NotCentral(z.to_string()));
        }
        if z.star()? != *z {
            return Err(Error::NotHermitian(z.to_string()));
        }
        let zi = find_inverse(z)?;
        Ok(HermitianMetric { lm: self.lm.clone(), z: &self.z * z, z_inv: &zi * &self.z_inv })
    }

    pub fn inner(&self, e: &ModuleElement, f: &ModuleElement) -> Result<AE> {
        let x = self.lm.element(e.payload())?;
        let y = self.lm.element(f.payload())?;
        x.payload().try_mul(&y.payload().star()?)?.try_mul(&self.z)
    }

    /// `g^{ij} = v_i w_j z` and `g_{ij} = z⁻¹ v_i w_j`.
    pub fn gram(&self) -> Result<GramData> {
        let n = self.lm.rank();
        let mut upper = Vec::new();
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                row.push(self.inner(&self.lm.e_upper(i), &self.lm.e_upper(j))?);
            }
            upper.push(row);
        }
        let p = self.lm.idempotent();
        let lower: Matrix = p.iter().map(|row| row.iter().map(|x| &self.z_inv * x).collect()).collect();
        if let Some(m) = first_mismatch(&mat_mul(&upper, &lower), &p.to_vec()) {
            return Err(Error::SingularGram(m));
        }
        let root = self.z.as_scalar().and_then(|s| s.rational_root(2)).and_then(|s| {
            let r: Matrix = p.iter().map(|row| row.iter().map(|x| x.scale(&s)).collect()).collect();
            let hermitian = (0..n).all(|i| (0..n).all(|j| r[i][j].star().ok().as_ref() == Some(&r[j][i])));
            hermitian.then_some(r)
        });
        Ok(GramData { upper, lower, root })
    }

    /// The identities relating `g^{..}`, `g_{..}` and the idempotent.
    pub fn gram_checks(&self, gd: &GramData) -> Result<Vec<Check>> {
        let n = self.lm.rank();
        let p = self.lm.idempotent().to_vec();
        let star_t = |m: &Matrix| -> Result<Matrix> {
            (0..n).map(|i| (0..n).map(|j| m[j][i].star()).collect()).collect()
        };
        let report = |id: &str, a: &Matrix, b: &Matrix| {
            let bad = first_mismatch(a, b);
            Check::from_bool(id, bad.is_none(), bad.unwrap_or_else(|| "exact".into()))
        };
        Ok(vec![
            report("(a) g^ij g_jk = ev(e^i ⊗ e_k)", &mat_mul(&gd.upper, &gd.lower), &p),
            report("(b) g_ij g^jk = ev(e^k ⊗ e_i)*", &mat_mul(&gd.lower, &gd.upper), &star_t(&p)?),
            report("(c) g_iq* = g_qi", &star_t(&gd.lower)?, &gd.lower),
            report("g^ij* = g^ji", &star_t(&gd.upper)?, &gd.upper),
            report("normalization g_ij P_jk = g_ik", &mat_mul(&gd.lower, &p), &gd.lower),
            match &gd.root {
                Some(r) => report("r r = g^ij", &mat_mul(r, r), &gd.upper),
                None => Check::skip("r r = g^ij", "no closed-form Hermitian root"),
            },
        ])
    }
}
