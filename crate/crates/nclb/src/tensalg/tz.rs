use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gralg::AlgebraElement;
use crate::hermet::HermitianMetric;
use crate::linemod::LineModule;
use crate::report::Check;

type AE = AlgebraElement;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// `T_ℤ(L)`, with a star once a metric is attached.
#[derive(Clone, Debug)]
pub struct TensorAlgebra {
    id: u64,
    lm: Arc<LineModule>,
    metric: Option<HermitianMetric>,
}

/// A grade-`n` element, held as its payload in `B_{ng}`.
#[derive(Clone, PartialEq, Eq)]
pub struct TzElement {
    alg: u64,
    n: i64,
    payload: AE,
}

impl TzElement {
    pub fn grade(&self) -> i64 {
        self.n
    }

    pub fn payload(&self) -> &AE {
        &self.payload
    }
}

impl fmt::Debug for TzElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.payload)
    }
}

impl TensorAlgebra {
    pub fn new(lm: &Arc<LineModule>) -> Self {
        TensorAlgebra { id: NEXT_ID.fetch_add(1, Ordering::Relaxed), lm: lm.clone(), metric: None }
    }

    pub fn with_metric(m: &HermitianMetric) -> Self {
        TensorAlgebra { metric: Some(m.clone()), ..TensorAlgebra::new(m.line_module()) }
    }

    pub fn line_module(&self) -> &Arc<LineModule> {
        &self.lm
    }

    pub fn element(&self, n: i64, payload: &AE) -> Result<TzElement> {
        let gr = self.lm.presentation().grading();
        let want = gr.scale(self.lm.degree(), n);
        if !payload.has_degree(&want) {
            return Err(Error::BadDegrees(format!("grade {n} needs payload degree {want}, got {payload}")));
        }
        Ok(TzElement { alg: self.id, n, payload: payload.clone() })
    }

    fn own(&self, x: &TzElement) -> Result<()> {
        if x.alg == self.id {
            Ok(())
        } else {
            Err(Error::MixedModule)
        }
    }

    pub fn product(&self, x: &TzElement, y: &TzElement) -> Result<TzElement> {
        self.own(x)?;
        self.own(y)?;
        Ok(TzElement { alg: self.id, n: x.n + y.n, payload: x.payload.try_mul(&y.payload)? })
    }

    /// `Π_{k<n} Φ_{L°}^k(z)`.
    fn phi_chain(&self, z: &AE, n: i64) -> Result<AE> {
        let mut acc = AE::one(self.lm.presentation());
        let mut cur = z.clone();
        for _ in 0..n {
            acc = acc.try_mul(&cur)?;
            cur = self.lm.phi_dual(&cur)?;
        }
        Ok(acc)
    }

    /// Order-reversing star: on `L` it is `e ↦ G(ē)`, payload `b*·z`, and the factors of `z`
    /// are moved to the right through `L°` with `Φ_{L°}`.
    pub fn star(&self, x: &TzElement) -> Result<TzElement> {
        self.own(x)?;
        let m = self.metric.as_ref().ok_or(Error::NoMetric)?;
        let s = x.payload.star()?;
        let payload = match x.n {
            0 => s,
            n if n > 0 => s.try_mul(&self.phi_chain(m.scale(), n)?)?,
            n => self.phi_chain(m.scale_inverse(), -n)?.try_mul(&s)?,
        };
        Ok(TzElement { alg: self.id, n: -x.n, payload })
    }

    /// `e^{i*} = e_j g^{ji}` and `e_k* = g_{kq} e^q` on the dual basis.
    pub fn dual_basis_checks(&self) -> Result<Vec<Check>> {
        let m = self.metric.as_ref().ok_or(Error::NoMetric)?;
        let gd = m.gram()?;
        let p = self.lm.presentation();
        let n = self.lm.rank();
        let mut bad_up = None;
        let mut bad_low = None;
        for i in 0..n {
            let star = self.star(&self.element(1, &self.lm.v()[i])?)?;
            let formula = AE::sum(p, (0..n).map(|j| &self.lm.w()[j] * &gd.upper[j][i]));
            if *star.payload() != formula && bad_up.is_none() {
                bad_up = Some(format!("i = {i}: {} vs {formula}", star.payload()));
            }
            let star = self.star(&self.element(-1, &self.lm.w()[i])?)?;
            let formula = AE::sum(p, (0..n).map(|q| &gd.lower[i][q] * &self.lm.v()[q]));
            if *star.payload() != formula && bad_low.is_none() {
                bad_low = Some(format!("k = {i}: {} vs {formula}", star.payload()));
            }
        }
        Ok(vec![
            Check::from_bool("e^i* = e_j g^ji", bad_up.is_none(), bad_up.unwrap_or_else(|| format!("{n} basis elements"))),
            Check::from_bool("e_k* = g_kq e^q", bad_low.is_none(), bad_low.unwrap_or_else(|| format!("{n} basis elements"))),
        ])
    }
}
