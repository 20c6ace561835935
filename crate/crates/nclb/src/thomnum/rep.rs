use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as C;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::gralg::{AlgebraElement, Presentation, Terms};
use crate::hermet::HermitianMetric;

/// The circle preset evaluated at `M` equally spaced points, `u ↦ e^{iθ}`.
/// Every element of `B` becomes a diagonal matrix, stored as its diagonal.
#[derive(Clone, Debug)]
pub struct NumericRep {
    theta: Vec<f64>,
    gens: Vec<Vec<C>>,
    v: Vec<Vec<C>>,
    w: Vec<Vec<C>>,
    /// Numeric image of `v_i*`; replaceable so that a broken star can be tested.
    star_v: Vec<Vec<C>>,
    z: Vec<C>,
    /// `g^{ij}` and its Hermitian square root, flattened as `[(k·n + i)·n + j]`.
    g: Vec<C>,
    r: Vec<C>,
    rule_residual: f64,
}

fn scalar_value(s: &Scalar) -> Result<C> {
    // Only the circle is represented, whose structure constants do not involve q.
    s.eval(1.0)
}

impl NumericRep {
    pub fn circle(metric: &HermitianMetric, points: usize) -> Result<Self> {
        let lm = metric.line_module();
        let p = lm.presentation();
        if points == 0 || points % 2 == 1 {
            return Err(Error::BadDegrees(format!("need an even number of circle points, got {points}")));
        }
        if p.generators().is_empty() {
            return Err(Error::BadPresentation("no circle generators".into()));
        }
        let theta: Vec<f64> = (0..points).map(|k| 2.0 * PI * k as f64 / points as f64).collect();
        let mut gens = Vec::new();
        for name in p.generators() {
            let sign = match name.as_str() {
                "u" => 1.0,
                "U" => -1.0,
                _ => return Err(Error::BadPresentation(format!("no numeric image for generator `{name}`"))),
            };
            gens.push(theta.iter().map(|t| C::from_polar(1.0, sign * t)).collect());
        }
        let mut rep = NumericRep {
            theta,
            gens,
            v: vec![],
            w: vec![],
            star_v: vec![],
            z: vec![],
            g: vec![],
            r: vec![],
            rule_residual: 0.0,
        };
        rep.v = lm.v().iter().map(|x| rep.eval(x)).collect::<Result<_>>()?;
        rep.w = lm.w().iter().map(|x| rep.eval(x)).collect::<Result<_>>()?;
        rep.star_v = lm.v().iter().map(|x| rep.eval(&x.star()?)).collect::<Result<_>>()?;
        rep.z = rep.eval(metric.scale())?;
        rep.rule_residual = rep.rule_residual_of(p)?;
        let n = lm.rank();
        for k in 0..points {
            let g = DMatrix::from_fn(n, n, |i, j| rep.v[i][k] * rep.w[j][k] * rep.z[k]);
            let eig = SymmetricEigen::new(g.clone());
            let sq = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C::new(l.max(0.0).sqrt(), 0.0)));
            let u = eig.eigenvectors;
            let r = &u * sq * u.adjoint();
            for i in 0..n {
                for j in 0..n {
                    rep.g.push(g[(i, j)]);
                    rep.r.push(r[(i, j)]);
                }
            }
        }
        Ok(rep)
    }

    fn eval_terms(&self, t: &Terms) -> Result<Vec<C>> {
        let mut out = vec![C::new(0.0, 0.0); self.theta.len()];
        for (w, c) in t {
            let c = scalar_value(c)?;
            for (k, o) in out.iter_mut().enumerate() {
                *o += w.iter().fold(c, |acc, &g| acc * self.gens[g as usize][k]);
            }
        }
        Ok(out)
    }

    /// The diagonal of the image of `x`.
    pub fn eval(&self, x: &AlgebraElement) -> Result<Vec<C>> {
        self.eval_terms(x.terms())
    }

    /// Largest violation of a rewrite rule or of `x* ↦ x^†` on the generators.
    fn rule_residual_of(&self, p: &std::sync::Arc<Presentation>) -> Result<f64> {
        let mut res: f64 = 0.0;
        let mut bump = |a: &[C], b: &[C]| {
            for (x, y) in a.iter().zip(b) {
                res = res.max((x - y).norm());
            }
        };
        for rule in p.rules() {
            let lhs = self.eval_terms(&[(rule.lhs.clone(), Scalar::one())].into_iter().collect())?;
            bump(&lhs, &self.eval_terms(&rule.rhs)?);
        }
        for g in 0..p.generators().len() {
            let x = AlgebraElement::from_word(p, &[g as u8], Scalar::one())?;
            let conj: Vec<C> = self.gens[g].iter().map(|c| c.conj()).collect();
            bump(&self.eval(&x.star()?)?, &conj);
        }
        Ok(res)
    }

    pub fn rule_residual(&self) -> f64 {
        self.rule_residual
    }

    pub fn points(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn v(&self, i: usize, k: usize) -> C {
        self.v[i][k]
    }

    pub fn w(&self, i: usize, k: usize) -> C {
        self.w[i][k]
    }

    pub fn star_v(&self, i: usize, k: usize) -> C {
        self.star_v[i][k]
    }

    pub fn z(&self, k: usize) -> C {
        self.z[k]
    }

    /// `g^{ij}` at point `k`.
    pub fn g(&self, k: usize, i: usize, j: usize) -> C {
        let n = self.v.len();
        self.g[(k * n + i) * n + j]
    }

    /// The Hermitian square root of `g^{..}` at point `k`.
    pub fn r(&self, k: usize, i: usize, j: usize) -> C {
        let n = self.v.len();
        self.r[(k * n + i) * n + j]
    }

    /// A copy whose star table sends `v_0` to twice its true star.
    pub fn with_broken_star(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.star_v[0] {
            *c *= 2.0;
        }
        out
    }
}
