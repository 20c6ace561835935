use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use super::form::{Form, Monomial};
use crate::coeff::{parse_expr, Expr, Scalar};
use crate::error::{Error, Result};
use crate::gralg::{AlgebraElement, Degree, DegreeOf, Presentation, Word};
use crate::preset::CalculusDesc;

type AE = AlgebraElement;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Debug)]
pub struct BasisForm {
    pub name: String,
    pub degree: Degree,
    /// Horizontal forms with degree-0 total coefficients span `Ω¹A`.
    pub horizontal: bool,
}

/// A calculus `Ω*B` with a left basis of 1-forms, given by commutation, `d` and wedge tables.
pub struct Dga {
    id: u64,
    pres: Arc<Presentation>,
    basis: Vec<BasisForm>,
    names: Arc<Vec<String>>,
    commute: Vec<Vec<Scalar>>,
    swap: BTreeMap<(u8, u8), Scalar>,
    d_gen: Vec<Form>,
    d_basis: Vec<Form>,
    form_star: Option<Vec<Form>>,
    d_cache: Mutex<HashMap<Word, Form>>,
}

impl std::fmt::Debug for Dga {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dga").field("presentation", &self.pres.name()).field("basis", &self.names).finish()
    }
}

impl Dga {
    pub fn new(pres: &Arc<Presentation>, desc: &CalculusDesc) -> Result<Dga> {
        let n = pres.generators().len();
        let mut basis = Vec::new();
        for b in &desc.basis {
            if pres.generators().contains(&b.name) || basis.iter().any(|x: &BasisForm| x.name == b.name) {
                return Err(Error::BadPresentation(format!("basis form name `{}` is taken", b.name)));
            }
            basis.push(BasisForm {
                name: b.name.clone(),
                degree: pres.grading().element(&b.degree.to_vec())?,
                horizontal: b.horizontal,
            });
        }
        let names = Arc::new(basis.iter().map(|b| b.name.clone()).collect::<Vec<_>>());
        let index = |name: &str| -> Result<u8> {
            names
                .iter()
                .position(|x| x == name)
                .map(|i| i as u8)
                .ok_or_else(|| Error::BadPresentation(format!("unknown basis form `{name}`")))
        };
        let mut commute = vec![vec![Scalar::one(); n]; basis.len()];
        for (e, row) in &desc.commute {
            let i = index(e)? as usize;
            for (g, s) in row {
                commute[i][pres.generator_index(g)? as usize] = s.parse()?;
            }
        }
        for b in &basis {
            if desc.commute.get(&b.name).map_or(n, |r| r.len()) != n {
                return Err(Error::BadPresentation(format!("commutation of `{}` not given for every generator", b.name)));
            }
        }
        let mut swap = BTreeMap::new();
        for [later, earlier, s] in &desc.wedge {
            let (l, e) = (index(later)?, index(earlier)?);
            if l <= e {
                return Err(Error::BadPresentation(format!("wedge rule {later}^{earlier} is not a reordering")));
            }
            swap.insert((l, e), s.parse()?);
        }
        let mut dga = Dga {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            pres: pres.clone(),
            basis,
            names,
            commute,
            swap,
            d_gen: Vec::new(),
            d_basis: Vec::new(),
            form_star: None,
            d_cache: Mutex::new(HashMap::new()),
        };
        let table = |dga: &Dga, t: &BTreeMap<String, String>, keys: &[String], what: &str| -> Result<Vec<Form>> {
            if let Some(k) = t.keys().find(|k| !keys.contains(k)) {
                return Err(Error::BadPresentation(format!("unknown entry `{k}` in {what}")));
            }
            keys.iter()
                .map(|k| {
                    let s = t.get(k).ok_or_else(|| Error::BadPresentation(format!("{what} of `{k}` missing")))?;
                    dga.parse(s)
                })
                .collect()
        };
        dga.d_gen = table(&dga, &desc.d, pres.generators(), "d")?;
        dga.d_basis = table(&dga, &desc.d_basis, &dga.names.clone(), "d_basis")?;
        if let Some(fs) = &desc.form_star {
            dga.form_star = Some(table(&dga, fs, &dga.names.clone(), "form_star")?);
        }
        dga.validate()?;
        Ok(dga)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn basis(&self) -> &[BasisForm] {
        &self.basis
    }

    pub fn has_form_star(&self) -> bool {
        self.form_star.is_some()
    }

    pub fn zero(&self) -> Form {
        Form { dga: self.id, names: self.names.clone(), pres: self.pres.clone(), terms: BTreeMap::new() }
    }

    pub fn function(&self, a: &AE) -> Result<Form> {
        if a.presentation().id() != self.pres.id() {
            return Err(Error::MixedPresentation);
        }
        let mut f = self.zero();
        f.insert(Monomial::new(), a.clone());
        Ok(f)
    }

    pub fn basis_form(&self, i: usize) -> Form {
        let mut f = self.zero();
        f.insert(vec![i as u8], AE::one(&self.pres));
        f
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// `x·m` for a monomial on the right: `a·(c·m) = a c·m`, with `m·x` rewritten as `x'·m`.
    pub fn move_coeff(&self, m: &[u8], x: &AE) -> AE {
        let mut out = AE::zero(&self.pres);
        for (w, c) in x.terms() {
            let mut s = c.clone();
            for &i in m {
                for &g in w {
                    s = &s * &self.commute[i as usize][g as usize];
                }
            }
            out = &out + &AE::from_terms(&self.pres, &[(w.clone(), s)].into_iter().collect()).unwrap();
        }
        out
    }

    /// Sort a concatenated monomial, returning the reordering factor, or `None` if it vanishes.
    fn merge(&self, a: &[u8], b: &[u8]) -> Option<(Scalar, Monomial)> {
        let mut m: Vec<u8> = a.iter().chain(b).copied().collect();
        let mut factor = Scalar::one();
        let n = m.len();
        for i in 0..n {
            for j in 0..n - 1 - i {
                if m[j] == m[j + 1] {
                    return None;
                }
                if m[j] > m[j + 1] {
                    let s = self.swap.get(&(m[j], m[j + 1])).cloned().unwrap_or_else(|| Scalar::from_int(-1));
                    factor = &factor * &s;
                    m.swap(j, j + 1);
                }
            }
        }
        if m.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((factor, m))
    }

    fn own(&self, f: &Form) -> Result<()> {
        if f.dga == self.id {
            Ok(())
        } else {
            Err(Error::MixedDga)
        }
    }

    pub fn wedge(&self, x: &Form, y: &Form) -> Result<Form> {
        self.own(x)?;
        self.own(y)?;
        let mut out = self.zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let Some((s, m)) = self.merge(m1, m2) else { continue };
                let c = c1.try_mul(&self.move_coeff(m1, c2))?.scale(&s);
                out.insert(m, c);
            }
        }
        Ok(out)
    }

    /// `x·a`.
    pub fn right_mul(&self, x: &Form, a: &AE) -> Result<Form> {
        self.wedge(x, &self.function(a)?)
    }

    fn d_word(&self, w: &[u8]) -> Result<Form> {
        if let Some(hit) = self.d_cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let mut out = self.zero();
        for k in 0..w.len() {
            let pre = AE::from_word(&self.pres, &w[..k], Scalar::one())?;
            let post = AE::from_word(&self.pres, &w[k + 1..], Scalar::one())?;
            let t = self.right_mul(&self.d_gen[w[k] as usize].left_mul(&pre)?, &post)?;
            out = out.try_add(&t)?;
        }
        self.d_cache.lock().unwrap().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// `d` of a function.
    pub fn d_function(&self, a: &AE) -> Result<Form> {
        let mut out = self.zero();
        for (w, c) in a.terms() {
            let dw = self.d_word(w)?;
            for (m, x) in dw.terms {
                out.insert(m, x.scale(c));
            }
        }
        Ok(out)
    }

    fn d_monomial(&self, m: &[u8]) -> Result<Form> {
        let mut out = self.zero();
        for k in 0..m.len() {
            let mut t = self.function(&AE::one(&self.pres))?;
            for (j, &i) in m.iter().enumerate() {
                let f = if j == k { self.d_basis[i as usize].clone() } else { self.basis_form(i as usize) };
                t = self.wedge(&t, &f)?;
            }
            out = if k % 2 == 0 { out.try_add(&t)? } else { out.try_sub(&t)? };
        }
        Ok(out)
    }

    pub fn d(&self, x: &Form) -> Result<Form> {
        self.own(x)?;
        let mut out = self.zero();
        for (m, c) in &x.terms {
            let mono = self.zero();
            let mut mono = mono;
            mono.insert(m.clone(), AE::one(&self.pres));
            out = out.try_add(&self.wedge(&self.d_function(c)?, &mono)?)?;
            out = out.try_add(&self.d_monomial(m)?.left_mul(c)?)?;
        }
        Ok(out)
    }

    /// Graded star on forms of degree ≤ 1: `(c·e)* = e*·c*`.
    pub fn star(&self, x: &Form) -> Result<Form> {
        self.own(x)?;
        let fs = self.form_star.as_ref().ok_or(Error::NoFormStar)?;
        let mut out = self.zero();
        for (m, c) in &x.terms {
            let cs = c.star()?;
            let t = match m.as_slice() {
                [] => self.function(&cs)?,
                [i] => self.right_mul(&fs[*i as usize], &cs)?,
                _ => return Err(Error::NoFormStar),
            };
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Membership in `Ω¹A`: horizontal 1-forms of total degree 0.
    pub fn in_omega1_a(&self, x: &Form) -> bool {
        let gr = self.pres.grading();
        x.terms.iter().all(|(m, c)| match m.as_slice() {
            [i] => {
                let b = &self.basis[*i as usize];
                b.horizontal && c.has_degree(&gr.neg(&b.degree))
            }
            _ => false,
        })
    }

    /// Total degree of a form, coefficient plus basis.
    pub fn total_degree(&self, x: &Form) -> DegreeOf {
        let gr = self.pres.grading();
        let mut found: Option<Degree> = None;
        for (m, c) in &x.terms {
            let DegreeOf::Homogeneous(dc) = c.degree() else { return DegreeOf::NotHomogeneous };
            let d = m.iter().fold(dc, |acc, &i| gr.add(&acc, &self.basis[i as usize].degree));
            match &found {
                Some(f) if *f != d => return DegreeOf::NotHomogeneous,
                _ => found = Some(d),
            }
        }
        found.map_or(DegreeOf::Zero, DegreeOf::Homogeneous)
    }

    pub fn parse(&self, s: &str) -> Result<Form> {
        let n = self.pres.generators().len();
        let mut symbols = self.pres.symbols();
        symbols.extend(self.names.iter().cloned().enumerate().map(|(i, x)| (x, n + i)));
        self.eval(&parse_expr(s, &symbols)?)
    }

    fn eval(&self, e: &Expr) -> Result<Form> {
        let n = self.pres.generators().len();
        let as_scalar = |f: &Form| -> Option<Scalar> {
            match f.terms.len() {
                0 => Some(Scalar::zero()),
                1 => f.terms.get(&Monomial::new()).and_then(AE::as_scalar),
                _ => None,
            }
        };
        Ok(match e {
            Expr::Num(_) | Expr::I | Expr::Q => self.function(&AE::scalar(&self.pres, crate::coeff::eval_scalar(e)?))?,
            Expr::Sym(k) if *k < n => self.function(&AE::generator(&self.pres, &self.pres.generators()[*k])?)?,
            Expr::Sym(k) => self.basis_form(k - n),
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.try_add(&self.eval(b)?)?,
            Expr::Sub(a, b) => self.eval(a)?.try_sub(&self.eval(b)?)?,
            Expr::Mul(a, b) | Expr::Wedge(a, b) => self.wedge(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Div(a, b) => {
                let s = as_scalar(&self.eval(b)?).ok_or_else(|| Error::Parse("division by a non-scalar".into()))?;
                let inv = s.inv()?;
                self.eval(a)?.left_mul(&AE::scalar(&self.pres, inv))?
            }
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k < 0 {
                    let s = as_scalar(&base).ok_or_else(|| Error::Parse("negative power of a non-scalar".into()))?;
                    self.function(&AE::scalar(&self.pres, s.pow(*k)?))?
                } else {
                    let mut acc = self.function(&AE::one(&self.pres))?;
                    for _ in 0..*k {
                        acc = self.wedge(&acc, &base)?;
                    }
                    acc
                }
            }
        })
    }

    /// Consistency of the tables with the relations, and `d² = 0` on generators and basis forms.
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::BadPresentation(msg));
        for (g, df) in self.d_gen.iter().enumerate() {
            let want = self.pres.generator_degree(g as u8);
            if !matches!(self.total_degree(df), DegreeOf::Zero) && self.total_degree(df) != DegreeOf::Homogeneous(want.clone()) {
                return bad(format!("d{} has the wrong degree", self.pres.generators()[g]));
            }
        }
        for (i, df) in self.d_basis.iter().enumerate() {
            let want = self.basis[i].degree.clone();
            if !matches!(self.total_degree(df), DegreeOf::Zero) && self.total_degree(df) != DegreeOf::Homogeneous(want) {
                return bad(format!("d{} has the wrong degree", self.names[i]));
            }
        }
        for r in self.pres.rules() {
            for (i, row) in self.commute.iter().enumerate() {
                let scale = |w: &[u8]| w.iter().fold(Scalar::one(), |acc, &g| &acc * &row[g as usize]);
                let s = scale(&r.lhs);
                if r.rhs.keys().any(|w| scale(w) != s) {
                    return bad(format!("commutation of {} breaks rule {}", self.names[i], self.pres.word_to_string(&r.lhs)));
                }
            }
            let mut lhs = self.zero();
            let k = r.lhs.len();
            for j in 0..k {
                let pre = AE::from_word(&self.pres, &r.lhs[..j], Scalar::one())?;
                let post = AE::from_word(&self.pres, &r.lhs[j + 1..], Scalar::one())?;
                lhs = lhs.try_add(&self.right_mul(&self.d_gen[r.lhs[j] as usize].left_mul(&pre)?, &post)?)?;
            }
            let rhs = self.d_function(&AE::from_terms(&self.pres, &r.rhs)?)?;
            if lhs != rhs {
                return bad(format!("d is not compatible with rule {}: {lhs} vs {rhs}", self.pres.word_to_string(&r.lhs)));
            }
        }
        for g in 0..self.pres.generators().len() {
            let x = AE::generator(&self.pres, &self.pres.generators()[g])?;
            let dd = self.d(&self.d_function(&x)?)?;
            if !dd.is_zero() {
                return bad(format!("d² {} = {dd}", self.pres.generators()[g]));
            }
            for i in 0..self.basis.len() {
                // d(e·x) computed after moving x left must equal de·x - e∧dx.
                let e = self.basis_form(i);
                let moved = self.d(&self.right_mul(&e, &x)?)?;
                let leibniz = self
                    .right_mul(&self.d_basis[i], &x)?
                    .try_sub(&self.wedge(&e, &self.d_function(&x)?)?)?;
                if moved != leibniz {
                    return bad(format!("d is not compatible with {}·{}: {moved} vs {leibniz}", self.names[i], self.pres.generators()[g]));
                }
            }
        }
        for i in 0..self.basis.len() {
            let dd = self.d(&self.d_basis[i])?;
            if !dd.is_zero() {
                return bad(format!("d² {} = {dd}", self.names[i]));
            }
        }
        Ok(())
    }
}
