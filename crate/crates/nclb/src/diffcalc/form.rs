use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gralg::{AlgebraElement, Presentation};

type AE = AlgebraElement;

/// Strictly increasing basis indices `i₁ < … < i_k`, standing for `e_{i₁}∧…∧e_{i_k}`.
pub type Monomial = Vec<u8>;

/// `Σ c_m · m` with algebra coefficients on the left of each wedge monomial.
#[derive(Clone)]
pub struct Form {
    pub(crate) dga: u64,
    pub(crate) names: Arc<Vec<String>>,
    pub(crate) pres: Arc<Presentation>,
    pub(crate) terms: BTreeMap<Monomial, AE>,
}

impl PartialEq for Form {
    fn eq(&self, o: &Self) -> bool {
        self.dga == o.dga && self.terms == o.terms
    }
}

impl Eq for Form {}

impl Form {
    pub fn terms(&self) -> &BTreeMap<Monomial, AE> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn zero_like(&self) -> Form {
        Form { terms: BTreeMap::new(), ..self.clone() }
    }

    /// Coefficient of a monomial, zero if absent.
    pub fn coefficient(&self, m: &[u8]) -> AE {
        self.terms.get(m).cloned().unwrap_or_else(|| AE::zero(&self.pres))
    }

    /// The form degree, if all monomials share it (0 for the zero form).
    pub fn form_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Vec::len);
        let first = it.next().unwrap_or(0);
        it.all(|k| k == first).then_some(first)
    }

    pub(crate) fn insert(&mut self, m: Monomial, c: AE) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&m) {
            Some(x) => &x + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    fn same(&self, o: &Form) -> Result<()> {
        if self.dga == o.dga {
            Ok(())
        } else {
            Err(Error::MixedDga)
        }
    }

    pub fn try_add(&self, o: &Form) -> Result<Form> {
        self.same(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Form) -> Result<Form> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Form { terms, ..self.clone() }
    }

    /// `a·x` for an algebra element `a`.
    pub fn left_mul(&self, a: &AE) -> Result<Form> {
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            out.insert(m.clone(), a.try_mul(c)?);
        }
        Ok(out)
    }

    /// Largest coefficient word length, a size measure for shrinking.
    pub fn size(&self) -> usize {
        self.terms.iter().map(|(m, c)| m.len() + c.max_word_len()).max().unwrap_or(0)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<&str> = m.iter().map(|&i| self.names[i as usize].as_str()).collect();
            let mono = mono.join("^");
            let coeff = c.to_string();
            let simple = c.terms().len() == 1;
            let (neg, body) = match coeff.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, coeff.clone()),
            };
            let body = if mono.is_empty() {
                if simple { body } else { format!("({body})") }
            } else if body == "1" {
                mono
            } else if simple {
                format!("{body} {mono}")
            } else {
                format!("({body}) {mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({self})")
    }
}
