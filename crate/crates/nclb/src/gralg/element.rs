use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::grading::Degree;
use super::presentation::{Presentation, Terms, Word};
use crate::coeff::{parse_expr, Scalar};
use crate::error::{Error, Result};

/// Result of asking for the degree of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeOf {
    /// The zero element is homogeneous of every degree.
    Zero,
    Homogeneous(Degree),
    NotHomogeneous,
}

/// A normal-form linear combination of words in a presentation.
#[derive(Clone)]
pub struct AlgebraElement {
    pres: Arc<Presentation>,
    terms: Terms,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, o: &Self) -> bool {
        self.pres.id() == o.pres.id() && self.terms == o.terms
    }
}

impl Eq for AlgebraElement {}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pres.terms_to_string(&self.terms))
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.pres.name(), self)
    }
}

fn accumulate(acc: &mut Terms, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let v = acc.remove(&w).map_or(c.clone(), |x| &x + &c);
    if !v.is_zero() {
        acc.insert(w, v);
    }
}

impl AlgebraElement {
    pub fn zero(p: &Arc<Presentation>) -> Self {
        AlgebraElement { pres: p.clone(), terms: Terms::new() }
    }

    pub fn one(p: &Arc<Presentation>) -> Self {
        AlgebraElement::scalar(p, Scalar::one())
    }

    pub fn scalar(p: &Arc<Presentation>, s: Scalar) -> Self {
        let mut terms = Terms::new();
        if !s.is_zero() {
            terms.insert(Word::new(), s);
        }
        AlgebraElement { pres: p.clone(), terms }
    }

    pub fn generator(p: &Arc<Presentation>, name: &str) -> Result<Self> {
        let g = p.generator_index(name)?;
        AlgebraElement::from_word(p, &[g], Scalar::one())
    }

    /// `coeff * NF(word)`.
    pub fn from_word(p: &Arc<Presentation>, word: &[u8], coeff: Scalar) -> Result<Self> {
        if let Some(&g) = word.iter().find(|&&g| g as usize >= p.generators().len()) {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        let mut terms = Terms::new();
        if !coeff.is_zero() {
            for (w, c) in p.normal_form(word)?.iter() {
                accumulate(&mut terms, w.clone(), &coeff * c);
            }
        }
        Ok(AlgebraElement { pres: p.clone(), terms })
    }

    /// Normalize an arbitrary combination of words.
    pub fn from_terms(p: &Arc<Presentation>, t: &Terms) -> Result<Self> {
        let mut terms = Terms::new();
        for (w, c) in t {
            for (nw, nc) in p.normal_form(w)?.iter() {
                accumulate(&mut terms, nw.clone(), c * nc);
            }
        }
        Ok(AlgebraElement { pres: p.clone(), terms })
    }

    /// Parse text such as `1 + q^-1*b*c`.
    pub fn parse(p: &Arc<Presentation>, s: &str) -> Result<Self> {
        let _ = parse_expr(s, &p.symbols())?;
        AlgebraElement::from_terms(p, &p.parse_free(s)?)
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_one())
    }

    /// The value when the element is a multiple of the identity.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::new()).cloned(),
            _ => None,
        }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.pres.id() == o.pres.id() {
            Ok(())
        } else {
            Err(Error::MixedPresentation)
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(AlgebraElement { pres: self.pres.clone(), terms })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut terms = Terms::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &o.terms {
                let c = ca * cb;
                if wa.is_empty() || wb.is_empty() {
                    let w = if wa.is_empty() { wb.clone() } else { wa.clone() };
                    accumulate(&mut terms, w, c);
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                for (nw, nc) in self.pres.normal_form(&w)?.iter() {
                    accumulate(&mut terms, nw.clone(), &c * nc);
                }
            }
        }
        Ok(AlgebraElement { pres: self.pres.clone(), terms })
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return AlgebraElement::zero(&self.pres);
        }
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect();
        AlgebraElement { pres: self.pres.clone(), terms }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(AlgebraElement::one(&self.pres), |acc, _| &acc * self)
    }

    /// Apply an anti-multiplicative table to every word, optionally conjugating coefficients.
    fn anti_map(&self, table: &[Terms], conj: bool) -> Result<Self> {
        let mut out = AlgebraElement::zero(&self.pres);
        for (w, c) in &self.terms {
            let mut acc = AlgebraElement::scalar(&self.pres, if conj { c.conj() } else { c.clone() });
            for &g in w.iter().rev() {
                let img = AlgebraElement::from_terms(&self.pres, &table[g as usize])?;
                acc = acc.try_mul(&img)?;
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// The star: conjugate coefficients, reverse words, apply the star table.
    pub fn star(&self) -> Result<Self> {
        let table = self.pres.star_table().ok_or(Error::NoStarStructure)?;
        self.anti_map(table, true)
    }

    /// The antipode, a linear anti-homomorphism.
    pub fn antipode(&self) -> Result<Self> {
        let table = self
            .pres
            .antipode_table()
            .ok_or_else(|| Error::BadPresentation("no antipode table".into()))?;
        self.anti_map(table, false)
    }

    /// Conjugate coefficients only (i -> -i), keeping words.
    pub fn conj_coeffs(&self) -> Self {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.conj())).collect();
        AlgebraElement { pres: self.pres.clone(), terms }
    }

    pub fn degree(&self) -> DegreeOf {
        let mut it = self.terms.keys().map(|w| self.pres.degree_of_word(w));
        let Some(first) = it.next() else { return DegreeOf::Zero };
        if it.all(|d| d == first) {
            DegreeOf::Homogeneous(first)
        } else {
            DegreeOf::NotHomogeneous
        }
    }

    /// Zero counts as homogeneous of every degree.
    pub fn has_degree(&self, d: &Degree) -> bool {
        match self.degree() {
            DegreeOf::Zero => true,
            DegreeOf::Homogeneous(e) => e == *d,
            DegreeOf::NotHomogeneous => false,
        }
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        &(self * o) == &(o * self)
    }

    /// True iff the element commutes with every generator.
    pub fn is_central(&self) -> bool {
        (0..self.pres.generators().len()).all(|g| {
            let x = AlgebraElement::from_word(&self.pres, &[g as u8], Scalar::one()).unwrap();
            self.commutes_with(&x)
        })
    }

    /// Sum of an iterator of elements, zero when empty.
    pub fn sum<I: IntoIterator<Item = AlgebraElement>>(p: &Arc<Presentation>, items: I) -> Self {
        items.into_iter().fold(AlgebraElement::zero(p), |acc, x| &acc + &x)
    }

    /// Largest word length among the terms.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_add(o).expect("adding elements of different presentations")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_sub(o).expect("subtracting elements of different presentations")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_mul(o).expect("multiplication failed (mixed presentations or non-terminating rules)")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::neg(self)
    }
}
