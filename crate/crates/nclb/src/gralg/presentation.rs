use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::grading::{Degree, GradingGroup};
use crate::coeff::{parse_expr, Expr, Scalar};
use crate::error::{Error, Result};

/// A word in the generators, as generator indices.
pub type Word = Vec<u8>;
/// A linear combination of words.
pub type Terms = BTreeMap<Word, Scalar>;

/// Rule applications allowed while normalizing a single word.
pub const STEP_BUDGET: usize = 1_000_000;

/// A rewrite rule `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Terms,
}

/// Everything needed to build a presentation, in textual form.
#[derive(Clone, Debug)]
pub struct PresentationSpec {
    pub name: String,
    pub generators: Vec<String>,
    pub grading: GradingGroup,
    pub degrees: Vec<Vec<i64>>,
    pub rules: Vec<(String, String)>,
    pub star: Option<Vec<String>>,
    pub antipode: Option<Vec<String>>,
}

/// Order in which redexes are picked when reducing outside the cached engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
    Random,
}

/// A word whose normal form depends on the reduction order.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub word: String,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub words_tested: usize,
    pub mismatches: Vec<Mismatch>,
}

/// A group-graded star-algebra given by generators and rewrite rules.
pub struct Presentation {
    id: u64,
    name: String,
    generators: Vec<String>,
    grading: GradingGroup,
    degrees: Vec<Degree>,
    rules: Vec<Rule>,
    by_first: Vec<Vec<usize>>,
    star: Option<Vec<Terms>>,
    antipode: Option<Vec<Terms>>,
    cache: Mutex<HashMap<Word, Arc<Vec<(Word, Scalar)>>>>,
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .finish()
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

const RESERVED: [&str; 2] = ["i", "q"];

fn eval_free(e: &Expr) -> Result<Terms> {
    fn scalar(s: Scalar) -> Terms {
        let mut t = Terms::new();
        if !s.is_zero() {
            t.insert(Word::new(), s);
        }
        t
    }
    fn add_into(acc: &mut Terms, w: Word, c: Scalar) {
        let v = acc.remove(&w).map_or(c.clone(), |x| &x + &c);
        if !v.is_zero() {
            acc.insert(w, v);
        }
    }
    fn mul(a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                add_into(&mut out, w, ca * cb);
            }
        }
        out
    }
    fn as_scalar(t: &Terms) -> Option<Scalar> {
        match t.len() {
            0 => Some(Scalar::zero()),
            1 => t.get(&Word::new()).cloned(),
            _ => None,
        }
    }
    Ok(match e {
        Expr::Num(_) | Expr::I | Expr::Q => scalar(crate::coeff::eval_scalar(e)?),
        Expr::Sym(g) => {
            let mut t = Terms::new();
            t.insert(vec![*g as u8], Scalar::one());
            t
        }
        Expr::Neg(a) => eval_free(a)?.into_iter().map(|(w, c)| (w, -c)).collect(),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let mut acc = eval_free(a)?;
            let neg = matches!(e, Expr::Sub(..));
            for (w, c) in eval_free(b)? {
                add_into(&mut acc, w, if neg { -c } else { c });
            }
            acc
        }
        Expr::Mul(a, b) => mul(&eval_free(a)?, &eval_free(b)?),
        Expr::Div(a, b) => {
            let d = as_scalar(&eval_free(b)?)
                .ok_or_else(|| Error::Parse("division by a non-scalar".into()))?;
            let inv = d.inv()?;
            eval_free(a)?.into_iter().map(|(w, c)| (w, &c * &inv)).collect()
        }
        Expr::Pow(a, k) => {
            let base = eval_free(a)?;
            if *k < 0 {
                let s = as_scalar(&base)
                    .ok_or_else(|| Error::Parse("negative power of a non-scalar".into()))?;
                scalar(s.pow(*k)?)
            } else {
                let mut acc = scalar(Scalar::one());
                for _ in 0..*k {
                    acc = mul(&acc, &base);
                }
                acc
            }
        }
        Expr::Wedge(..) => return Err(Error::Parse("wedge in an algebra expression".into())),
    })
}

impl Presentation {
    pub fn new(spec: &PresentationSpec) -> Result<Arc<Presentation>> {
        let n = spec.generators.len();
        if n > 255 {
            return Err(Error::BadPresentation("too many generators".into()));
        }
        for (k, g) in spec.generators.iter().enumerate() {
            let ok = !g.is_empty()
                && g.chars().next().unwrap().is_alphabetic()
                && g.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'');
            if !ok || RESERVED.contains(&g.as_str()) || spec.generators[..k].contains(g) {
                return Err(Error::BadPresentation(format!("invalid generator name `{g}`")));
            }
        }
        if spec.degrees.len() != n {
            return Err(Error::BadDegrees("one degree per generator required".into()));
        }
        let degrees = spec
            .degrees
            .iter()
            .map(|d| spec.grading.element(d))
            .collect::<Result<Vec<_>>>()?;

        let symbols: Vec<(String, usize)> =
            spec.generators.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let parse = |s: &str| -> Result<Terms> { eval_free(&parse_expr(s, &symbols)?) };

        let mut rules = Vec::new();
        for (lhs, rhs) in &spec.rules {
            let l = parse(lhs)?;
            let lhs_word = match l.iter().next() {
                Some((w, c)) if l.len() == 1 && c.is_one() && !w.is_empty() => w.clone(),
                _ => return Err(Error::BadPresentation(format!("rule lhs `{lhs}` is not a word"))),
            };
            rules.push(Rule { lhs: lhs_word, rhs: parse(rhs)? });
        }
        let table = |t: &Option<Vec<String>>| -> Result<Option<Vec<Terms>>> {
            match t {
                None => Ok(None),
                Some(v) if v.len() == n => Ok(Some(v.iter().map(|s| parse(s)).collect::<Result<_>>()?)),
                Some(_) => Err(Error::BadPresentation("table needs one entry per generator".into())),
            }
        };
        let star = table(&spec.star)?;
        let antipode = table(&spec.antipode)?;

        let mut by_first = vec![Vec::new(); n];
        for (k, r) in rules.iter().enumerate() {
            by_first[r.lhs[0] as usize].push(k);
        }
        let p = Presentation {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: spec.name.clone(),
            generators: spec.generators.clone(),
            grading: spec.grading.clone(),
            degrees,
            rules,
            by_first,
            star,
            antipode,
            cache: Mutex::new(HashMap::new()),
        };
        p.check_homogeneous()?;
        Ok(Arc::new(p))
    }

    fn check_homogeneous(&self) -> Result<()> {
        for r in &self.rules {
            let d = self.degree_of_word(&r.lhs);
            for w in r.rhs.keys() {
                if self.degree_of_word(w) != d {
                    return Err(Error::BadPresentation(format!(
                        "rule {} -> {} is not degree-homogeneous",
                        self.word_to_string(&r.lhs),
                        self.terms_to_string(&r.rhs)
                    )));
                }
            }
        }
        if let Some(star) = &self.star {
            for (g, img) in star.iter().enumerate() {
                let want = self.grading.neg(&self.degrees[g]);
                if img.keys().any(|w| self.degree_of_word(w) != want) {
                    return Err(Error::BadPresentation(format!(
                        "star of `{}` does not have the opposite degree",
                        self.generators[g]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Result<u8> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn symbols(&self) -> Vec<(String, usize)> {
        self.generators.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect()
    }

    pub fn grading(&self) -> &GradingGroup {
        &self.grading
    }

    pub fn generator_degree(&self, g: u8) -> &Degree {
        &self.degrees[g as usize]
    }

    pub fn degree_of_word(&self, w: &[u8]) -> Degree {
        w.iter()
            .fold(self.grading.zero(), |acc, &g| self.grading.add(&acc, &self.degrees[g as usize]))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn star_table(&self) -> Option<&[Terms]> {
        self.star.as_deref()
    }

    pub fn antipode_table(&self) -> Option<&[Terms]> {
        self.antipode.as_deref()
    }

    /// Longest rule left-hand side or right-hand-side word.
    pub fn max_rule_len(&self) -> usize {
        self.rules
            .iter()
            .flat_map(|r| std::iter::once(r.lhs.len()).chain(r.rhs.keys().map(Vec::len)))
            .max()
            .unwrap_or(1)
    }

    /// Parse text into free (unnormalized) terms over these generators.
    pub fn parse_free(&self, s: &str) -> Result<Terms> {
        eval_free(&parse_expr(s, &self.symbols())?)
    }

    pub fn word_to_string(&self, w: &[u8]) -> String {
        let sep = if self.generators.iter().all(|g| g.chars().count() == 1) { "" } else { " " };
        w.iter().map(|&g| self.generators[g as usize].as_str()).collect::<Vec<_>>().join(sep)
    }

    pub fn terms_to_string(&self, t: &Terms) -> String {
        let mut out = String::new();
        for (w, c) in t {
            let term = if w.is_empty() {
                if c.is_monomial() {
                    c.to_string()
                } else {
                    format!("({c})")
                }
            } else if c.is_one() {
                self.word_to_string(w)
            } else if (-c).is_one() {
                format!("-{}", self.word_to_string(w))
            } else if c.is_monomial() {
                format!("{c}*{}", self.word_to_string(w))
            } else {
                format!("({c})*{}", self.word_to_string(w))
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }

    fn redexes(&self, w: &[u8]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            for &r in &self.by_first[w[pos] as usize] {
                if w[pos..].starts_with(&self.rules[r].lhs) {
                    out.push((pos, r));
                }
            }
        }
        out
    }

    fn leftmost_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        (0..w.len()).find_map(|pos| {
            self.by_first[w[pos] as usize]
                .iter()
                .find(|&&r| w[pos..].starts_with(&self.rules[r].lhs))
                .map(|&r| (pos, r))
        })
    }

    pub fn is_normal_word(&self, w: &[u8]) -> bool {
        self.leftmost_redex(w).is_none()
    }

    fn rewrite_at(&self, w: &[u8], pos: usize, r: usize) -> impl Iterator<Item = (Word, &Scalar)> + '_ {
        let rule = &self.rules[r];
        let pre = w[..pos].to_vec();
        let post = w[pos + rule.lhs.len()..].to_vec();
        rule.rhs.iter().map(move |(rw, c)| {
            let mut nw = pre.clone();
            nw.extend_from_slice(rw);
            nw.extend_from_slice(&post);
            (nw, c)
        })
    }

    /// Normal form of a single word by repeated leftmost rewriting (memoized).
    pub fn normal_form(&self, w: &[u8]) -> Result<Arc<Vec<(Word, Scalar)>>> {
        let mut steps = 0;
        self.nf_inner(w, &mut steps)
    }

    fn nf_inner(&self, w: &[u8], steps: &mut usize) -> Result<Arc<Vec<(Word, Scalar)>>> {
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let result = match self.leftmost_redex(w) {
            None => vec![(w.to_vec(), Scalar::one())],
            Some((pos, r)) => {
                *steps += 1;
                if *steps > STEP_BUDGET {
                    return Err(Error::NonTerminating(STEP_BUDGET));
                }
                let mut acc = Terms::new();
                for (nw, c) in self.rewrite_at(w, pos, r) {
                    for (fw, fc) in self.nf_inner(&nw, steps)?.iter() {
                        let v = c * fc;
                        let e = acc.entry(fw.clone()).or_insert_with(Scalar::zero);
                        *e = &*e + &v;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        };
        let result = Arc::new(result);
        self.cache.lock().unwrap().insert(w.to_vec(), result.clone());
        Ok(result)
    }

    /// Reduce a combination of words without the cache, choosing redexes by `strategy`.
    pub fn reduce_with(&self, start: &Terms, strategy: Strategy, rng: &mut ChaCha8Rng) -> Result<Terms> {
        let mut pending = start.clone();
        let mut done = Terms::new();
        let mut steps = 0usize;
        let add = |m: &mut Terms, w: Word, c: Scalar| {
            let v = m.remove(&w).map_or(c.clone(), |x| &x + &c);
            if !v.is_zero() {
                m.insert(w, v);
            }
        };
        while let Some((w, c)) = pending.pop_first() {
            let rs = self.redexes(&w);
            let Some(&(pos, r)) = (match strategy {
                Strategy::Leftmost => rs.first(),
                Strategy::Rightmost => rs.iter().max_by_key(|(p, _)| *p),
                Strategy::Random => rs.choose(rng),
            }) else {
                add(&mut done, w, c);
                continue;
            };
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(Error::NonTerminating(STEP_BUDGET));
            }
            for (nw, rc) in self.rewrite_at(&w, pos, r) {
                add(&mut pending, nw, &c * rc);
            }
        }
        Ok(done)
    }

    /// Compare normal forms of one word under several reduction orders.
    pub fn check_word_confluence(&self, w: &[u8], random_orders: usize, rng: &mut ChaCha8Rng) -> Result<Option<Mismatch>> {
        let start: Terms = [(w.to_vec(), Scalar::one())].into_iter().collect();
        let reference: Terms = self.normal_form(w)?.iter().cloned().collect();
        let mut others = vec![
            self.reduce_with(&start, Strategy::Leftmost, rng)?,
            self.reduce_with(&start, Strategy::Rightmost, rng)?,
        ];
        for _ in 0..random_orders {
            others.push(self.reduce_with(&start, Strategy::Random, rng)?);
        }
        Ok(others.into_iter().find(|o| *o != reference).map(|o| Mismatch {
            word: self.word_to_string(w),
            first: self.terms_to_string(&reference),
            second: self.terms_to_string(&o),
        }))
    }

    /// Fuzz the rewrite system on random words.
    pub fn check_confluence(&self, trials: usize, max_len: usize, rng: &mut ChaCha8Rng) -> Result<ConfluenceReport> {
        let mut report = ConfluenceReport::default();
        let n = self.generators.len();
        if n == 0 {
            return Ok(report);
        }
        for _ in 0..trials {
            let len = rng.gen_range(1..=max_len);
            let w: Word = (0..len).map(|_| rng.gen_range(0..n) as u8).collect();
            report.words_tested += 1;
            if let Some(m) = self.check_word_confluence(&w, 3, rng)? {
                report.mismatches.push(m);
            }
        }
        Ok(report)
    }

    /// All irreducible words of length at most `max_len`, optionally of one degree.
    pub fn normal_words(&self, max_len: usize, degree: Option<&Degree>) -> Vec<Word> {
        let n = self.generators.len() as u8;
        let mut out = Vec::new();
        let mut frontier = vec![Word::new()];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for w in frontier {
                if degree.is_none_or(|d| self.degree_of_word(&w) == *d) {
                    out.push(w.clone());
                }
                if len < max_len {
                    for g in 0..n {
                        let mut nw = w.clone();
                        nw.push(g);
                        // Extensions of reducible words stay reducible.
                        if self.is_normal_word(&nw) {
                            next.push(nw);
                        }
                    }
                }
            }
            frontier = next;
        }
        out
    }
}
