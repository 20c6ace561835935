use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One cyclic factor of the grading group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Factor {
    Z,
    Mod(u32),
}

impl Factor {
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Z" {
            return Ok(Factor::Z);
        }
        t.strip_prefix("Z/")
            .and_then(|m| m.parse::<u32>().ok())
            .filter(|&m| m >= 1)
            .map(Factor::Mod)
            .ok_or_else(|| Error::BadPresentation(format!("unknown grading factor `{s}`")))
    }

    fn reduce(self, x: i64) -> i64 {
        match self {
            Factor::Z => x,
            Factor::Mod(m) => x.rem_euclid(m as i64),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Z => write!(f, "Z"),
            Factor::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl Serialize for Factor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Factor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Factor::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A finitely generated abelian group, presented as a product of cyclic factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradingGroup {
    factors: Vec<Factor>,
}

/// An element of a grading group, stored reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Degree(Vec<i64>);

impl Degree {
    pub fn components(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [x] => write!(f, "{x}"),
            xs => {
                let parts: Vec<String> = xs.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

impl GradingGroup {
    pub fn new(factors: Vec<Factor>) -> Self {
        GradingGroup { factors }
    }

    pub fn integers() -> Self {
        GradingGroup::new(vec![Factor::Z])
    }

    pub fn cyclic(m: u32) -> Self {
        GradingGroup::new(vec![Factor::Mod(m)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn element(&self, xs: &[i64]) -> Result<Degree> {
        if xs.len() != self.factors.len() {
            return Err(Error::BadDegrees(format!(
                "degree {xs:?} has {} components, grading has {}",
                xs.len(),
                self.factors.len()
            )));
        }
        Ok(self.reduce(xs.iter().copied()))
    }

    fn reduce(&self, xs: impl Iterator<Item = i64>) -> Degree {
        Degree(self.factors.iter().zip(xs).map(|(f, x)| f.reduce(x)).collect())
    }

    pub fn zero(&self) -> Degree {
        Degree(vec![0; self.factors.len()])
    }

    pub fn add(&self, a: &Degree, b: &Degree) -> Degree {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y))
    }

    pub fn neg(&self, a: &Degree) -> Degree {
        self.reduce(a.0.iter().map(|x| -x))
    }

    pub fn scale(&self, a: &Degree, k: i64) -> Degree {
        self.reduce(a.0.iter().map(|x| x * k))
    }

    pub fn is_zero(&self, a: &Degree) -> bool {
        a.0.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic() {
        let g = GradingGroup::cyclic(2);
        let one = g.element(&[1]).unwrap();
        assert_eq!(g.neg(&one), one);
        assert!(g.is_zero(&g.add(&one, &one)));
        assert_eq!(g.element(&[-3]).unwrap(), one);
    }

    #[test]
    fn factor_syntax() {
        assert_eq!(Factor::parse("Z").unwrap(), Factor::Z);
        assert_eq!(Factor::parse("Z/3").unwrap(), Factor::Mod(3));
        assert!(Factor::parse("Q").is_err());
    }
}
