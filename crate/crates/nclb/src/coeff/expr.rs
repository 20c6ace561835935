//! Shared expression syntax for scalars, algebra elements and forms.
//!
//! Grammar: integers, `i`, `q`, named symbols, `+ - * /`, `^` (an integer
//! exponent after an atom, otherwise the wedge product), parentheses and
//! juxtaposition for multiplication.

use num_bigint::BigInt;

use super::gauss::Gauss;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    I,
    Q,
    Sym(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    I,
    Q,
    Sym(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str, symbols: &[(String, usize)]) -> Result<Vec<Tok>> {
    let mut names: Vec<(&str, Tok)> = symbols.iter().map(|(n, id)| (n.as_str(), Tok::Sym(*id))).collect();
    names.push(("i", Tok::I));
    names.push(("q", Tok::Q));
    names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));

    let mut out = Vec::new();
    let mut rest = src;
    'outer: while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        for (n, t) in &names {
            if rest.starts_with(n) {
                out.push(t.clone());
                rest = &rest[n.len()..];
                continue 'outer;
            }
        }
        if c.is_ascii_digit() {
            let end = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            out.push(Tok::Num(rest[..end].parse().unwrap()));
            rest = &rest[end..];
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(Error::Parse(format!("unexpected `{c}` in `{src}`"))),
        };
        out.push(t);
        rest = &rest[1..];
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Caret) => {
                    self.bump();
                    lhs = Expr::Wedge(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Num(_) | Tok::I | Tok::Q | Tok::Sym(_) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.postfix()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.postfix(),
        }
    }

    fn exponent_follows(&self) -> bool {
        matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2)),
            (Some(Tok::Caret), Some(Tok::Num(_)), _) | (Some(Tok::Caret), Some(Tok::Minus), Some(Tok::Num(_)))
        )
    }

    fn postfix(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.exponent_follows() {
            self.bump();
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let Some(Tok::Num(n)) = self.bump() else { unreachable!() };
            let e: i64 = n.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
            base = Expr::Pow(Box::new(base), if neg { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Num(n)),
            Some(Tok::I) => Ok(Expr::I),
            Some(Tok::Q) => Ok(Expr::Q),
            Some(Tok::Sym(s)) => Ok(Expr::Sym(s)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    other => Err(Error::Parse(format!("expected `)`, found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parse `src` with the given named symbols (`(name, id)` pairs).
pub fn parse_expr(src: &str, symbols: &[(String, usize)]) -> Result<Expr> {
    let toks = lex(src, symbols)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(e)
}

pub fn eval_scalar(e: &Expr) -> Result<Scalar> {
    Ok(match e {
        Expr::Num(n) => Scalar::from_gauss(Gauss::from_bigint(n.clone())),
        Expr::I => Scalar::i(),
        Expr::Q => Scalar::q(),
        Expr::Sym(_) => return Err(Error::Parse("symbol in scalar expression".into())),
        Expr::Wedge(..) => return Err(Error::Parse("wedge in scalar expression".into())),
        Expr::Neg(a) => -eval_scalar(a)?,
        Expr::Add(a, b) => &eval_scalar(a)? + &eval_scalar(b)?,
        Expr::Sub(a, b) => &eval_scalar(a)? - &eval_scalar(b)?,
        Expr::Mul(a, b) => &eval_scalar(a)? * &eval_scalar(b)?,
        Expr::Div(a, b) => eval_scalar(a)?.div(&eval_scalar(b)?)?,
        Expr::Pow(a, k) => eval_scalar(a)?.pow(*k)?,
    })
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    eval_scalar(&parse_expr(src, &[])?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse_scalar("-q^2").unwrap(), -Scalar::q_pow(2));
        assert_eq!(parse_scalar("2q^-1").unwrap(), &Scalar::from_int(2) * &Scalar::q_pow(-1));
        assert_eq!(parse_scalar("1 - 2 - 3").unwrap(), Scalar::from_int(-4));
        assert_eq!(parse_scalar("1/2*i").unwrap(), parse_scalar("i/2").unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_scalar("1/0"), Err(Error::DivisionByZero)));
        assert!(matches!(parse_scalar("(1+q"), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar("x"), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar(""), Err(Error::Parse(_))));
    }

    #[test]
    fn symbols_take_longest_match() {
        let syms = vec![("e+".to_string(), 0), ("e-".to_string(), 1), ("d".to_string(), 2)];
        let e = parse_expr("q^3 e+^e-", &syms).unwrap();
        assert_eq!(
            e,
            Expr::Wedge(
                Box::new(Expr::Mul(Box::new(Expr::Pow(Box::new(Expr::Q), 3)), Box::new(Expr::Sym(0)))),
                Box::new(Expr::Sym(1))
            )
        );
    }
}
