//! Ideal literal syntax: comma-separated generators, each a polynomial
//! expression in the coordinate x (alias T) and, on quadratic models, y.
//! Example: "x, y-1" or "T^2+2*T".

use hayes_core::curve::{CurveModel, FFElement};
use hayes_core::error::{Error, Result};
use hayes_core::ideal::FracIdeal;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    X,
    Y,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '0'..='9' => {
                let mut n = 0i64;
                while let Some(&d) = it.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as i64))
                            .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(n));
            }
            'x' | 'T' => {
                it.next();
                out.push(Tok::X);
            }
            'y' => {
                it.next();
                out.push(Tok::Y);
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '(' => {
                it.next();
                out.push(Tok::LParen);
            }
            ')' => {
                it.next();
                out.push(Tok::RParen);
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    model: &'a CurveModel,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<FFElement> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.next();
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FFElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FFElement> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.next();
            match self.next() {
                Some(Tok::Num(e)) if e >= 0 => base
                    .pow(e)
                    .map_err(|e| Error::Parse(format!("exponentiation failed: {e}"))),
                _ => Err(Error::Parse("expected a nonnegative exponent after ^".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<FFElement> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(self.model.constant(n)),
            Some(Tok::X) => Ok(self.model.x_elem()),
            Some(Tok::Y) => self
                .model
                .y_elem()
                .ok_or_else(|| Error::Parse("the rational model has no y".into())),
            Some(Tok::Minus) => Ok(self.base()?.neg()),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// One generator expression.
pub fn parse_element(model: &CurveModel, s: &str) -> Result<FFElement> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        model,
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in '{s}'")));
    }
    Ok(e)
}

/// A comma-separated generator list, with optional surrounding parentheses:
/// "(x, y-1)" or "T^2".
pub fn parse_ideal(model: &CurveModel, s: &str) -> Result<FracIdeal> {
    let inner = s.trim();
    let inner = if inner.starts_with('(') && inner.ends_with(')') && balanced_outer(inner) {
        &inner[1..inner.len() - 1]
    } else {
        inner
    };
    let gens: Vec<FFElement> = inner
        .split(',')
        .map(|part| parse_element(model, part))
        .collect::<Result<_>>()?;
    FracIdeal::from_generators(model, &gens)
}

/// True when the outermost parentheses wrap the whole string.
fn balanced_outer(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.chars().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 != s.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    depth == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_generators() {
        let m = CurveModel::quadratic(3, 1, &[], &[1, 1, 0, 1]).unwrap();
        let p = parse_ideal(&m, "(x, y-1)").unwrap();
        assert_eq!(p.norm_degree(), 1);
        let e = parse_element(&m, "x^2*y + 2*x - 1").unwrap();
        assert!(!e.is_zero());
        let r = CurveModel::rational(3, 1).unwrap();
        let i = parse_ideal(&r, "T^2, T^3").unwrap();
        assert_eq!(i.norm_degree(), 2);
        assert!(parse_element(&r, "y").is_err());
        assert!(parse_element(&r, "T +").is_err());
    }
}
