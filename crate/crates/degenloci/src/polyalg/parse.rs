//! Text grammar: sums of products of rationals, variables and powers.
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := uint ('/' uint)? | ident | '(' expr ')'
//! ```

use super::{Polynomial, RingRef};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| Error::Parse(t.clone()))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a RingRef,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(k)) => {
                    self.pos += 1;
                    let k: u32 = k
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse("expected exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(a)) => {
                self.pos += 1;
                let mut c = BigRational::from_integer(a);
                if self.eat('/') {
                    match self.toks.get(self.pos).cloned() {
                        Some(Tok::Num(b)) if b != BigInt::from(0) => {
                            self.pos += 1;
                            c /= BigRational::from_integer(b);
                        }
                        _ => return Err(Error::Parse("bad denominator".into())),
                    }
                }
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Polynomial::var_named(self.ring, &name)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing )".into()));
                }
                Ok(p)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Parse a polynomial over `ring`.
pub fn parse_polynomial(ring: &RingRef, s: &str) -> Result<Polynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Ok(Polynomial::zero(ring));
    }
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(out)
}
