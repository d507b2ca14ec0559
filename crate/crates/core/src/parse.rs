//! Recursive-descent parser for the arithmetic expression grammar shared by
//! rational functions and regular functions:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' ['-'] INT)?
//! atom  := INT | IDENT ('[' INT ']')* | '(' expr ')'
//! ```
//!
//! What identifiers mean, and which exponents are legal, is decided by the
//! target [`Algebra`].

use std::str::FromStr;

use malachite_nz::integer::Integer;

use crate::error::{Error, Result};

pub(crate) trait Algebra: Sized {
    /// Context needed to interpret symbols (for example a matrix dimension).
    type Ctx;
    fn integer(ctx: &Self::Ctx, n: Integer) -> Self;
    fn ident(ctx: &Self::Ctx, name: &str, indices: &[usize]) -> std::result::Result<Self, String>;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn div(self, rhs: Self) -> std::result::Result<Self, String>;
    fn pow(self, e: i64) -> std::result::Result<Self, String>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut lit = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                lit.push(d);
                chars.next();
            }
            out.push((pos, Tok::Int(lit)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
            }
            out.push((pos, Tok::Ident(name)));
        } else if "+-*/^()[]".contains(c) {
            out.push((pos, Tok::Sym(c)));
            chars.next();
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'c, A: Algebra> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    ctx: &'c A::Ctx,
}

impl<A: Algebra> Parser<'_, A> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Sym(c))) => Some(*c),
            _ => None,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_sym() == Some(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn int_literal(&mut self) -> Result<String> {
        match self.toks.get(self.at) {
            Some((_, Tok::Int(s))) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<A> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.unary()?);
            } else if self.peek_sym() == Some('/') {
                let pos = self.pos();
                self.at += 1;
                let rhs = self.unary()?;
                acc = acc.div(rhs).map_err(|msg| Error::Parse { pos, msg })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<A> {
        let base = self.atom()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        let neg = self.eat('-');
        let lit = self.int_literal()?;
        let e: i64 = lit.parse().map_err(|_| Error::Parse {
            pos,
            msg: "exponent too large".into(),
        })?;
        base.pow(if neg { -e } else { e })
            .map_err(|msg| Error::Parse { pos, msg })
    }

    fn atom(&mut self) -> Result<A> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((_, Tok::Int(s))) => {
                self.at += 1;
                Ok(A::integer(self.ctx, Integer::from_str(&s).expect("digits")))
            }
            Some((_, Tok::Ident(name))) => {
                self.at += 1;
                let mut indices = Vec::new();
                while self.eat('[') {
                    let lit = self.int_literal()?;
                    indices.push(lit.parse().map_err(|_| Error::Parse {
                        pos,
                        msg: "index too large".into(),
                    })?);
                    self.expect(']')?;
                }
                A::ident(self.ctx, &name, &indices).map_err(|msg| Error::Parse { pos, msg })
            }
            Some((_, Tok::Sym('('))) => {
                self.at += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, symbol or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub(crate) fn parse_expr<A: Algebra>(s: &str, ctx: &A::Ctx) -> Result<A> {
    let toks = tokenize(s)?;
    let mut p = Parser::<A> {
        toks,
        at: 0,
        end: s.len(),
        ctx,
    };
    let value = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(value)
}
