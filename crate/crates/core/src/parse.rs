//! Parser for polynomial coefficient expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr     := '-'? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | name | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Names are resolved against a caller-supplied context; unknown names and
//! syntax errors report the byte offset at which they occurred.  Division
//! appears only inside rational literals, so every parsed expression is a
//! polynomial.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::scalar::{rat, Rational, Scalar, Variable};

/// Parse failure with the byte offset of the offending token.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, message: message.into() })
}

/// Maps names occurring in expressions to variables.
#[derive(Clone, Debug, Default)]
pub struct ParseContext {
    names: BTreeMap<String, Variable>,
}

impl ParseContext {
    pub fn new() -> ParseContext {
        ParseContext::default()
    }

    /// Context with base coordinates `x1..xm`.
    pub fn base(m: u32) -> ParseContext {
        let mut ctx = ParseContext::new();
        for a in 1..=m {
            ctx = ctx.with(&format!("x{a}"), Variable::Coordinate(a));
        }
        ctx
    }

    /// Context with fiber coordinates `y1..yn` and base coordinates `x1..xm`.
    pub fn total(n: u32, m: u32) -> ParseContext {
        let mut ctx = ParseContext::base(m);
        for i in 1..=n {
            ctx = ctx.with(&format!("y{i}"), Variable::Fiber(i));
        }
        ctx
    }

    /// Adds one name.
    pub fn with(mut self, name: &str, v: Variable) -> ParseContext {
        self.names.insert(name.to_string(), v);
        self
    }

    fn resolve(&self, name: &str) -> Option<&Variable> {
        self.names.get(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(input[start..i].to_string())));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Name(input[start..i].to_string())));
            }
            _ => return err(i, format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a ParseContext,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => err(pos, format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            -&self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar, ParseError> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(digits)) => {
                    let e: u32 = digits
                        .parse()
                        .map_err(|_| ParseError { pos, message: "exponent too large".into() })?;
                    Ok(base.pow(e))
                }
                _ => err(pos, "expected non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Scalar, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(digits)) => {
                let numer: num_bigint::BigInt = digits.parse().expect("digits");
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dpos = self.here();
                    match self.bump() {
                        Some(Tok::Int(den)) => {
                            let denom: num_bigint::BigInt = den.parse().expect("digits");
                            if denom.is_zero() {
                                return err(dpos, "zero denominator");
                            }
                            Ok(Scalar::constant(Rational::new(numer, denom)))
                        }
                        _ => err(dpos, "expected denominator"),
                    }
                } else {
                    Ok(Scalar::constant(Rational::from_integer(numer)))
                }
            }
            Some(Tok::Name(name)) => match self.ctx.resolve(&name) {
                Some(v) => Ok(Scalar::var(v.clone())),
                None => err(pos, format!("unknown variable {name:?}")),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.eat(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            _ => err(pos, "expected rational, name or parenthesized expression"),
        }
    }
}

/// Parses an expression against `ctx`; total on the grammar above.
pub fn parse_scalar(input: &str, ctx: &ParseContext) -> Result<Scalar, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0, ctx, end: input.len() };
    let s = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "trailing input");
    }
    Ok(s)
}

/// Convenience: `rat(n)` as a scalar-valued literal parse helper for tests.
pub fn parse_rational(input: &str) -> Result<Rational, ParseError> {
    let s = parse_scalar(input, &ParseContext::new())?;
    match s.as_constant() {
        Some(c) => Ok(c.clone()),
        None if s.is_zero() => Ok(rat(0)),
        None => err(0, "expected a rational constant"),
    }
}
