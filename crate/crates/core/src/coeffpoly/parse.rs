//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! The same grammar serves polynomials in `x` and Weyl elements in `x`, `y`;
//! the target type decides which variables exist. Division is only by
//! nonzero constants.

use num_bigint::BigInt;
use thiserror::Error;

use super::field::FieldSpec;

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }
}

/// A ring the parser can evaluate into.
pub trait ParseTarget: Sized + Clone {
    fn field(&self) -> FieldSpec;
    fn from_integer(field: FieldSpec, n: &BigInt) -> Self;
    /// The variable with this name, or `None` if the target does not know it.
    fn variable(field: FieldSpec, name: char) -> Option<Self>;
    fn t_add(&self, other: &Self) -> Self;
    fn t_sub(&self, other: &Self) -> Self;
    fn t_mul(&self, other: &Self) -> Self;
    fn t_neg(&self) -> Self;
    fn t_pow(&self, e: usize) -> Self;
    /// Divide by `other` if it is a nonzero constant.
    fn div_const(&self, other: &Self) -> Option<Self>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let b: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < b.len() {
        let (pos, ch) = b[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = b[start..i].iter().map(|(_, c)| *c).collect();
            let n: BigInt = text.parse().expect("digits parse");
            out.push((pos, Tok::Int(n)));
        } else if ch.is_ascii_alphabetic() {
            out.push((pos, Tok::Var(ch)));
            i += 1;
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Op(ch)));
            i += 1;
        } else {
            return Err(ParseError::new(pos, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

struct Parser<T> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    field: FieldSpec,
    _t: std::marker::PhantomData<T>,
}

impl<T: ParseTarget> Parser<T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<T, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.i += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.t_add(&rhs) } else { acc.t_sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            let pos = self.pos();
            self.i += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc.t_mul(&rhs)
            } else {
                acc.div_const(&rhs)
                    .ok_or_else(|| ParseError::new(pos, "division only by a nonzero constant"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<T, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.i += 1;
                Ok(self.unary()?.t_neg())
            }
            Some(Tok::Op('+')) => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<T, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.i += 1;
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.i += 1;
                    let e: usize = n.try_into().map_err(|_| ParseError::new(pos, "exponent too large"))?;
                    Ok(base.t_pow(e))
                }
                _ => Err(ParseError::new(pos, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<T, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(T::from_integer(self.field, &n))
            }
            Some(Tok::Var(v)) => {
                self.i += 1;
                T::variable(self.field, v).ok_or_else(|| ParseError::new(pos, format!("unknown variable '{v}'")))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.i += 1;
                        Ok(e)
                    }
                    _ => Err(ParseError::new(self.pos(), "expected ')'")),
                }
            }
            Some(t) => Err(ParseError::new(pos, format!("unexpected token {t:?}"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

/// Parse `s` into the target ring over `field`.
pub fn parse_expr<T: ParseTarget>(s: &str, field: FieldSpec) -> Result<T, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser::<T> {
        toks,
        i: 0,
        end: s.len(),
        field,
        _t: std::marker::PhantomData,
    };
    let v = p.expr()?;
    if p.i != p.toks.len() {
        return Err(ParseError::new(p.pos(), "trailing input"));
    }
    Ok(v)
}
