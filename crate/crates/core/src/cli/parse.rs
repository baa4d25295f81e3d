//! Ordinal expressions.
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' factor)?
//! atom   := nat | 'w' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigUint;

use crate::error::Error;
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrdExpr {
    Nat(BigUint),
    Omega,
    Add(Box<OrdExpr>, Box<OrdExpr>),
    Mul(Box<OrdExpr>, Box<OrdExpr>),
    Pow(Box<OrdExpr>, Box<OrdExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        match self.found {
            Some(c) => write!(f, ", found '{c}'"),
            None => write!(f, ", found end of input"),
        }
    }
}

impl std::error::Error for SyntaxError {}

const ATOM_START: &[&str] = &["number", "'w'", "'('"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &[&'static str]) -> SyntaxError {
        let found = self.peek();
        SyntaxError {
            offset: self.pos,
            expected: expected.to_vec(),
            found,
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<OrdExpr, SyntaxError> {
        let mut lhs = self.term()?;
        while self.eat('+') {
            lhs = OrdExpr::Add(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<OrdExpr, SyntaxError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = OrdExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OrdExpr, SyntaxError> {
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(OrdExpr::Pow(Box::new(base), Box::new(self.factor()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<OrdExpr, SyntaxError> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                Ok(OrdExpr::Omega)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&["'+'", "'*'", "'^'", "')'"]));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.src[self.pos..]
                    .bytes()
                    .take_while(u8::is_ascii_digit)
                    .count();
                let text = &self.src[self.pos..self.pos + digits];
                self.pos += digits;
                Ok(OrdExpr::Nat(text.parse().expect("ascii digits")))
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

pub fn parse(text: &str) -> Result<OrdExpr, SyntaxError> {
    let mut parser = Parser { src: text, pos: 0 };
    let expr = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error(&["'+'", "'*'", "'^'", "end of input"]));
    }
    Ok(expr)
}

/// Folds the tree through ordinal arithmetic. Fails only when a finite power
/// is too large to materialize.
pub fn eval_expr(expr: &OrdExpr) -> Result<Ordinal, Error> {
    Ok(match expr {
        OrdExpr::Nat(n) => Ordinal::nat(n.clone()),
        OrdExpr::Omega => Ordinal::omega(),
        OrdExpr::Add(a, b) => &eval_expr(a)? + &eval_expr(b)?,
        OrdExpr::Mul(a, b) => &eval_expr(a)? * &eval_expr(b)?,
        OrdExpr::Pow(a, b) => {
            let (a, b) = (eval_expr(a)?, eval_expr(b)?);
            a.checked_pow(&b)
                .ok_or_else(|| Error::Overflow(format!("({a})^({b})")))?
        }
    })
}
