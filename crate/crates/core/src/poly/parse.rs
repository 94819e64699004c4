//! Inline polynomial syntax.
//!
//! Integer-coefficient expressions in `X` (or `x`), reduced mod p, with `u`
//! standing for the field generator:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*'? unary)*          juxtaposition multiplies: 2X, uX^2
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'X' | 'x' | 'u' | '(' expr ')'
//! ```

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    spec: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| self.err("integer too large"))
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn starts_atom(c: u8) -> bool {
        c.is_ascii_digit() || matches!(c, b'X' | b'x' | b'u' | b'(')
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(c) if Self::starts_atom(c) => acc = &acc * &self.unary()?,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let r = (n % self.spec.p() as u64) as i64;
                Ok(Polynomial::constant(&self.spec.from_int(r)))
            }
            Some(b'X') | Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::x(self.spec))
            }
            Some(b'u') => {
                self.pos += 1;
                if self.spec.m() == 1 {
                    return Err(self.err("generator u needs an extension field"));
                }
                Ok(Polynomial::constant(&self.spec.generator()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an inline polynomial over `spec`.
pub fn parse_polynomial(text: &str, spec: &FieldSpec) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        spec,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}
