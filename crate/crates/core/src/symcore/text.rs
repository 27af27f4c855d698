//! Parser for the canonical text form produced by the `Display` impls.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | decimal | identifier | '(' expr ')'
//! ```
//!
//! `E` denotes `exp(alpha * xi)`.

use alloc::string::{String, ToString};

use super::exprat::{EPoly, ExpRational, E_VAR};
use super::poly::ParamPoly;
use super::rational;
use super::SymError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, SymError> {
        Err(SymError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ExpRational, SymError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExpRational, SymError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                match acc.div(&rhs) {
                    Ok(q) => q,
                    Err(_) => return self.err("division by zero"),
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<ExpRational, SymError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<ExpRational, SymError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
            let Ok(k) = digits.parse::<u32>() else {
                return self.err("expected a non-negative integer exponent");
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExpRational, SymError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit() || *b == b'.')
                {
                    self.pos += 1;
                }
                let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                match rational::parse(text) {
                    Some(q) => Ok(ExpRational::constant(ParamPoly::constant(q))),
                    None => self.err("malformed number"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                if name == E_VAR {
                    Ok(ExpRational::from_epoly(EPoly::e()))
                } else {
                    Ok(ExpRational::constant(ParamPoly::var(name)))
                }
            }
            _ => self.err("expected a number, identifier or `(`"),
        }
    }
}

/// Parses a rational function in `E` with polynomial coefficients.
pub fn parse_exp_rational(text: &str) -> Result<ExpRational, SymError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e.reduced())
}

/// Parses a polynomial; `E`, if present, is an ordinary variable and
/// division is allowed only by nonzero constants.
pub fn parse_poly(text: &str) -> Result<ParamPoly, SymError> {
    let r = parse_exp_rational(text)?;
    let mut num = r.numerator().to_param_poly();
    for (f, k) in r.factors() {
        let fp = f.to_param_poly();
        match fp.as_constant() {
            Some(c) => num = num.scale(&rational::powi(&c, -(*k as i32))),
            None => {
                return Err(SymError::Parse {
                    pos: 0,
                    msg: String::from("not a polynomial: non-constant divisor"),
                })
            }
        }
    }
    Ok(num)
}
