//! Text syntax for polynomials and field elements: integer/rational
//! coefficients with `t` as the variable, e.g. `t^2-2` or `1/2*t + 3`.
//! Forms are comma-separated element expressions, quaternions are four
//! comma-separated components.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::quat::{PureQuaternion, Quaternion, QuaternionAlgebra};
use crate::rational::Rat;
use crate::witt::QuadraticForm;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse as integer"))
    }

    // expr := term (('+'|'-') term)*
    fn parse_expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.parse_term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                Some(b'-') => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := ['-'] factor (('*'|'/') factor)*
    fn parse_term(&mut self) -> Result<Polynomial> {
        let negate = self.eat(b'-');
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.bump();
                    acc = acc.mul(&self.parse_factor()?);
                }
                Some(b'/') => {
                    self.bump();
                    let d = self.parse_factor()?;
                    match d.degree() {
                        None => return Err(self.error("division by zero")),
                        Some(0) => acc = acc.mul_rat(&(Rat::from_integer(1.into()) / d.coeff(0))),
                        Some(_) => {
                            return Err(self.error("division only by nonzero constants"))
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    // factor := primary ['^' uint]
    fn parse_factor(&mut self) -> Result<Polynomial> {
        let base = self.parse_primary()?;
        if self.eat(b'^') {
            let e = self.parse_uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent too large"))?;
            if e > 64 {
                return Err(self.error("exponent too large"));
            }
            let mut acc = Polynomial::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    // primary := uint | 't' | '(' expr ')'
    fn parse_primary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b't') => {
                self.bump();
                Ok(Polynomial::var())
            }
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(Polynomial::constant(Rat::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            return Err(self.error("trailing input"));
        }
        Ok(())
    }
}

pub fn parse_polynomial(src: &str) -> Result<Polynomial> {
    let mut p = Parser::new(src);
    let poly = p.parse_expr()?;
    p.finish()?;
    Ok(poly)
}

pub fn parse_element(src: &str, field: &Arc<NumberField>) -> Result<FieldElement> {
    let poly = parse_polynomial(src)?;
    Ok(FieldElement::new(field, poly.coeffs().to_vec()))
}

/// Comma-separated element expressions; the empty string is the empty form.
pub fn parse_form(src: &str, field: &Arc<NumberField>) -> Result<QuadraticForm> {
    if src.trim().is_empty() {
        return Ok(QuadraticForm::empty(field));
    }
    let entries = src
        .split(',')
        .map(|part| parse_element(part, field))
        .collect::<Result<Vec<_>>>()?;
    QuadraticForm::diagonal(field, entries)
}

/// Four comma-separated components x0,x1,x2,x3.
pub fn parse_quaternion(src: &str, algebra: &Arc<QuaternionAlgebra>) -> Result<Quaternion> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected 4 quaternion components, got {}", parts.len()),
        });
    }
    let field = algebra.field();
    let coords = [
        parse_element(parts[0], field)?,
        parse_element(parts[1], field)?,
        parse_element(parts[2], field)?,
        parse_element(parts[3], field)?,
    ];
    Quaternion::new(algebra, coords)
}

/// A quaternion that must have zero scalar component.
pub fn parse_pure_quaternion(
    src: &str,
    algebra: &Arc<QuaternionAlgebra>,
) -> Result<PureQuaternion> {
    let q = parse_quaternion(src, algebra)?;
    if !q.coords()[0].is_zero() {
        return Err(Error::NotPure);
    }
    q.pure_part()
}

/// The two slots of a symbol: `a,b` with element expressions.
pub fn parse_symbol_slots(src: &str, field: &Arc<NumberField>) -> Result<(FieldElement, FieldElement)> {
    let parts: Vec<&str> = src.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("expected 2 symbol slots, got {}", parts.len()),
        });
    }
    Ok((
        parse_element(parts[0], field)?,
        parse_element(parts[1], field)?,
    ))
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_zero() || r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
