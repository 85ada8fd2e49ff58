//! Recursive-descent parser for the polynomial input grammar:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := coeff | var | var '^' nat | '(' expr ')'
//! coeff  := integer | integer '/' integer
//! var    := ('x'|'y') nat
//! ```
//!
//! Whitespace is insignificant. A leading minus is accepted so that printed
//! polynomials with a negative leading coefficient read back.

use std::sync::Arc;

use num_bigint::BigInt;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;
use super::PolyError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

pub fn parse_poly(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn syntax(&self, msg: String) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = self.eat(b'-');
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.syntax("expected ')'".into()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.coeff(),
            Some(b'x') | Some(b'y') => self.variable(),
            Some(c) => Err(self.syntax(format!("unexpected '{}'", c as char))),
            None => Err(self.syntax("unexpected end of input".into())),
        }
    }

    fn coeff(&mut self) -> Result<Polynomial, PolyError> {
        let start = self.pos;
        let num: BigInt = self.digits().unwrap().parse().unwrap();
        let den: BigInt = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            match self.digits() {
                Some(d) => d.parse().unwrap(),
                None => return Err(self.syntax("expected denominator".into())),
            }
        } else {
            BigInt::from(1)
        };
        let field = self.ring.field();
        let c = field.from_ratio(&num, &den).ok_or_else(|| PolyError::CoefficientNotInField {
            pos: start,
            text: format!("{num}/{den}"),
            field,
        })?;
        Ok(Polynomial::constant(self.ring, c))
    }

    fn variable(&mut self) -> Result<Polynomial, PolyError> {
        let start = self.pos;
        let kind = self.src[self.pos];
        self.pos += 1;
        let Some(idx) = self.digits() else {
            return Err(PolyError::Syntax { pos: start, msg: "variable needs an index".into() });
        };
        let name = format!("{}{}", kind as char, idx);
        let i: usize = idx.parse().unwrap_or(0);
        let count = if kind == b'x' { self.ring.x_count() } else { self.ring.y_count() };
        if i == 0 || i > count {
            return Err(PolyError::UnknownVariable { pos: start, name });
        }
        let index = if kind == b'x' { self.ring.x_index(i) } else { self.ring.y_index(i) };
        let mut e: u16 = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let epos = self.pos;
            let Some(digits) = self.digits() else {
                return Err(self.syntax("expected exponent".into()));
            };
            e = digits
                .parse()
                .ok()
                .filter(|&e: &u16| e <= 4096)
                .ok_or(PolyError::Syntax { pos: epos, msg: format!("exponent {digits} too large") })?;
        }
        let mut m = Monomial::one();
        m.set_exp(index, e);
        Ok(Polynomial::monomial(self.ring, self.ring.field().one(), m))
    }
}
