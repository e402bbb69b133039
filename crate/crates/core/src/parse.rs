//! Expressions in x (and the field generator t) evaluated to rational functions.
//!
//! Grammar: sums and differences of products and quotients of powers, with
//! integer literals, `x`, `t`, parentheses, `^` integer exponents and
//! implicit multiplication (`3x^2`, `(x+1)(x-1)`).

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::poly::Poly;
use crate::ratfn::RatFn;

pub fn parse_ratfn(field: &Field, src: &str) -> Result<RatFn> {
    let mut p = Parser { field, src: src.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(Error::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(Error::Parse(format!("unexpected '{}' at offset {}", c as char, p.pos)));
    }
    Ok(v)
}

pub fn parse_poly(field: &Field, src: &str) -> Result<Poly> {
    parse_ratfn(field, src)?
        .to_poly()
        .ok_or_else(|| Error::Parse(format!("'{src}' is not a polynomial")))
}

/// Splits on commas outside parentheses.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(src[start..].trim());
    out
}

struct Parser<'a> {
    field: &'a Field,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<RatFn> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.try_div(&d)?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        let e = i64::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
        base.pow(if neg { -e } else { e })
    }

    fn integer(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected an integer at offset {start}")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse::<u128>()
            .map_err(|e| Error::Parse(e.to_string()))
    }

    fn atom(&mut self) -> Result<RatFn> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(Error::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFn::x(self.field))
            }
            Some(b't') => {
                self.pos += 1;
                if self.field.degree() == 1 {
                    return Err(Error::Parse("'t' needs an extension field".into()));
                }
                Ok(RatFn::constant(self.field, self.field.generator()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.field.characteristic() as u128;
                Ok(RatFn::constant(self.field, self.field.from_u64((n % p) as u64)))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{}' at offset {}", c as char, self.pos))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}
