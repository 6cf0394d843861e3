//! Text grammar for polynomials in x, y, z and the canonical printer.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+')* power
//! power := atom ('^' uint)?
//! atom  := uint | 'x' | 'y' | 'z' | 'sqrt(' int ')' | '(' expr ')'
//! ```
//! Division is allowed only by nonzero constants.

use super::field::{fmt_rat, Field, Rat};
use super::mpoly::MPoly;
use super::quad::QuadExt;
use crate::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

type P = MPoly<QuadExt>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let t = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(t.parse().unwrap())
    }

    fn expr(&mut self) -> Result<P, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                if d.total_degree() != 0 || d.is_zero() {
                    self.pos = at;
                    return self.err("division only by a nonzero constant");
                }
                acc = acc.scale(&d.coeff(&[0, 0, 0]).inv());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<P, Error> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<P, Error> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            let e: u32 = match e.try_into() {
                Ok(v) if v <= 1000 => v,
                _ => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<P, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(MPoly::constant(QuadExt::rational(Rat::from_integer(n))))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(MPoly::var(0))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(MPoly::var(1))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(MPoly::var(2))
            }
            Some(b's') if self.s[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                if !self.eat(b'(') {
                    return self.err("expected '(' after sqrt");
                }
                let neg = self.eat(b'-');
                let n = self.uint()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                let n: i64 = match i64::try_from(n) {
                    Ok(v) => v,
                    Err(_) => return self.err("radicand too large"),
                };
                let n = if neg { -n } else { n };
                if n == 0 {
                    return Ok(MPoly::zero());
                }
                Ok(MPoly::constant(QuadExt::sqrt(n)))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial with coefficients in Q or a single Q(sqrt d).
pub fn parse_poly_quad(text: &str) -> Result<P, Error> {
    let norm = text.replace('\u{2212}', "-");
    let mut p = Parser { s: norm.as_bytes(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let mut ds = out.terms.values().filter(|c| !c.is_rational()).map(|c| c.d);
    if let Some(d) = ds.next() {
        if ds.any(|e| e != d) {
            return Err(Error::ExtensionTooLarge("two different square roots".into()));
        }
    }
    Ok(out)
}

/// Parse a polynomial with rational coefficients (not necessarily homogeneous).
pub fn parse_poly(text: &str) -> Result<MPoly<Rat>, Error> {
    let q = parse_poly_quad(text)?;
    if q.terms.values().any(|c| !c.is_rational()) {
        return Err(Error::InvalidInput("expected rational coefficients".into()));
    }
    Ok(q.map(|c| c.a.clone()))
}

/// Parse a nonzero homogeneous form with rational coefficients.
pub fn parse_form(text: &str) -> Result<MPoly<Rat>, Error> {
    let f = parse_poly(text)?;
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !f.is_homogeneous() {
        return Err(Error::InvalidInput("polynomial is not homogeneous".into()));
    }
    Ok(f)
}

fn monomial(e: &[u32; 3]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in ["x", "y", "z"].iter().zip(e) {
        match k {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{k}")),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in decreasing lex order of exponents.
pub fn print_poly(f: &MPoly<Rat>) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in f.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let m = monomial(e);
        let body = if m.is_empty() {
            fmt_rat(&a)
        } else if a.is_one() {
            m
        } else {
            format!("{}*{}", fmt_rat(&a), m)
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body)
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body)
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body)
            }
        }
    }
    out
}

/// Printer for polynomials over Q(sqrt d); irrational coefficients are parenthesized.
pub fn print_poly_quad(f: &P) -> String {
    if f.terms.values().all(|c| c.is_rational()) {
        return print_poly(&f.map(|c| c.a.clone()));
    }
    if f.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = f
        .terms
        .iter()
        .rev()
        .map(|(e, c)| {
            let m = monomial(e);
            if m.is_empty() {
                format!("({c})")
            } else if c.is_one() {
                m
            } else {
                format!("({c})*{m}")
            }
        })
        .collect();
    parts.join(" + ")
}

impl std::fmt::Display for MPoly<Rat> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_poly(self))
    }
}

/// Rational number in the grammar `[-]p[/q]`.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let t = text.trim().replace('\u{2212}', "-");
    let q = parse_poly_quad(&t)?;
    if q.total_degree() > 0 || q.terms.values().any(|c| !c.is_rational()) {
        return Err(Error::Parse { pos: 0, msg: format!("expected a rational number, got '{text}'") });
    }
    Ok(q.coeff(&[0, 0, 0]).a)
}
