//! Text form of polynomials.
//!
//! ```text
//! poly   := [sign] term (sign term)*
//! term   := factor ('*' factor)*
//! factor := integer | name ['^' integer]
//! ```
//! Whitespace is ignored, integers are reduced modulo `p` and exponents must be
//! at least 1. Rendering produces the same grammar with terms in descending
//! degrevlex order and coefficients as residues in `[1, p)`.

use std::fmt::Write;

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    parser.polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            None => return self.error("empty polynomial"),
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { field.neg(c) } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(ch) => return self.error(format!("unexpected `{}`", ch as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<(Monomial, u32)> {
        let field = self.ring.field();
        let bound = self.ring.max_exponent();
        let mut m = Monomial::one(self.ring.nvars());
        let mut c = 1u32;
        loop {
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let digits = self.digits();
                    c = field.mul(c, field.from_decimal(digits));
                }
                Some(ch) if ch.is_ascii_alphabetic() || ch == b'_' => {
                    let start = self.pos;
                    let name = self.identifier().to_owned();
                    let index = self
                        .ring
                        .variable_index(&name)
                        .ok_or(Error::UnknownVariable(name))?;
                    let mut exp = 1u64;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        if !matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                            return self.error("expected exponent after `^`");
                        }
                        let digits = self.digits();
                        exp = digits
                            .parse::<u64>()
                            .map_err(|_| Error::ExponentOverflow(bound as u64))?;
                        if exp == 0 {
                            self.pos = start;
                            return self.error("exponents must be at least 1");
                        }
                    }
                    let slot = &mut m.exponents_mut()[index];
                    let total = *slot as u64 + exp;
                    if total > bound as u64 {
                        return Err(Error::ExponentOverflow(bound as u64));
                    }
                    *slot = total as u32;
                }
                Some(ch) => return self.error(format!("expected a factor, found `{}`", ch as char)),
                None => return self.error("expected a factor"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((m, c));
            }
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }

    fn identifier(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }
}

pub fn render(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_owned();
    }
    let vars = f.ring().variables();
    let mut out = String::new();
    for (i, (m, c)) in f.terms().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if *c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars[v].clone()),
                _ => factors.push(format!("{}^{}", vars[v], e)),
            }
        }
        let _ = write!(out, "{}", factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RingSpec;
    use proptest::prelude::*;

    #[test]
    fn reduces_coefficients() {
        let r = RingSpec::new(3, &["x", "y"]).unwrap();
        let f = parse_polynomial("x^2 + 2*x*y - y", &r).unwrap();
        let expect = [
            (Monomial::from_exponents(&[2, 0]), 1),
            (Monomial::from_exponents(&[1, 1]), 2),
            (Monomial::from_exponents(&[0, 1]), 2),
        ];
        assert_eq!(f.terms(), &expect);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert!(parse_polynomial("3*x", &r).unwrap().is_zero());
        assert_eq!(render(&f), "x^2 + 2*x*y + 2*y");
    }

    #[test]
    fn whitespace_and_repeated_factors() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        let a = parse_polynomial(" x * x ^ 2*3 *y-  4 ", &r).unwrap();
        let b = parse_polynomial("3*x^3*y + 1", &r).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reports_errors() {
        let r = RingSpec::new(5, &["x", "y"]).unwrap();
        assert_eq!(
            parse_polynomial("x + w", &r),
            Err(Error::UnknownVariable("w".into()))
        );
        assert!(matches!(parse_polynomial("x +", &r), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x^0", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x y", &r), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_polynomial("", &r), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^", &r), Err(Error::Syntax { .. })));
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(
            terms in prop::collection::vec((0u32..4, 0u32..4, 0u32..4, 0u32..7), 0..8)
        ) {
            let r = RingSpec::new(7, &["x", "y", "z_1"]).unwrap();
            let f = Polynomial::from_terms(
                &r,
                terms.into_iter().map(|(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]), k)),
            );
            prop_assert_eq!(parse_polynomial(&render(&f), &r).unwrap(), f);
        }
    }
}
