//! Recursive-descent parser for the polynomial expression grammar:
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := coeff ("*"? factor)* | factor ("*"? factor)*
//! factor := var ("^" uint)? | "(" expr ")"
//! coeff  := uint
//! ```
//!
//! Whitespace is insignificant. A leading sign on the first term is accepted
//! as a convenience; canonical output never produces one.

use std::fmt;

use thiserror::Error;

use super::{Monomial, PolyError, Polynomial, RingDecl};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownVariable(String),
    ExponentOverflow,
}

/// A parse failure with the byte position where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error at byte {}: {}", self.pos, msg),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable `{}` at byte {}", v, self.pos)
            }
            ParseErrorKind::ExponentOverflow => {
                write!(f, "exponent overflow at byte {}", self.pos)
            }
        }
    }
}

/// Parses `src` in `ring`, reducing coefficients mod p.
pub fn parse_poly(src: &str, ring: &RingDecl) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ring,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingDecl,
}

impl<'a> Parser<'a> {
    fn syntax(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            kind: ParseErrorKind::Syntax(msg.to_string()),
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

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            negate = c == b'-';
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            let t = if c == b'-' { t.neg() } else { t };
            acc = acc.add(&t).expect("same ring");
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint_mod_p()?;
                Polynomial::constant(self.ring, n)
            }
            Some(c) if c == b'(' || is_ident_start(c) => self.factor()?,
            _ => return Err(self.syntax("expected a term")),
        };
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = self.checked_mul(&acc, &f)?;
                }
                Some(c) if c == b'(' || is_ident_start(c) => {
                    let f = self.factor()?;
                    acc = self.checked_mul(&acc, &f)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn checked_mul(
        &self,
        a: &Polynomial,
        b: &Polynomial,
    ) -> Result<Polynomial, ParseError> {
        a.mul(b).map_err(|e| match e {
            PolyError::ExponentOverflow(_) => ParseError {
                pos: self.pos,
                kind: ParseErrorKind::ExponentOverflow,
            },
            _ => self.syntax("invalid product"),
        })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                let name = self.ident();
                let index = self.ring.var_index(&name).ok_or(ParseError {
                    pos: start,
                    kind: ParseErrorKind::UnknownVariable(name),
                })?;
                let mut exp = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.uint_u32()?;
                }
                let mut exps = vec![0u32; self.ring.nvars()];
                exps[index] = exp;
                Ok(Polynomial::from_terms(
                    self.ring,
                    [(Monomial::from_exps(exps), 1u64)],
                ))
            }
            _ => Err(self.syntax("expected a variable, `(` or a coefficient")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    /// An unsigned integer reduced mod p on the fly (coefficients may be huge).
    fn uint_mod_p(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            return Err(self.syntax("expected an unsigned integer"));
        }
        let p = self.ring.characteristic() as u64;
        let mut acc = 0u64;
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            acc = (acc * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        Ok(acc)
    }

    /// An unsigned integer that must fit in 32 bits (exponents).
    fn uint_u32(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
            return Err(self.syntax("expected an exponent"));
        }
        let mut acc = 0u64;
        while let Some(c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            acc = acc * 10 + (c - b'0') as u64;
            if acc > u32::MAX as u64 {
                return Err(ParseError {
                    pos: start,
                    kind: ParseErrorKind::ExponentOverflow,
                });
            }
            self.pos += 1;
        }
        Ok(acc as u32)
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

#[cfg(test)]
mod tests {
    use super::super::{MonomialOrder, Prime, RingDecl};
    use super::*;

    fn ring(p: u64, vars: &[&str]) -> RingDecl {
        RingDecl::new(
            vars.iter().copied(),
            Prime::new(p).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn whitespace_and_implicit_products() {
        let r = ring(7, &["x", "y"]);
        let a = parse_poly("3x^2 y", &r).unwrap();
        let b = parse_poly("3 * x^2 * y", &r).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "3*x^2*y");
    }

    #[test]
    fn parenthesized_expressions() {
        let r = ring(5, &["x", "y"]);
        let f = parse_poly("(x + y)(x - y) + y^2", &r).unwrap();
        assert_eq!(f.to_string(), "x^2");
    }

    #[test]
    fn coefficient_reduction() {
        let r = ring(5, &["x"]);
        assert_eq!(parse_poly("12x", &r).unwrap().to_string(), "2*x");
        assert!(parse_poly("10", &r).unwrap().is_zero());
        // coefficients larger than u64 still reduce
        assert_eq!(
            parse_poly("99999999999999999999999999", &r)
                .unwrap()
                .to_string(),
            "4"
        );
    }

    #[test]
    fn error_positions() {
        let r = ring(5, &["x"]);
        let e = parse_poly("x + ", &r).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.pos, 4);

        let e = parse_poly("x + y", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y".into()));
        assert_eq!(e.pos, 4);

        let e = parse_poly("x^99999999999", &r).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ExponentOverflow);
    }

    #[test]
    fn rejects_malformed_input() {
        let r = ring(5, &["x"]);
        for bad in ["", "x ^", "()", "x +* x", "3 * 4", "x)", "(x"] {
            assert!(parse_poly(bad, &r).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn leading_sign_is_tolerated() {
        let r = ring(7, &["x"]);
        assert_eq!(parse_poly("-x", &r).unwrap().to_string(), "6*x");
        assert_eq!(parse_poly("+x", &r).unwrap().to_string(), "x");
    }
}
