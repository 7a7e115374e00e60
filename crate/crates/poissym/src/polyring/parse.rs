//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! rational ::= int ['/' int]
//! atom     ::= rational | var | '(' expr ')'
//! power    ::= atom ['^' uint]
//! term     ::= power {'*' power}
//! expr     ::= ['-'] term {('+'|'-') term}
//! ```
//!
//! Printing with [`Poly::canonical_string`] and re-parsing is the identity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::{Poly, VarRing};

/// Parse `text` as a polynomial over `ring`.
pub fn parse_poly(text: &str, ring: &Arc<VarRing>) -> Result<Poly> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        ring,
    };
    p.skip_ws();
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ring: &'a Arc<VarRing>,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg_ref();
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.add_ref(&t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = acc.sub_ref(&t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        while self.eat(b'*') {
            let p = self.power()?;
            acc = acc.mul_ref(&p);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.variable(),
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }

    fn rational(&mut self) -> Result<Poly> {
        let numer = self.integer()?;
        let value = if self.eat(b'/') {
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(self.error("division by zero in coefficient"));
            }
            BigRational::new(numer, denom)
        } else {
            BigRational::from_integer(numer)
        };
        Ok(Poly::constant(self.ring, value))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        self.skip_ws();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an exponent"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        self.skip_ws();
        text.parse::<u32>()
            .map_err(|_| self.error("exponent out of range"))
    }

    fn variable(&mut self) -> Result<Poly> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        match self.ring.var_index(name) {
            Some(i) => {
                self.skip_ws();
                Ok(Poly::var(self.ring, i))
            }
            None => Err(Error::UnknownVariable {
                name: name.to_string(),
                pos: start,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;

    fn ring3() -> Arc<VarRing> {
        VarRing::new(vec!["x1", "x2", "x3"]).unwrap()
    }

    #[test]
    fn parses_the_cone_equation() {
        let r = ring3();
        let f = parse_poly("x1*x2 - x3^2", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn zero_literal_is_the_zero_polynomial() {
        let r = ring3();
        assert!(parse_poly("0", &r).unwrap().is_zero());
    }

    #[test]
    fn unknown_variable_is_reported_with_position() {
        let r = ring3();
        match parse_poly("x1 + y", &r) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "y");
                assert_eq!(pos, 5);
            }
            other => panic!("expected unknown-variable error, got {other:?}"),
        }
    }

    #[test]
    fn rationals_parens_and_powers() {
        let r = ring3();
        let f = parse_poly("3/2*(x1 + x2)^2 - 1/2", &r).unwrap();
        let g = parse_poly("3/2*x1^2 + 3*x1*x2 + 3/2*x2^2 - 1/2", &r).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let r = ring3();
        assert!(matches!(
            parse_poly("x1 + ", &r),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_poly("x1 x2", &r), Err(Error::Parse { .. })));
    }

    #[test]
    fn print_then_parse_is_identity() {
        let r = ring3();
        for s in ["x1*x2 - x3^2", "-2*x3", "x1 + 1/2", "0", "5"] {
            let f = parse_poly(s, &r).unwrap();
            let printed = f.canonical_string(MonomialOrder::GrevLex);
            assert_eq!(parse_poly(&printed, &r).unwrap(), f);
        }
    }
}
