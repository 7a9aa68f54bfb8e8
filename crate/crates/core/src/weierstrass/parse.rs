//! Recursive-descent parser for polynomial expressions in `s` and `t`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*      division by nonzero constants only
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 's' | 't' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::BivariatePoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

const MAX_EXPONENT: u32 = 64;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.text[start..self.pos]).ok()?.parse().ok()
    }

    fn expr(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<BivariatePoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                self.skip_ws();
                let at = self.pos;
                let d = self.unary()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = at;
                    return self.error("division is only allowed by a nonzero constant");
                }
                acc = acc.scale(&d.coefficient(0, 0).recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BivariatePoly, ParseError> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BivariatePoly, ParseError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let Some(e) = self.integer() else {
            return self.error("expected a non-negative integer exponent");
        };
        match u32::try_from(e) {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => self.error(format!("exponent larger than {MAX_EXPONENT}")),
        }
    }

    fn atom(&mut self) -> Result<BivariatePoly, ParseError> {
        match self.peek() {
            Some(b's') => {
                self.pos += 1;
                Ok(BivariatePoly::s())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(BivariatePoly::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.error("expected `)`");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("starts with a digit");
                Ok(BivariatePoly::constant(Rational::from_integer(n)))
            }
            Some(c) => self.error(format!("unexpected `{}`", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses an expression such as `"4*s^3 + 27*t^2"` or `"(s - 1/2)*t"`.
pub fn parse_poly(text: &str) -> Result<BivariatePoly, ParseError> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return p.error("empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    debug_assert!(out.terms().all(|(_, c)| !c.is_zero()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn precedence_and_signs() {
        let p = parse_poly("-s^2 + 2*(s - t)*t / 4").unwrap();
        let expected = BivariatePoly::from_terms([
            ((2, 0), int(-1)),
            ((1, 1), ratio(1, 2)),
            ((0, 2), ratio(-1, 2)),
        ]);
        assert_eq!(p, expected);
        assert_eq!(parse_poly("1/2*s").unwrap(), BivariatePoly::monomial(ratio(1, 2), 1, 0));
        assert_eq!(parse_poly("(s+t)^2 - s^2 - t^2").unwrap(), BivariatePoly::monomial(int(2), 1, 1));
        assert_eq!(parse_poly(" 0 ").unwrap(), BivariatePoly::zero());
    }

    #[test]
    fn errors_carry_columns() {
        let cases = [("s +", 4), ("s / t", 5), ("2*x", 3), ("(s", 3), ("s t", 3), ("", 1), ("s^-1", 3)];
        for (text, column) in cases {
            let e = parse_poly(text).unwrap_err();
            assert_eq!(e.column, column, "{text}: {e}");
        }
        assert!(parse_poly("s^65").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
