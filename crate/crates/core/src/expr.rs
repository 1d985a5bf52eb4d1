//! Recursive-descent parser for polynomial expressions in `t1..tn`.
//!
//! Grammar:
//!   expr     := term (('+' | '-') term)*
//!   term     := atom ('*' atom)*
//!   atom     := rational | var | atom '^' nat | '(' expr ')'
//!   rational := int ['/' posint]
//!   var      := 't' index, 1 <= index <= n
//!
//! Leading '-' on the first term is accepted. Errors carry byte offsets.

use num_traits::Zero;

use crate::poly::MultiPoly;
use crate::rational::{rat_from_str, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at offset {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
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

    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate_first = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negate_first = true;
        } else if self.peek() == Some(b'+') {
            self.bump();
        }
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same n");
                }
                b'-' => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same n");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let t = self.power()?;
            acc = acc.mul(&t).expect("same n");
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let start = self.pos;
            let e = self.nat()?;
            if e > 64 {
                self.pos = start;
                return self.err("exponent too large");
            }
            let mut acc = MultiPoly::one(self.n, false);
            for _ in 0..e {
                acc = acc.mul(&base).expect("same n");
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(b't') => {
                let start = self.pos;
                self.bump();
                let idx = self.nat()?;
                if idx < 1 || idx as usize > self.n {
                    self.pos = start;
                    return self.err(format!("variable index {idx} out of range 1..={}", self.n));
                }
                Ok(MultiPoly::var(self.n, false, idx as usize - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(MultiPoly::constant(self.n, false, r))
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits")
            .parse()
            .map_err(|_| ParseError { offset: start, message: "number too large".into() })
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let mut text = String::from_utf8(self.src[start..self.pos].to_vec()).expect("digits");
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return self.err("expected a denominator");
            }
            text.push('/');
            text.push_str(std::str::from_utf8(&self.src[dstart..self.pos]).expect("digits"));
        }
        rat_from_str(&text)
            .ok_or_else(|| ParseError { offset: start, message: "bad rational".into() })
    }
}

/// Parses an expression into an exact polynomial in n variables.
pub fn parse_poly_expr(src: &str, n: usize) -> Result<MultiPoly, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, n };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(ParseError { offset: p.pos, message: "trailing input".into() });
    }
    Ok(out)
}

/// Parses a twist polynomial: like `parse_poly_expr`, but the constant term
/// must vanish. The empty string and "0" denote the zero polynomial.
pub fn parse_twist_expr(src: &str, n: usize) -> Result<MultiPoly, ParseError> {
    let trimmed = src.trim();
    if trimmed.is_empty() {
        return Ok(MultiPoly::zero(n, false));
    }
    let p = parse_poly_expr(trimmed, n)?;
    if !p.constant_term().is_zero() {
        return Err(ParseError {
            offset: 0,
            message: "twist polynomial must have zero constant term".into(),
        });
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rint};

    #[test]
    fn two_term_polynomial() {
        let p = parse_poly_expr("t1^2*t2 - 1/2*t3", 3).unwrap();
        let mut expect = MultiPoly::zero(3, false);
        expect.add_term(vec![2, 1, 0], rint(1));
        expect.add_term(vec![0, 0, 1], rat(-1, 2));
        assert_eq!(p, expect);
    }

    #[test]
    fn like_terms_combine() {
        let p = parse_poly_expr("t1 + t1", 2).unwrap();
        let expect = MultiPoly::var(2, false, 0).scale(&rint(2));
        assert_eq!(p, expect);
    }

    #[test]
    fn out_of_range_variable() {
        let e = parse_poly_expr("t4", 3).unwrap_err();
        assert_eq!(e.offset, 0);
    }

    #[test]
    fn parentheses_and_powers() {
        let p = parse_poly_expr("(t1 + t2)^2", 2).unwrap();
        let q = parse_poly_expr("t1^2 + 2*t1*t2 + t2^2", 2).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn parse_print_parse_round_trip() {
        for src in ["t1^2*t2 - 1/2*t1", "3 - t2 + 2*t1*t2", "t1*t2*t1"] {
            let p = parse_poly_expr(src, 2).unwrap();
            let printed = p.to_string_with("t");
            let q = parse_poly_expr(&printed, 2).unwrap();
            assert_eq!(p, q, "round trip through {printed:?}");
        }
    }

    #[test]
    fn twist_rejects_constant_term() {
        assert!(parse_twist_expr("t1 + 1", 2).is_err());
        assert!(parse_twist_expr("", 2).unwrap().is_zero());
        assert!(parse_twist_expr("0", 2).unwrap().is_zero());
    }
}
