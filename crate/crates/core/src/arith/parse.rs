//! Scalar literals.
//!
//! ```text
//! scalar   := term (("+" | "-") term)*
//! term     := rational | rational "*" atom | atom
//! atom     := "u^" int | "p^" int
//! rational := int ("/" uint)?
//! ```
//!
//! Whitespace is ignored. A leading sign on the first term is accepted, and a
//! bare `u` or `p` means exponent one.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ArithError, Field, Rational, Scalar};

pub fn scalar_parse(text: &str, field: Field) -> Result<Scalar, ArithError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser {
        original: text,
        src: compact.as_bytes(),
        pos: 0,
        field,
    };
    parser.scalar()
}

struct Parser<'a> {
    original: &'a str,
    src: &'a [u8],
    pos: usize,
    field: Field,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ArithError {
        ArithError::Syntax {
            text: self.original.to_string(),
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
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

    fn scalar(&mut self) -> Result<Scalar, ArithError> {
        if self.src.is_empty() {
            return Err(self.error("empty literal"));
        }
        let mut acc = self.field.zero();
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => return Err(self.error("expected '+', '-' or end of literal")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Scalar, ArithError> {
        match self.peek() {
            Some(b'u') | Some(b'p') => self.atom(),
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {
                let r = self.rational()?;
                let coeff = Scalar::from_rational(self.field, r);
                if self.eat(b'*') {
                    Ok(&coeff * &self.atom()?)
                } else {
                    Ok(coeff)
                }
            }
            _ => Err(self.error("expected a rational, 'u^k' or 'p^k'")),
        }
    }

    fn atom(&mut self) -> Result<Scalar, ArithError> {
        let which = self.peek();
        self.pos += 1;
        let exp = if self.eat(b'^') { self.int()? } else { BigInt::one() };
        let exp: i64 = i64::try_from(exp).map_err(|_| self.error("exponent out of range"))?;
        match which {
            Some(b'u') => Ok(self.field.u_pow(exp)),
            Some(b'p') => Ok(self.field.p_pow(exp)),
            _ => Err(self.error("expected 'u' or 'p'")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ArithError> {
        let num = self.int()?;
        if self.eat(b'/') {
            let start = self.pos;
            let den = self.digits()?;
            if den.is_zero() {
                self.pos = start;
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn int(&mut self) -> Result<BigInt, ArithError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self.digits()?;
        Ok(if neg { -d } else { d })
    }

    fn digits(&mut self) -> Result<BigInt, ArithError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("nonempty digit string"))
    }
}
