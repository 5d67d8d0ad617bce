//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | var ['^' int]
//! rational := int ['/' uint]      int := ['-'] digits
//! var      := letter (letter|digit|'_')*
//! ```
//!
//! Whitespace is insignificant between tokens.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Poly, PolyError, Ring};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

pub fn parse_poly(text: &str, ring: &Ring) -> Result<Poly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Syntax { position: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let negate = self.eat(b'-');
        let (m, c) = self.term()?;
        let mut terms = vec![(m, if negate { -c } else { c })];
        loop {
            let sign = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => break,
            };
            self.pos += 1;
            let (m, c) = self.term()?;
            terms.push((m, if sign { -c } else { c }));
        }
        Poly::from_terms(self.ring.clone(), terms)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational), PolyError> {
        let mut exps = vec![0i64; self.ring.nvars()];
        let mut coeff = BigRational::one();
        loop {
            self.factor(&mut exps, &mut coeff)?;
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn factor(&mut self, exps: &mut [i64], coeff: &mut BigRational) -> Result<(), PolyError> {
        match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let num = self.int()?;
                let mut value = BigRational::from_integer(num);
                if self.eat(b'/') {
                    let den = self.digits()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                *coeff *= value;
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self.ring.var_index(name).ok_or_else(|| PolyError::UnknownVariable {
                    name: name.to_string(),
                    position: Some(start),
                })?;
                let e = if self.eat(b'^') {
                    let at = self.pos;
                    let v = self.int()?;
                    i64::try_from(v).map_err(|_| {
                        PolyError::Syntax { position: at, message: "exponent out of range".into() }
                    })?
                } else {
                    1
                };
                if e < 0 && !self.ring.is_laurent() {
                    return Err(PolyError::NegativeExponent {
                        var: name.to_string(),
                        position: Some(start),
                    });
                }
                exps[idx] = exps[idx].checked_add(e).ok_or(PolyError::ExponentOverflow)?;
                Ok(())
            }
            Some(_) => Err(self.error("expected a number or a variable")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn int(&mut self) -> Result<BigInt, PolyError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        Ok(if neg { -d } else { d })
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().expect("ascii digits"))
    }
}
