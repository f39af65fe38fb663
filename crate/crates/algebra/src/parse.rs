//! Text syntax for polynomials:
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' varpow)* | varpow ('*' varpow)*
//! varpow := name ('^' uint)?
//! coeff  := int | int '/' uint
//! name   := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! Whitespace is ignored. A leading sign on the first term is accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldDescriptor};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(AlgebraError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected unsigned integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return self.err("expected variable name");
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii name"))
    }
}

pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>> {
    let field = ring.field();
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut sign = match lx.peek() {
        Some(b'-') => {
            lx.pos += 1;
            -1
        }
        Some(b'+') => {
            lx.pos += 1;
            1
        }
        None => return lx.err("empty polynomial"),
        _ => 1,
    };
    loop {
        let (coeff, mono) = parse_term(&mut lx, ring)?;
        let coeff = if sign < 0 { -coeff } else { coeff };
        if !coeff.is_zero() {
            terms.push((field.from_rational(&coeff)?, mono));
        }
        match lx.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(c) => return lx.err(format!("unexpected character `{}`", c as char)),
        }
        lx.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term<F: Field>(lx: &mut Lexer<'_>, ring: &Ring<F>) -> Result<(BigRational, Monomial)> {
    let mut mono = Monomial::one(ring.nvars());
    let mut coeff = BigRational::from_integer(1.into());
    let mut need_factor = true;
    if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
        let start = lx.pos;
        let num = lx.uint()?;
        if lx.peek() == Some(b'/') {
            lx.pos += 1;
            let den = lx.uint()?;
            if den.is_zero() {
                return lx.err("zero denominator");
            }
            if ring.field().descriptor() != FieldDescriptor::Rational {
                let literal = String::from_utf8_lossy(&lx.src[start..lx.pos]).to_string();
                return Err(AlgebraError::RationalLiteral(literal));
            }
            coeff = BigRational::new(num, den);
        } else {
            coeff = BigRational::from_integer(num);
        }
        if lx.peek() == Some(b'*') {
            lx.pos += 1;
        } else {
            return Ok((coeff, mono));
        }
    }
    loop {
        if !need_factor {
            break;
        }
        let name = lx.name()?;
        let var = ring
            .var_index(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        let mut power: u32 = 1;
        if lx.peek() == Some(b'^') {
            lx.pos += 1;
            let e = lx.uint()?;
            power = match u16::try_from(&e) {
                Ok(p) => p as u32,
                Err(_) => return lx.err("exponent too large"),
            };
        }
        let cur = mono.exponent(var) as u32 + power;
        if cur > u16::MAX as u32 {
            return lx.err("exponent too large");
        }
        mono.set_exponent(var, cur as u16);
        need_factor = false;
        if lx.peek() == Some(b'*') {
            lx.pos += 1;
            if lx.peek().is_some_and(|c| c.is_ascii_digit()) {
                return lx.err("coefficient must come first in a term");
            }
            need_factor = true;
        }
    }
    Ok((coeff, mono))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::MonomialOrder;
    use crate::ring::PolyRing;

    #[test]
    fn expands_and_collects() {
        let r = PolyRing::with_prefix(Rationals, "x", 3, MonomialOrder::Grevlex);
        let p = parse_polynomial("x0^2 - 2*x0*x1 + x1^2", &r).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.total_degree(), Some(2));
        assert!(parse_polynomial("x0 - x0", &r).unwrap().is_zero());
        let q = parse_polynomial("x0*x0 + x0^2", &r).unwrap();
        assert_eq!(q.to_string(), "2*x0^2");
    }

    #[test]
    fn rational_literal_rejected_in_prime_field() {
        let r = PolyRing::with_prefix(PrimeField::new(7).unwrap(), "x", 3, MonomialOrder::Grevlex);
        let e = parse_polynomial("3/2*x2", &r).unwrap_err();
        assert!(matches!(e, AlgebraError::RationalLiteral(_)));
        let rq = PolyRing::with_prefix(Rationals, "x", 3, MonomialOrder::Grevlex);
        assert_eq!(parse_polynomial("3/2*x2", &rq).unwrap().to_string(), "3/2*x2");
    }

    #[test]
    fn errors_carry_position() {
        let r = PolyRing::with_prefix(Rationals, "x", 2, MonomialOrder::Grevlex);
        match parse_polynomial("x0 + * x1", &r) {
            Err(AlgebraError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_polynomial("x0 + y", &r).unwrap_err(),
            AlgebraError::UnknownVariable("y".into())
        );
        assert!(parse_polynomial("", &r).is_err());
        assert!(parse_polynomial("1/0*x0", &r).is_err());
    }

    #[test]
    fn display_roundtrip() {
        let r = PolyRing::with_prefix(Rationals, "x", 3, MonomialOrder::Grevlex);
        let p = parse_polynomial("-7/3*x0^3*x2 + x1 - 4 + x0*x1*x2", &r).unwrap();
        assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
    }
}
