//! Text grammars for monomials, scalars and polynomials.
//!
//! ```text
//! monomial   := "1" | factor ("*" factor)*
//! factor     := "x" digits ("^" digits)?
//! polynomial := ["-"] term (("+" | "-") term)*
//! term       := item ("*" item)*
//! item       := factor | number ["/" number] ["mod" number] | name
//! ```
//!
//! Names (`a0`, `beta`, ...) denote indeterminates and are only accepted
//! over a generic field. Error positions are byte offsets into the input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{rational_from_parts, Field, Scalar};
use crate::monomial::{normalize, Monomial};
use crate::poly::Polynomial;

pub fn parse_monomial(text: &str) -> Result<Monomial> {
    let mut lx = Lexer::new(text);
    lx.skip_ws();
    if lx.eat_keyword("1") {
        lx.expect_end()?;
        return Ok(Monomial::identity());
    }
    let mut word = Vec::new();
    loop {
        lx.skip_ws();
        lx.generator_factor(&mut word)?;
        lx.skip_ws();
        if !lx.eat('*') {
            break;
        }
    }
    lx.expect_end()?;
    Ok(normalize(&word))
}

/// Parses a single coefficient in the grammar of `field`.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let mut lx = Lexer::new(text);
    lx.skip_ws();
    let neg = lx.eat('-');
    lx.skip_ws();
    let start = lx.pos;
    let v = match lx.peek() {
        Some(c) if c.is_ascii_digit() => lx.number_item(field)?,
        Some(c) if c.is_ascii_alphabetic() => {
            let name = lx.ident();
            field
                .indeterminate(name)
                .map_err(|e| Error::parse(start, e.to_string()))?
        }
        _ => return Err(lx.error("expected a coefficient")),
    };
    lx.skip_ws();
    lx.expect_end()?;
    Ok(if neg { field.neg(&v) } else { v })
}

pub fn parse_polynomial(text: &str, field: Field) -> Result<Polynomial> {
    let mut lx = Lexer::new(text);
    let mut poly = Polynomial::zero(field);
    lx.skip_ws();
    if lx.at_end() {
        return Err(lx.error("empty polynomial"));
    }
    let mut neg = lx.eat('-');
    loop {
        lx.skip_ws();
        let (m, c) = lx.term(field)?;
        poly.add_term(m, if neg { field.neg(&c) } else { c });
        lx.skip_ws();
        if lx.eat('+') {
            neg = false;
        } else if lx.eat('-') {
            neg = true;
        } else {
            break;
        }
    }
    lx.expect_end()?;
    Ok(poly)
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn error(&self, msg: &str) -> Error {
        match self.peek() {
            Some(c) => Error::parse(self.pos, format!("{msg}, found {c:?}")),
            None => Error::parse(self.pos, format!("{msg}, found end of input")),
        }
    }

    fn skip_ws(&mut self) {
        let n = self.rest().len() - self.rest().trim_start().len();
        self.pos += n;
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// Consumes `kw` if it is not followed by another identifier character.
    fn eat_keyword(&mut self, kw: &str) -> bool {
        let rest = self.rest();
        if rest.starts_with(kw)
            && !rest[kw.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected input"))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let rest = self.rest();
        let n = rest.bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return Err(self.error("expected digits"));
        }
        self.pos += n;
        Ok(&rest[..n])
    }

    fn small_number(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        self.digits()?
            .parse()
            .map_err(|_| Error::parse(start, format!("{what} out of range")))
    }

    fn ident(&mut self) -> &'a str {
        let rest = self.rest();
        let n = rest
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        self.pos += n;
        &rest[..n]
    }

    fn is_generator_ahead(&self) -> bool {
        let rest = self.rest().as_bytes();
        if rest.first() != Some(&b'x') {
            return false;
        }
        let n = rest[1..].iter().take_while(|b| b.is_ascii_digit()).count();
        n > 0
            && !rest
                .get(1 + n)
                .is_some_and(|b| b.is_ascii_alphabetic() || *b == b'_')
    }

    fn generator_factor(&mut self, word: &mut Vec<u32>) -> Result<()> {
        if !self.is_generator_ahead() {
            return Err(self.error("expected a generator like x3"));
        }
        self.pos += 1;
        let i = self.small_number("generator index")?;
        self.skip_ws();
        let e = if self.eat('^') {
            self.skip_ws();
            self.small_number("exponent")?
        } else {
            1
        };
        word.extend(std::iter::repeat_n(i, e as usize));
        Ok(())
    }

    /// `number ["/" number] ["mod" number]`
    fn number_item(&mut self, field: Field) -> Result<Scalar> {
        let start = self.pos;
        let num: BigInt = self.digits()?.parse().expect("digits");
        let save = self.pos;
        self.skip_ws();
        let den: BigInt = if self.eat('/') {
            self.skip_ws();
            self.digits()?.parse().expect("digits")
        } else {
            self.pos = save;
            BigInt::from(1)
        };
        let save = self.pos;
        self.skip_ws();
        if self.eat_keyword("mod") {
            self.skip_ws();
            let at = self.pos;
            let p: u64 = self
                .digits()?
                .parse()
                .map_err(|_| Error::parse(at, "modulus out of range"))?;
            if field.modulus() != Some(p) || !matches!(field, Field::Prime(_)) {
                return Err(Error::parse(at, format!("modulus {p} does not match field {field}")));
            }
        } else {
            self.pos = save;
        }
        let q = rational_from_parts(num, den)
            .ok_or_else(|| Error::parse(start, "zero denominator"))?;
        field
            .from_rational(&q)
            .ok_or_else(|| Error::parse(start, format!("denominator vanishes in {field}")))
    }

    fn term(&mut self, field: Field) -> Result<(Monomial, Scalar)> {
        let mut coef = field.one();
        let mut word = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            match self.peek() {
                Some(_) if self.is_generator_ahead() => self.generator_factor(&mut word)?,
                Some(c) if c.is_ascii_digit() => {
                    let v = self.number_item(field)?;
                    coef = field.mul(&coef, &v);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let name = self.ident();
                    let v = field
                        .indeterminate(name)
                        .map_err(|e| Error::parse(start, e.to_string()))?;
                    coef = field.mul(&coef, &v);
                }
                _ => return Err(self.error("expected a coefficient or generator")),
            }
            self.skip_ws();
            if !self.eat('*') {
                break;
            }
        }
        Ok((normalize(&word), coef))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn monomials() {
        assert_eq!(parse_monomial("1").unwrap(), Monomial::identity());
        assert_eq!(parse_monomial("x0^2*x1*x4").unwrap().indices(), &[0, 0, 1, 4]);
        assert_eq!(parse_monomial(" x1 * x0 ").unwrap().indices(), &[0, 2]);
        assert_eq!(parse_monomial("x3^0").unwrap(), Monomial::identity());
    }

    #[test]
    fn monomial_errors_carry_positions() {
        assert_eq!(parse_monomial("x0*y1"), Err(Error::Parse { pos: 3, msg: "expected a generator like x3, found 'y'".into() }));
        assert!(matches!(parse_monomial("x0*"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_monomial("x0 x1"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_monomial(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn scalars() {
        let f = Field::Rational;
        assert_eq!(parse_scalar("-3/4", f).unwrap().to_string(), "-3/4");
        assert_eq!(parse_scalar("6/8", f).unwrap().to_string(), "3/4");
        let p = Field::Prime(7);
        assert_eq!(parse_scalar("12 mod 7", p).unwrap(), Scalar::Modular(5));
        assert_eq!(parse_scalar("1/2", p).unwrap(), Scalar::Modular(4));
        assert!(parse_scalar("12 mod 5", p).is_err());
        assert!(parse_scalar("1/7", p).is_err());
        assert!(parse_scalar("a0", f).is_err());
        let g = Field::Indeterminate { seed: 3 };
        assert_eq!(parse_scalar("a0", g).unwrap(), g.indeterminate("a0").unwrap());
    }

    #[test]
    fn polynomials() {
        let f = Field::Rational;
        let p = parse_polynomial("3/4*x0*x0*x1 - x5 + 2", f).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coefficient(&parse_monomial("x0^2*x1").unwrap()), Field::Rational.from_rational(&rational_from_parts(3.into(), 4.into()).unwrap()).unwrap());
        assert_eq!(p.coefficient(&parse_monomial("x5").unwrap()), q(-1));
        assert_eq!(p.coefficient(&Monomial::identity()), q(2));
        assert_eq!(p.to_string(), "2 - x5 + 3/4*x0^2*x1");
        assert_eq!(parse_polynomial(&p.to_string(), f).unwrap(), p);
        assert!(parse_polynomial("x1*x0 - x0*x2", f).unwrap().is_zero());
        assert_eq!(parse_polynomial("-x0 + 2*x0", f).unwrap(), parse_polynomial("x0", f).unwrap());
    }

    #[test]
    fn polynomial_errors() {
        let f = Field::Rational;
        assert!(matches!(parse_polynomial("x0 + ", f), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_polynomial("x0 + a1*x1", f), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_polynomial("2*x0 + 1/0", f), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_polynomial("", f), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_polynomial("x0 ) x1", f), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn indeterminate_coefficients() {
        let g = Field::Indeterminate { seed: 11 };
        let p = parse_polynomial("a0*x0 + a1*b1*x1", g).unwrap();
        let want = g.mul(&g.indeterminate("a1").unwrap(), &g.indeterminate("b1").unwrap());
        assert_eq!(p.coefficient(&Monomial::generator(1)), want);
    }
}
