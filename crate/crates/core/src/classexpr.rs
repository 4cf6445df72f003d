//! Text syntax for numerical classes.
//!
//! ```text
//! expr  := ['-'] term (('+' | '-') term)*
//! term  := [rational ['*']] atom ['[' int ']']
//! atom  := 'O' ['(' coords ')'] | 'pt' | 'ch(' r ';' coords ';' coords ';' r ')'
//! ```
//!
//! `O(d1,...,dn)` is the line bundle with divisor coordinates `d`, `pt` the
//! class of a point, `ch(...)` gives `ch0; ch1; ch2; ch3` in the ring's bases
//! and `[n]` multiplies by `(-1)^n`. Columns in errors are 1-based.

use num_integer::Integer;
use num_traits::One;

use crate::chern::ChernVector;
use crate::error::{Error, Result};
use crate::rational::{parse_rational_at, Rational};
use crate::ring::{CohRing, CurveClass, DivisorClass};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    ring: &'a CohRing,
}

impl<'a> Parser<'a> {
    fn col(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(c) => Error::parse(self.col(), format!("expected {wanted}, found `{c}`")),
            None => Error::parse(self.col(), format!("expected {wanted}, found end of input")),
        }
    }

    /// Consumes a rational literal (`p`, `p/q` or a decimal) without a sign.
    fn number(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let mut len = rest.bytes().take_while(|b| b.is_ascii_digit() || *b == b'.').count();
        if len == 0 {
            return Err(self.unexpected("a number"));
        }
        if rest[len..].starts_with('/') {
            let den = rest[len + 1..].bytes().take_while(u8::is_ascii_digit).count();
            len += 1 + den;
        }
        self.pos += len;
        parse_rational_at(&self.text[start..start + len], start)
    }

    fn signed_number(&mut self) -> Result<Rational> {
        if self.eat('-') {
            Ok(-self.number()?)
        } else {
            self.eat('+');
            self.number()
        }
    }

    fn coords(&mut self, expected: usize, what: &str) -> Result<Vec<Rational>> {
        let col = {
            self.skip_ws();
            self.col()
        };
        let mut out = vec![self.signed_number()?];
        while self.eat(',') {
            out.push(self.signed_number()?);
        }
        if out.len() != expected {
            return Err(Error::parse(col, format!("{what} needs {expected} coordinates, found {}", out.len())));
        }
        Ok(out)
    }

    fn starts_number(&mut self) -> bool {
        self.skip_ws();
        self.peek().is_some_and(|c| c.is_ascii_digit())
    }

    fn atom(&mut self) -> Result<ChernVector> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        if rest.starts_with("pt") {
            self.pos += 2;
            return Ok(ChernVector::point(self.ring));
        }
        if rest.starts_with("ch") {
            self.pos += 2;
            self.expect('(')?;
            let ch0 = self.signed_number()?;
            self.expect(';')?;
            let ch1 = DivisorClass::new(self.coords(self.ring.rho(), "ch1")?);
            self.expect(';')?;
            let ch2 = CurveClass::new(self.coords(self.ring.curve_rank(), "ch2")?);
            self.expect(';')?;
            let ch3 = self.signed_number()?;
            self.expect(')')?;
            return Ok(ChernVector::new(ch0, ch1, ch2, ch3));
        }
        if rest.starts_with('O') {
            self.pos += 1;
            let d = if self.eat('(') {
                let d = DivisorClass::new(self.coords(self.ring.rho(), "O(...)")?);
                self.expect(')')?;
                d
            } else {
                self.ring.zero_divisor()
            };
            return ChernVector::line_bundle(self.ring, &d);
        }
        Err(self.unexpected("`O`, `pt` or `ch(`"))
    }

    fn term(&mut self) -> Result<ChernVector> {
        let coeff = if self.starts_number() {
            let c = self.number()?;
            self.eat('*');
            c
        } else {
            Rational::one()
        };
        let mut class = self.atom()?;
        if self.eat('[') {
            self.skip_ws();
            let col = self.col();
            let n = self.signed_number()?;
            if !n.is_integer() {
                return Err(Error::parse(col, "shift must be an integer"));
            }
            self.expect(']')?;
            class = class.shift(if n.to_integer().is_odd() { 1 } else { 0 });
        }
        Ok(class.scale(&coeff))
    }

    fn expr(&mut self) -> Result<ChernVector> {
        let mut total = if self.eat('-') { -&self.term()? } else { self.term()? };
        loop {
            if self.eat('+') {
                total = &total + &self.term()?;
            } else if self.eat('-') {
                total = &total - &self.term()?;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos < self.text.len() {
            return Err(self.unexpected("`+`, `-` or end of input"));
        }
        Ok(total)
    }
}

pub fn parse_class(ring: &CohRing, text: &str) -> Result<ChernVector> {
    Parser { text, pos: 0, ring }.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::ring::preset;

    fn col_of(e: Error) -> usize {
        match e {
            Error::Parse { column, .. } => column,
            other => panic!("not a parse error: {other}"),
        }
    }

    #[test]
    fn atoms() {
        let x = preset("PT_P2").unwrap();
        let r = &x.ring;
        assert_eq!(parse_class(r, "O").unwrap(), ChernVector::structure_sheaf(r));
        assert_eq!(parse_class(r, " pt ").unwrap(), ChernVector::point(r));
        let l = ChernVector::line_bundle(r, &r.divisor(&[1, 0]).unwrap()).unwrap();
        assert_eq!(parse_class(r, "O(1,0)").unwrap(), l);
        assert_eq!(parse_class(r, "O(1,0)[1]").unwrap(), -&l);
        assert_eq!(parse_class(r, "O(1, 0)[-2]").unwrap(), l);
        let c = parse_class(r, "ch(2; 1/2,-1; 0,3; -1/6)").unwrap();
        assert_eq!(c.ch0, rat(2));
        assert_eq!(c.ch1.coords, vec![frac(1, 2), rat(-1)]);
        assert_eq!(c.ch3, frac(-1, 6));
    }

    #[test]
    fn sums_and_coefficients() {
        let x = preset("P3").unwrap();
        let r = &x.ring;
        let o = ChernVector::structure_sheaf(r);
        let o1 = ChernVector::line_bundle(r, &r.divisor(&[1]).unwrap()).unwrap();
        let want = &(&o1.scale(&rat(2)) - &o) + &ChernVector::point(r).scale(&frac(1, 2));
        assert_eq!(parse_class(r, "2*O(1) - O + 1/2 pt").unwrap(), want);
        assert_eq!(parse_class(r, "-O(1) + O(1)").unwrap(), ChernVector::zero(r));
        assert_eq!(parse_class(r, "-pt").unwrap(), -&ChernVector::point(r));
    }

    #[test]
    fn errors_carry_columns() {
        let x = preset("PT_P2").unwrap();
        let r = &x.ring;
        assert_eq!(col_of(parse_class(r, "O(1)").unwrap_err()), 3);
        assert_eq!(col_of(parse_class(r, "O(1,0) * x").unwrap_err()), 8);
        assert_eq!(col_of(parse_class(r, "O(1,0)[1/2]").unwrap_err()), 8);
        assert_eq!(col_of(parse_class(r, "O(1,0").unwrap_err()), 6);
        assert_eq!(col_of(parse_class(r, "").unwrap_err()), 1);
        assert_eq!(col_of(parse_class(r, "O(1,0) O").unwrap_err()), 8);
        assert_eq!(col_of(parse_class(r, "3/0 O").unwrap_err()), 3);
    }
}
