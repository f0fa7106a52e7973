//! Parser for the textual cyclotomic form.
//!
//! Grammar: `expr := ['-'|'+'] term (('+'|'-') term)*`,
//! `term := factor ('*' factor)*`,
//! `factor := int ['/' int] | 'z(' int ')' ['^' ['-'] int] | 'i' | '(' expr ')'`.

use super::{CycNum, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

pub(crate) fn parse_cyc(s: &str) -> Result<CycNum> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn expr(&mut self) -> Result<CycNum> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.try_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.try_add(&-self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycNum> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.try_mul(&self.factor()?)?;
            } else if self.eat(b'/') {
                acc = acc.try_div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(b'z') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return Err(self.err("expected `(` after z"));
                }
                let n: u32 = self
                    .int()?
                    .parse()
                    .map_err(|_| self.err("conductor out of range"))?;
                if n == 0 || n as u64 > super::MAX_CONDUCTOR {
                    return Err(self.err("conductor out of range"));
                }
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                let mut k: i64 = 1;
                if self.eat(b'^') {
                    let neg = self.eat(b'-');
                    k = self
                        .int()?
                        .parse()
                        .map_err(|_| self.err("exponent out of range"))?;
                    if neg {
                        k = -k;
                    }
                }
                Ok(CycNum::zeta_pow(n, k))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(CycNum::i())
            }
            Some(c) if c.is_ascii_digit() => {
                let text = self.int()?;
                let r: Rational = text.parse().map_err(|_| self.err("bad integer"))?;
                Ok(CycNum::from_rational(r))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "0",
            "-3/4",
            "z(4)",
            "1/2 - 1/2*z(4)",
            "z(8) - z(8)^3",
            "-z(5)^2 + 3*z(5)^3",
        ] {
            let v = parse_cyc(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn non_canonical_input() {
        assert_eq!(parse_cyc("z(6)^2").unwrap(), CycNum::zeta(3));
        assert_eq!(parse_cyc("i*i").unwrap(), CycNum::from_int(-1));
        assert_eq!(parse_cyc("(1 + z(3))*2").unwrap().to_string(), "-2*z(3)^2");
        assert_eq!(parse_cyc("z(8)^-1").unwrap(), CycNum::zeta_pow(8, 7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_cyc("z(").is_err());
        assert!(parse_cyc("1 +").is_err());
        assert!(parse_cyc("q").is_err());
        assert!(parse_cyc("1/0").is_err());
    }
}
