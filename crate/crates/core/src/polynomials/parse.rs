//! Parser for polynomials such as `X1^2*X2 - 1/2*z(4)*X3^3`.
//!
//! Variables are `X<k>` or `Y<k>` (1-based). Coefficients use the cyclotomic
//! text form; parentheses, `+`, `-`, `*`, `/` by constants and `^` with a
//! nonnegative integer exponent are accepted.

use super::MPoly;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
}

/// Parses a polynomial in `nvars` variables.
pub fn parse_poly(s: &str, nvars: usize) -> Result<MPoly> {
    let mut p = Parser {
        s: s.as_bytes(),
        pos: 0,
        nvars,
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

    fn int(&mut self) -> Result<u64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn constant(&self, c: CycNum) -> MPoly {
        MPoly::constant(self.nvars, c)
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = if self.eat(b'-') {
            -&self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let d = self.power()?;
                if d.num_terms() != 1 || d.degree() != Some(0) {
                    return Err(self.err("division by a non-constant"));
                }
                let c = d.coeff(&super::Mono(vec![0; self.nvars]));
                acc = acc.scale(&c.try_inv()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let e = self.int()?;
            if neg {
                // only constants may be inverted
                if base.num_terms() != 1 || base.degree() != Some(0) {
                    return Err(self.err("negative power of a non-constant"));
                }
                let c = base.coeff(&super::Mono(vec![0; self.nvars]));
                return Ok(self.constant(c.try_inv()?.pow(e as i64)));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(b'X') | Some(b'Y') => {
                self.pos += 1;
                let k = self.int()? as usize;
                if k == 0 || k > self.nvars {
                    return Err(self.err("variable index out of range"));
                }
                Ok(MPoly::var(self.nvars, k - 1))
            }
            Some(b'z') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return Err(self.err("expected `(` after z"));
                }
                let n = self.int()?;
                if n == 0 || n > crate::cyclotomic::MAX_CONDUCTOR {
                    return Err(self.err("conductor out of range"));
                }
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(self.constant(CycNum::zeta(n as u32)))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(self.constant(CycNum::i()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let n = i64::try_from(n).map_err(|_| self.err("integer out of range"))?;
                Ok(self.constant(CycNum::from_int(n)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}
