//! Product expressions such as `E1*E2*E1` or `(E1-1)*(E2-1)`.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' digits)?
//! atom   := 'E' digits | 'D' digits | 'Id' | 'q' | 't' | digits | '(' expr ')'
//! ```
//! `E<i>` is the first-kind generator, `D<i>` the second-kind web, integers
//! and `q`, `t = q^{1/4}` stand for multiples of the identity web.

use super::suite::second_generator_with;
use super::{Spider, WebCombo};
use crate::error::{Error, Result};
use crate::exactmath::LaurentPoly;
use crate::webcore::Web;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
    sp: &'a mut Spider,
}

fn perr(pos: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("offset {pos}"),
        message: message.into(),
    }
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| perr(start, "expected a number"))
    }

    fn scalar(&self, c: LaurentPoly) -> Result<WebCombo> {
        Ok(WebCombo::identity(self.n)?.scale(&c))
    }

    fn expr(&mut self) -> Result<WebCombo> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<WebCombo> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.sp.multiply(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WebCombo> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.scale(&LaurentPoly::from_int(-1)));
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.digits()?;
            let mut acc = WebCombo::identity(self.n)?;
            for _ in 0..k {
                acc = self.sp.multiply(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<WebCombo> {
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(perr(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'E') => {
                self.pos += 1;
                let i = self.digits()?;
                Ok(WebCombo::from_web(&Web::generator_e1(self.n, i)?))
            }
            Some(b'D') => {
                self.pos += 1;
                let i = self.digits()?;
                Ok(WebCombo::from_web(&second_generator_with(self.sp, self.n, i)?))
            }
            Some(b'I') if self.s[self.pos..].starts_with(b"Id") => {
                self.pos += 2;
                WebCombo::identity(self.n)
            }
            Some(b'q') => {
                self.pos += 1;
                self.scalar(LaurentPoly::q())
            }
            Some(b't') => {
                self.pos += 1;
                self.scalar(LaurentPoly::t_pow(1))
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.digits()?;
                let k = i64::try_from(k).map_err(|_| perr(at, "constant too large"))?;
                self.scalar(LaurentPoly::from_int(k))
            }
            Some(c) => Err(perr(self.pos, format!("unexpected '{}'", c as char))),
            None => Err(perr(self.pos, "unexpected end of expression")),
        }
    }
}

/// Parses and reduces an expression in the web algebra on `n` strands.
pub fn parse_expression(src: &str, n: usize, sp: &mut Spider) -> Result<WebCombo> {
    let mut p = Parser {
        s: src.as_bytes(),
        pos: 0,
        n,
        sp,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(perr(p.pos, "trailing input"));
    }
    Ok(out)
}
