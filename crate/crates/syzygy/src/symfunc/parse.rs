//! Text syntax: `3*s[2,1] - 1/2*s[1,1,1]`, `e2`, `h3`, `p2`, products `*`,
//! plethysm `@` (binds tighter than `*`), parentheses.

use num_traits::Zero;

use super::SymFunc;
use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::{Q, Z};

pub fn parse_symfunc(s: &str, cutoff: usize) -> Result<SymFunc> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, cutoff };
    let f = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    cutoff: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
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

    fn expr(&mut self) -> Result<SymFunc> {
        let mut neg = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.scale(&-Q::from_integer(1.into()));
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SymFunc> {
        let mut acc = self.pleth()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.pleth()?;
            acc = acc.mul(&rhs, self.cutoff);
        }
        Ok(acc)
    }

    fn pleth(&mut self) -> Result<SymFunc> {
        let f = self.atom()?;
        if self.peek() == Some(b'@') {
            self.pos += 1;
            let g = self.pleth()?;
            return f.plethysm(&g, self.cutoff);
        }
        Ok(f)
    }

    fn number(&mut self) -> Result<Z> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse::<Z>().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn atom(&mut self) -> Result<SymFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut v = Q::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    v /= Q::from_integer(d);
                }
                Ok(SymFunc::constant(v))
            }
            Some(b's') => {
                self.pos += 1;
                self.ws();
                let start = self.pos;
                let end = self.s[start..]
                    .iter()
                    .position(|&c| c == b']')
                    .ok_or_else(|| self.err("unterminated partition"))?;
                let text = std::str::from_utf8(&self.s[start..=start + end]).map_err(|_| self.err("bad utf8"))?;
                self.pos = start + end + 1;
                Ok(SymFunc::schur(text.parse::<Partition>()?))
            }
            Some(c @ (b'e' | b'h' | b'p')) => {
                self.pos += 1;
                let n: usize = self.number()?.try_into().map_err(|_| self.err("index too large"))?;
                Ok(match c {
                    b'e' => SymFunc::elementary(n),
                    b'h' => SymFunc::complete(n),
                    _ => SymFunc::power(n),
                })
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        assert!(parse_symfunc("s[2,1] +", 10).is_err());
        assert!(parse_symfunc("x", 10).is_err());
        assert!(parse_symfunc("s[1,2]", 10).is_err());
        let f = parse_symfunc("(h1 - e1)*s[3^2]", 10).unwrap();
        assert!(f.is_zero());
        assert_eq!(parse_symfunc("s[1]*s[1]", 10).unwrap().to_string(), "s[2] + s[1,1]");
    }
}
