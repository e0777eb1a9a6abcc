//! Infix syntax for rational functions: integers, `t`, `s`, `p0`, `p1`, …,
//! `+ - * / ^` and parentheses. The output of `RatFunc`'s `Display` parses back.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{param, VAR_S, VAR_T};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::ParseError {
            col: self.offset + self.pos,
            msg: msg.into(),
        })
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

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                match acc.div(&rhs) {
                    Some(q) => q,
                    None => {
                        self.pos = at;
                        return self.err("division by zero");
                    }
                }
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let neg = self.src.get(self.pos) == Some(&b'-');
            if neg {
                self.pos += 1;
            }
            let Some(e) = self.integer() else {
                return self.err("expected an integer exponent");
            };
            let e: i64 = match i64::try_from(&e) {
                Ok(e) if e <= 10_000 => e,
                _ => return self.err("exponent too large"),
            };
            return match base.pow(if neg { -e } else { e }) {
                Some(p) => Ok(p),
                None => self.err("zero to a negative power"),
            };
        }
        Ok(base)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos]).ok()?.parse().ok()
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::var(VAR_T))
            }
            Some(b's') => {
                self.pos += 1;
                Ok(RatFunc::var(VAR_S))
            }
            Some(b'p') => {
                self.pos += 1;
                match self.integer().and_then(|i| usize::try_from(i).ok()) {
                    Some(i) if i < 1000 => Ok(RatFunc::var(param(i))),
                    _ => self.err("expected a parameter index"),
                }
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse `src`. Error columns are 0-based character offsets, shifted by `offset`.
pub fn parse_ratfunc_at(src: &str, offset: usize) -> Result<RatFunc> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        offset,
    };
    let x = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(x)
}

pub fn parse_ratfunc(src: &str) -> Result<RatFunc> {
    parse_ratfunc_at(src, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn round_trip() {
        for s in ["(t+2)/(t-3)", "1/2*s+1/2", "-3/4*t^2+p0", "t^-1", "(t^2-2*t)/(p1+1)", "7/3"] {
            let x = parse_ratfunc(s).unwrap();
            assert_eq!(parse_ratfunc(&x.to_string()).unwrap(), x, "{s}");
        }
        assert_eq!(parse_ratfunc("1/2").unwrap(), RatFunc::constant(ratio(1, 2)));
    }

    #[test]
    fn errors_have_columns() {
        assert!(matches!(parse_ratfunc("t+"), Err(Error::ParseError { col: 2, .. })));
        assert!(matches!(parse_ratfunc("1/0"), Err(Error::ParseError { col: 2, .. })));
        assert!(matches!(parse_ratfunc("(t"), Err(Error::ParseError { col: 2, .. })));
    }
}
