use num_bigint::BigInt;
use num_traits::One;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Parses an arithmetic expression over any [`Scalar`] ring.
///
/// Grammar: `+ - * / ^` with the usual precedence, unary minus, parentheses,
/// decimal or integer literals, and identifiers handed to `resolve`.
/// Division requires a unit divisor; `^` takes a nonnegative integer.
pub fn parse_expr<S, F>(src: &str, resolve: F) -> Result<S>
where
    S: Scalar,
    F: FnMut(&str) -> Result<S>,
{
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        resolve,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a, F> {
    src: &'a [u8],
    pos: usize,
    resolve: F,
}

impl<S, F> Parser<'_, F>
where
    S: Scalar,
    F: FnMut(&str) -> Result<S>,
{
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<S> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<S> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = acc * rhs;
            } else {
                let inv = rhs.unit_inverse().ok_or(Error::Syntax {
                    pos: at,
                    msg: "division by a non-unit".into(),
                })?;
                acc = acc * inv;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<S> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<S> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.err("expected exponent"))?;
            let mut acc = S::one();
            for _ in 0..k {
                acc = acc * base.clone();
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<S> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let q = literal(text).ok_or(Error::Syntax {
                    pos: start,
                    msg: format!("bad number `{text}`"),
                })?;
                Ok(S::from_rational(&q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                (self.resolve)(name).map_err(|e| match e {
                    Error::Syntax { msg, .. } => Error::Syntax { pos: start, msg },
                    other => other,
                })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn literal(text: &str) -> Option<Rational> {
    match text.split_once('.') {
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((i, f)) => {
            if text.matches('.').count() > 1 || (i.is_empty() && f.is_empty()) {
                return None;
            }
            let n: BigInt = format!("{i}{f}").parse().ok()?;
            let mut d = BigInt::one();
            for _ in 0..f.len() {
                d *= 10;
            }
            Some(Rational::new(n, d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Result<Rational> {
        parse_expr(s, |n| {
            Err(Error::Syntax {
                pos: 0,
                msg: format!("no `{n}`"),
            })
        })
    }

    #[test]
    fn precedence() {
        assert_eq!(q("1 + 2*3").unwrap(), Rational::from_integer(7.into()));
        assert_eq!(q("-2^2").unwrap(), Rational::from_integer((-4).into()));
        assert_eq!(q("(1+1)/4").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(q("0.5*4").unwrap(), Rational::from_integer(2.into()));
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(q("1 +"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(q("1/0"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(q("x"), Err(Error::Syntax { pos: 0, .. })));
    }
}
