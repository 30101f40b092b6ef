//! A small infix reader: `x1^2 + 3/2*x4*x5 - (x2 + x3)^2`.

use num::{BigInt, One};

use super::SparsePoly;
use crate::rational::Q;
use crate::{Error, Result};

impl SparsePoly {
    pub fn parse<S: AsRef<str>>(vars: &[S], input: &str) -> Result<SparsePoly> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut parser = Parser {
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            vars: &vars,
        };
        let p = parser.expr()?;
        if parser.pos != parser.chars.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        let s: String = self.chars.iter().collect();
        Error::Parse(format!("{what} at offset {} in `{s}`", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = SparsePoly::zero(self.vars);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -Q::one()
            }
            Some('+') => {
                self.pos += 1;
                Q::one()
            }
            _ => Q::one(),
        };
        loop {
            let t = self.term()?;
            acc = &acc + &t.scale(&sign);
            match self.peek() {
                Some('+') => sign = Q::one(),
                Some('-') => sign = -Q::one(),
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            let k = u32::try_from(k).map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Q::from_integer(n);
                // `a/b` binds tighter than `*`
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    value /= Q::from_integer(d);
                }
                Ok(SparsePoly::constant(self.vars, value))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if !self.vars.contains(&name) {
                    self.pos = start;
                    return Err(self.error(&format!("unknown variable `{name}`")));
                }
                Ok(SparsePoly::var(self.vars, &name))
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("bad integer"))
    }
}
