//! Text form: terms in ascending exponent order, e.g.
//! `1/4*u^-1 + 1/2 + 1/4*u` or `t^{-1/2} - t^{1/2}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PolyError, SymPoly};
use crate::rational::Rational;

impl SymPoly {
    /// Renders with the given variable letter.
    pub fn to_text(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = monomial_text(var, e);
            match mono {
                None => out.push_str(&magnitude.to_string()),
                Some(m) if magnitude.is_one() => out.push_str(&m),
                Some(m) => {
                    out.push_str(&magnitude.to_string());
                    out.push('*');
                    out.push_str(&m);
                }
            }
        }
        out
    }

    /// Like [`SymPoly::to_text`] with all spaces removed, for key=value
    /// output.
    pub fn to_compact_text(&self, var: char) -> String {
        self.to_text(var).replace(' ', "")
    }

    /// Parses the text form. Any single ASCII letter may serve as the
    /// variable, but only one letter per polynomial.
    pub fn parse(input: &str) -> Result<SymPoly, PolyError> {
        Parser::new(input).parse()
    }
}

fn monomial_text(var: char, half_steps: i64) -> Option<String> {
    match half_steps {
        0 => None,
        2 => Some(var.to_string()),
        e if e.is_even() => Some(format!("{var}^{}", e / 2)),
        e => Some(format!("{var}^{{{e}/2}}")),
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text('t'))
    }
}

impl FromStr for SymPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SymPoly::parse(s)
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
    var: Option<char>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            chars: input.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            var: None,
        }
    }

    fn err(&self, reason: impl Into<String>) -> PolyError {
        PolyError::Parse {
            input: self.input.to_string(),
            reason: reason.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse(mut self) -> Result<SymPoly, PolyError> {
        if self.chars.is_empty() {
            return Err(self.err("empty input"));
        }
        let mut terms = Vec::new();
        let mut first = true;
        while self.peek().is_some() {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.err(format!("expected '+' or '-' at position {}", self.pos)));
            };
            first = false;
            let (e, c) = self.term()?;
            terms.push((e, if negative { -c } else { c }));
        }
        Ok(SymPoly::from_half_steps(terms))
    }

    fn term(&mut self) -> Result<(i64, Rational), PolyError> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.coefficient()?),
            _ => None,
        };
        if coeff.is_some() && !self.eat('*') && !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return Ok((0, coeff.unwrap()));
        }
        let e = self.monomial()?;
        Ok((e, coeff.unwrap_or_else(Rational::one)))
    }

    fn digits(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected digits at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn coefficient(&mut self) -> Result<Rational, PolyError> {
        let num = self.digits()?;
        let den = if self.eat('/') { self.digits()? } else { BigInt::one() };
        if den.is_zero() {
            return Err(self.err("zero denominator"));
        }
        Ok(Rational::new(num, den))
    }

    fn monomial(&mut self) -> Result<i64, PolyError> {
        let v = match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => c,
            _ => return Err(self.err(format!("expected a variable at position {}", self.pos))),
        };
        self.pos += 1;
        match self.var {
            Some(w) if w != v => return Err(self.err(format!("mixed variables '{w}' and '{v}'"))),
            _ => self.var = Some(v),
        }
        if !self.eat('^') {
            return Ok(2);
        }
        let braced = self.eat('{');
        let negative = self.eat('-');
        let n = self.small_int()?;
        let half_steps = if braced && self.eat('/') {
            let d = self.small_int()?;
            match d {
                1 => 2 * n,
                2 => n,
                _ => return Err(self.err("exponent denominator must be 1 or 2")),
            }
        } else {
            2 * n
        };
        if braced && !self.eat('}') {
            return Err(self.err("unclosed '{' in exponent"));
        }
        Ok(if negative { -half_steps } else { half_steps })
    }

    fn small_int(&mut self) -> Result<i64, PolyError> {
        let n = self.digits()?;
        i64::try_from(n).map_err(|_| self.err("exponent out of range"))
    }
}
