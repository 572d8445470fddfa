//! Recursive-descent parser for the polynomial text format:
//!
//! ```text
//! expr    := term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := coeff | var ('^' int)?
//! coeff   := decimal | 'i' | '(' decimal (('+'|'-') decimal)? 'i'? ')'
//! int     := '-'? [0-9]+
//! decimal := [0-9]+ ('.' [0-9]+)?
//! ```
//!
//! Whitespace is insignificant. A single leading sign on the whole expression
//! is also accepted. Juxtaposition without `*` is rejected.

use num_complex::Complex64;

use super::LaurentPolynomial;
use crate::error::{Error, Result};

/// Parses `text` as a Laurent polynomial in the declared `variables`.
pub fn parse<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<LaurentPolynomial> {
    check_variables(variables)?;
    let mut p = Parser {
        src: text,
        pos: 0,
        vars: variables.iter().map(|s| s.as_ref()).collect(),
    };
    let terms = p.expr()?;
    LaurentPolynomial::new(variables.len(), terms)
}

/// Validates a variable declaration: non-empty, identifiers, distinct, and
/// never `i` (reserved for the imaginary unit).
pub fn check_variables<S: AsRef<str>>(variables: &[S]) -> Result<()> {
    if variables.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one variable is required".into(),
        ));
    }
    for (k, v) in variables.iter().enumerate() {
        let v = v.as_ref();
        let mut chars = v.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "`{v}` is not a valid variable name"
            )));
        }
        if v == "i" {
            return Err(Error::InvalidArgument(
                "`i` denotes the imaginary unit and cannot be a variable".into(),
            ));
        }
        if variables[..k].iter().any(|w| w.as_ref() == v) {
            return Err(Error::InvalidArgument(format!(
                "variable `{v}` declared twice"
            )));
        }
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: Vec<&'a str>,
}

type Term = (Complex64, Vec<i64>);

impl<'a> Parser<'a> {
    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1.0
            }
            Some(b'+') => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        };
        loop {
            let (c, e) = self.term()?;
            terms.push((c * sign, e));
            self.skip_ws();
            match self.peek() {
                Some(b'+') => sign = 1.0,
                Some(b'-') => sign = -1.0,
                None => break,
                Some(_) => return Err(self.error("expected `+`, `-`, `*` or end of input")),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        let mut coeff = Complex64::new(1.0, 0.0);
        let mut exps = vec![0i64; self.vars.len()];
        loop {
            self.factor(&mut coeff, &mut exps)?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((coeff, exps));
            }
        }
    }

    fn factor(&mut self, coeff: &mut Complex64, exps: &mut [i64]) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                *coeff *= self.decimal()?;
                Ok(())
            }
            Some(b'(') => {
                *coeff *= self.paren_coefficient()?;
                Ok(())
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = self.pos;
                let name = self.identifier();
                if name == "i" {
                    *coeff *= Complex64::new(0.0, 1.0);
                    return Ok(());
                }
                let var = self.vars.iter().position(|v| *v == name).ok_or_else(|| {
                    Error::UnknownVariable {
                        name: name.to_string(),
                        offset: start,
                    }
                })?;
                self.skip_ws();
                let power = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.integer()?
                } else {
                    1
                };
                exps[var] = exps[var].checked_add(power).ok_or(Error::Overflow)?;
                Ok(())
            }
            Some(_) => Err(self.error("expected a coefficient or a variable")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn paren_coefficient(&mut self) -> Result<Complex64> {
        self.pos += 1; // '('
        self.skip_ws();
        let first = self.decimal()?;
        self.skip_ws();
        let second = match self.peek() {
            Some(s @ (b'+' | b'-')) => {
                self.pos += 1;
                self.skip_ws();
                let v = self.decimal()?;
                Some(if s == b'-' { -v } else { v })
            }
            _ => None,
        };
        self.skip_ws();
        let imaginary = if self.peek() == Some(b'i') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        if self.peek() != Some(b')') {
            return Err(self.error("expected `)`"));
        }
        self.pos += 1;
        Ok(match (second, imaginary) {
            (Some(b), true) => Complex64::new(first, b),
            (Some(b), false) => Complex64::new(first + b, 0.0),
            (None, true) => Complex64::new(0.0, first),
            (None, false) => Complex64::new(first, 0.0),
        })
    }

    fn decimal(&mut self) -> Result<f64> {
        let start = self.pos;
        if !self.digits() {
            return Err(self.error("expected a decimal number"));
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            if !self.digits() {
                return Err(self.error("expected digits after `.`"));
            }
        }
        self.src[start..self.pos]
            .parse::<f64>()
            .map_err(|_| Error::Syntax {
                offset: start,
                message: "malformed decimal".into(),
            })
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        if !self.digits() {
            return Err(self.error("expected an integer exponent"));
        }
        self.src[start..self.pos]
            .parse::<i64>()
            .map_err(|_| Error::Syntax {
                offset: start,
                message: "exponent out of range".into(),
            })
    }

    fn digits(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn identifier(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }
}
