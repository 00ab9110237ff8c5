//! Recursive-descent parser for the polynomial text syntax used by every
//! file format and CLI surface: integer and a/b rational literals, variables
//! `[A-Za-z][A-Za-z0-9_]*`, operators `+ - * ^` and parentheses. `^` binds
//! tighter than `*`, which binds tighter than `+` and `-`.

use num_bigint::BigInt;

use super::{ExactAlgError, MultiPoly, Poly, Rat};

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            input: text.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> ExactAlgError {
        ExactAlgError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ExactAlgError> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            _ => Err(self.err(format!("expected `{}`", c as char))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExactAlgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn number(&mut self) -> Result<Rat, ExactAlgError> {
        let numer = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.integer()?;
            if denom == BigInt::from(0) {
                return Err(self.err("zero denominator in rational literal"));
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .to_string()
    }

    fn atom(&mut self) -> Result<MultiPoly, ExactAlgError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                // negation binds looser than `^`: -x^2 is -(x^2)
                Ok(-&self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(MultiPoly::constant(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                Ok(MultiPoly::var(&name))
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, ExactAlgError> {
        let mut base = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            base = base.pow(e);
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<MultiPoly, ExactAlgError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<MultiPoly, ExactAlgError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

pub fn parse_multipoly(text: &str) -> Result<MultiPoly, ExactAlgError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Parses a univariate polynomial; the only variable allowed is `x`.
pub fn parse_poly(text: &str) -> Result<Poly, ExactAlgError> {
    let mp = parse_multipoly(text)?;
    for v in mp.variables() {
        if v != "x" {
            return Err(ExactAlgError::Parse {
                pos: 0,
                msg: format!("variable `{}` not allowed in a univariate polynomial in x", v),
            });
        }
    }
    let mut coeffs = Vec::new();
    for (exps, c) in mp.sorted_terms() {
        let k = exps.first().copied().unwrap_or(0) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rat::from_integer(BigInt::from(0)));
        }
        coeffs[k] = c;
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Parses a single rational literal, with optional leading minus.
pub fn parse_rational(text: &str) -> Result<Rat, ExactAlgError> {
    let mut p = Parser::new(text);
    let neg = p.peek() == Some(b'-');
    if neg {
        p.pos += 1;
    }
    let r = p.number()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(if neg { -r } else { r })
}
