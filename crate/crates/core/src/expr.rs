//! Class-expression parser: the textual surface of the CLI. Extends the
//! polynomial grammar (`T`, `L`, integers, `+ - * ^`, parentheses,
//! `P(k)`) with atom identifiers and the calls `blowup(X, Y, c)`,
//! `pbundle(Y, r)`, `D(x)`, `pi1(x)`, `pi2(x)`. Canonical printing is the
//! `Display` of [`MotivicClass`] and is a fixed point of the parser.

use crate::measure::Ring;
use crate::motivic::{blowup_class, proj_bundle_class, AtomTable, ClassError, MotivicClass};
use crate::tlpoly::TLPoly;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// Parses a class expression against an atom table.
pub fn parse_class(input: &str, table: &AtomTable) -> Result<MotivicClass, ExprError> {
    let mut p = Parser { input: input.as_bytes(), pos: 0, table };
    let class = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(class)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    table: &'a AtomTable,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ExprError {
        ExprError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<MotivicClass, ExprError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            self.term()?.neg()
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MotivicClass, ExprError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MotivicClass, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n: u32 = self
                .integer()?
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            let mut acc = MotivicClass::one();
            for _ in 0..n {
                acc = acc.mul(&base);
            }
            Ok(acc)
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MotivicClass, ExprError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(MotivicClass::from_poly(TLPoly::constant(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                self.apply_ident(name)
            }
            _ => Err(self.err("expected integer, name, or '('")),
        }
    }

    fn apply_ident(&mut self, name: String) -> Result<MotivicClass, ExprError> {
        match name.as_str() {
            "T" => return Ok(MotivicClass::from_poly(TLPoly::tau())),
            "L" => return Ok(MotivicClass::from_poly(TLPoly::lef())),
            "P" => {
                self.expect(b'(')?;
                let k: u32 = self
                    .integer()?
                    .try_into()
                    .map_err(|_| self.err("P(k) needs k >= 0"))?;
                self.expect(b')')?;
                return Ok(MotivicClass::from_poly(TLPoly::pn(k).into_poly()));
            }
            "D" | "pi1" | "pi2" => {
                self.expect(b'(')?;
                let inner = self.expr()?;
                self.expect(b')')?;
                return Ok(match name.as_str() {
                    "D" => inner.involute(),
                    "pi1" => inner.pi1(),
                    _ => inner.pi2(),
                });
            }
            "blowup" => {
                self.expect(b'(')?;
                let x = self.expr()?;
                self.expect(b',')?;
                let y = self.expr()?;
                self.expect(b',')?;
                let c: u32 = self
                    .integer()?
                    .try_into()
                    .map_err(|_| self.err("codimension out of range"))?;
                self.expect(b')')?;
                return Ok(blowup_class(&x, &y, c)?);
            }
            "pbundle" => {
                self.expect(b'(')?;
                let y = self.expr()?;
                self.expect(b',')?;
                let r: u32 = self
                    .integer()?
                    .try_into()
                    .map_err(|_| self.err("rank out of range"))?;
                self.expect(b')')?;
                return Ok(proj_bundle_class(&y, r)?);
            }
            _ => {}
        }
        match self.table.get(&name) {
            Some(atom) => Ok(MotivicClass::atom(&atom.name, atom.dim)),
            None => Err(ExprError::UnknownAtom(name)),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.input[start..self.pos]).into_owned()
    }

    fn integer(&mut self) -> Result<i64, ExprError> {
        self.skip_ws();
        let neg = if self.input.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let n: i64 = std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -n } else { n })
    }
}
