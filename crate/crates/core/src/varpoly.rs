//! Sparse integer polynomials in named variables, the target ring for the
//! point-count and Hodge-Deligne measures.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::measure::Ring;

type VarMonomial = BTreeMap<String, u32>;

/// Element of `Z[x_1, ..., x_n]` for arbitrary variable names.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct VarPoly {
    terms: BTreeMap<VarMonomial, BigInt>,
}

impl VarPoly {
    pub fn constant(c: impl Into<BigInt>) -> VarPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(VarMonomial::new(), c);
        }
        VarPoly { terms }
    }

    pub fn var(name: &str) -> VarPoly {
        let mut m = VarMonomial::new();
        m.insert(name.to_string(), 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        VarPoly { terms }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&VarMonomial::new())
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of `var^k` when the polynomial is univariate in `var`.
    pub fn univariate_coeff(&self, var: &str, k: u32) -> BigInt {
        let mut m = VarMonomial::new();
        if k > 0 {
            m.insert(var.to_string(), k);
        }
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn pow(&self, mut n: u32) -> VarPoly {
        let mut base = self.clone();
        let mut acc = VarPoly::constant(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.clone().mul(&base);
            n >>= 1;
        }
        acc
    }

    fn insert_add(terms: &mut BTreeMap<VarMonomial, BigInt>, key: VarMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            terms.remove(&key);
        }
    }
}

impl Ring for VarPoly {
    fn zero() -> Self {
        VarPoly::default()
    }

    fn one() -> Self {
        VarPoly::constant(1)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Self::insert_add(&mut terms, m.clone(), c.clone());
        }
        VarPoly { terms }
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        VarPoly { terms }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (v, e) in m2 {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                Self::insert_add(&mut terms, m, c1 * c2);
            }
        }
        VarPoly { terms }
    }

    fn from_bigint(c: &BigInt) -> Self {
        VarPoly::constant(c.clone())
    }
}

impl fmt::Display for VarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Print in descending total degree, breaking ties lexicographically
        // by variable name, so e.g. "u*v - u - v + 1".
        let mut ordered: Vec<(&VarMonomial, &BigInt)> = self.terms.iter().collect();
        ordered.sort_by(|(m1, _), (m2, _)| {
            let d1: u32 = m1.values().sum();
            let d2: u32 = m2.values().sum();
            d2.cmp(&d1).then_with(|| m1.cmp(m2))
        });
        let mut first = true;
        for (m, c) in ordered {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_empty() {
                factors.push(abs.to_string());
            }
            for (v, e) in m {
                factors.push(if *e == 1 { v.clone() } else { format!("{v}^{e}") });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for VarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("polynomial parse error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

/// Parses `+ - * ^` expressions over integer literals and identifiers,
/// e.g. `u*v + 1` or `q^2 + q + 1`.
pub fn parse_varpoly(input: &str) -> Result<VarPoly, PolyParseError> {
    let mut p = Parser { input: input.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyParseError {
        PolyParseError { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<VarPoly, PolyParseError> {
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

    fn term(&mut self) -> Result<VarPoly, PolyParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<VarPoly, PolyParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            let n: u32 = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            Ok(base.pow(n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<VarPoly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(VarPoly::constant(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                Ok(VarPoly::var(name))
            }
            _ => Err(self.err("expected integer, variable, or '('")),
        }
    }

    fn integer(&mut self) -> Result<i64, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_roundtrip() {
        for s in ["u*v + 1", "q^2 + q + 1", "0", "-3*u^2*v + 2", "1"] {
            let p = parse_varpoly(s).unwrap();
            assert_eq!(p.to_string(), s, "canonical form of {s}");
            assert_eq!(parse_varpoly(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn arithmetic() {
        let q = VarPoly::var("q");
        let p = q.add(&VarPoly::constant(1));
        assert_eq!(p.mul(&p).to_string(), "q^2 + 2*q + 1");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_varpoly("q +").is_err());
        assert!(parse_varpoly("(q").is_err());
        assert!(parse_varpoly("q^x").is_err());
    }
}
