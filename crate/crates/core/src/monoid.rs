//! Sparse monoid rings `Z[M]` over a free commutative monoid of basis
//! symbols, the target of the irrationality measures.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::measure::Ring;
use crate::varpoly::VarPoly;

/// A basis symbol of a commutative monoid. `combine` is the monoid law.
pub trait MonoidSym: Clone + Ord + Eq + fmt::Display {
    fn unit() -> Self;
    fn combine(&self, other: &Self) -> Self;
}

/// The multiplicative monoid of positive integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct NatSym(pub BigInt);

impl NatSym {
    pub fn new(n: impl Into<BigInt>) -> NatSym {
        let n = n.into();
        assert!(n.is_positive(), "NatSym requires a positive integer");
        NatSym(n)
    }
}

impl MonoidSym for NatSym {
    fn unit() -> Self {
        NatSym(BigInt::one())
    }

    fn combine(&self, other: &Self) -> Self {
        NatSym(&self.0 * &other.0)
    }
}

impl fmt::Display for NatSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The monoid of integer polynomials with constant term one, under
/// multiplication. Symbols are stored in canonical sparse form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PolySym(VarPoly);

impl PolySym {
    pub fn new(p: VarPoly) -> Option<PolySym> {
        if p.constant_term().is_one() {
            Some(PolySym(p))
        } else {
            None
        }
    }

    pub fn as_poly(&self) -> &VarPoly {
        &self.0
    }
}

impl MonoidSym for PolySym {
    fn unit() -> Self {
        PolySym(VarPoly::constant(1))
    }

    fn combine(&self, other: &Self) -> Self {
        PolySym(self.0.mul(&other.0))
    }
}

impl fmt::Display for PolySym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Free commutative monoid on named generators; basis of the birational and
/// stably-birational quotient rings, where a generator names an equivalence
/// class supplied with the atom table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct FreeSym(pub BTreeMap<String, u32>);

impl FreeSym {
    pub fn generator(name: &str) -> FreeSym {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), 1);
        FreeSym(m)
    }
}

impl MonoidSym for FreeSym {
    fn unit() -> Self {
        FreeSym::default()
    }

    fn combine(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, v) in &other.0 {
            *m.entry(k.clone()).or_insert(0) += v;
        }
        FreeSym(m)
    }
}

impl fmt::Display for FreeSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, v)| if *v == 1 { k.clone() } else { format!("{k}^{v}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Finite integer combination of monoid basis symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonoidRingElem<S: MonoidSym> {
    terms: BTreeMap<S, BigInt>,
}

impl<S: MonoidSym> MonoidRingElem<S> {
    pub fn basis(sym: S) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(sym, BigInt::one());
        MonoidRingElem { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&S, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Image under the monoid-collapse homomorphism sending every basis
    /// symbol through `f` into a commutative ring.
    pub fn collapse<R: Ring>(&self, f: impl Fn(&S) -> R) -> R {
        let mut acc = R::zero();
        for (s, c) in &self.terms {
            acc = acc.add(&f(s).mul(&R::from_bigint(c)));
        }
        acc
    }

    fn insert_add(terms: &mut BTreeMap<S, BigInt>, key: S, c: BigInt) {
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

impl<S: MonoidSym> Ring for MonoidRingElem<S> {
    fn zero() -> Self {
        MonoidRingElem { terms: BTreeMap::new() }
    }

    fn one() -> Self {
        Self::basis(S::unit())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (s, c) in &rhs.terms {
            Self::insert_add(&mut terms, s.clone(), c.clone());
        }
        MonoidRingElem { terms }
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(s, c)| (s.clone(), -c)).collect();
        MonoidRingElem { terms }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                Self::insert_add(&mut terms, s1.combine(s2), c1 * c2);
            }
        }
        MonoidRingElem { terms }
    }

    fn from_bigint(c: &BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(S::unit(), c.clone());
        }
        MonoidRingElem { terms }
    }
}

impl<S: MonoidSym> fmt::Display for MonoidRingElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.terms {
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
            if abs.is_one() {
                write!(f, "[{s}]")?;
            } else {
                write!(f, "{abs}*[{s}]")?;
            }
        }
        Ok(())
    }
}

impl<S: MonoidSym> fmt::Debug for MonoidRingElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub type NatMonoidElem = MonoidRingElem<NatSym>;
pub type PolyMonoidElem = MonoidRingElem<PolySym>;
pub type FreeMonoidElem = MonoidRingElem<FreeSym>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_monoid_law() {
        let a = NatMonoidElem::basis(NatSym::new(2));
        let b = NatMonoidElem::basis(NatSym::new(4));
        let c = NatMonoidElem::basis(NatSym::new(3));
        // [2]*[4] - [3]^2 = [8] - [9]
        let det = a.mul(&b).add(&c.mul(&c).neg());
        assert_eq!(det.to_string(), "[8] - [9]");
        assert!(!det.is_zero());
    }

    #[test]
    fn mul_commutative_associative() {
        let x = NatMonoidElem::basis(NatSym::new(2)).add(&NatMonoidElem::one());
        let y = NatMonoidElem::basis(NatSym::new(3));
        let z = NatMonoidElem::basis(NatSym::new(5)).add(&y.neg());
        assert_eq!(x.mul(&y), y.mul(&x));
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    }

    #[test]
    fn poly_monoid_requires_unit_constant_term() {
        use crate::varpoly::parse_varpoly;
        assert!(PolySym::new(parse_varpoly("1 + 2*s").unwrap()).is_some());
        assert!(PolySym::new(parse_varpoly("2 + s").unwrap()).is_none());
    }

    #[test]
    fn collapse_to_integers() {
        let det = NatMonoidElem::basis(NatSym::new(8))
            .add(&NatMonoidElem::basis(NatSym::new(9)).neg());
        let v = det.collapse(|s| VarPoly::constant(s.0.clone()));
        assert_eq!(v, VarPoly::constant(-1));
    }
}
