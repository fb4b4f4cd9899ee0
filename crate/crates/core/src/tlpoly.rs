//! Exact sparse polynomial arithmetic over `Z[T, L]`.
//!
//! `T` and `L` are the two degree-one generators of the graded coefficient
//! ring. The symmetric subring `Z[T+L, T*L]` is represented by [`SymPoly`],
//! and fractions over the permitted multiplicative set by [`TLFraction`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse polynomial in `Z[T, L]`. Keys are `(a, b)` for the monomial
/// `T^a * L^b`; zero coefficients are never stored, so equality is
/// structural and serialization is canonical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TLPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TLPoly {
    pub fn zero() -> Self {
        TLPoly::default()
    }

    pub fn one() -> Self {
        TLPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        TLPoly { terms }
    }

    /// The monomial `c * T^a * L^b`.
    pub fn monomial(c: impl Into<BigInt>, a: u32, b: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        TLPoly { terms }
    }

    pub fn tau() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn lef() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert_add(terms: &mut BTreeMap<(u32, u32), BigInt>, key: (u32, u32), c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            terms.remove(&key);
        }
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|&(a, b)| a + b);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Exchanges `T` and `L` in every monomial.
    pub fn swap(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((b, a), c.clone()))
            .collect();
        TLPoly { terms }
    }

    pub fn is_symmetric(&self) -> bool {
        self.swap() == *self
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = TLPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// `T^k + T^{k-1} L + ... + L^k`, the class polynomial of projective
    /// `k`-space.
    pub fn pn(k: u32) -> SymPoly {
        let mut terms = BTreeMap::new();
        for i in 0..=k {
            terms.insert((k - i, i), BigInt::one());
        }
        SymPoly(TLPoly { terms })
    }

    /// Substitutes `T -> T^n, L -> L^n`.
    pub fn frobenius(&self, n: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(&(a, b), c)| ((a * n, b * n), c.clone()))
            .collect();
        TLPoly { terms }
    }

    /// Exact division by `T - L` via synthetic division in `T` over `Z[L]`.
    /// Returns `None` when the remainder `p(L, L)` is nonzero.
    pub fn div_tau_minus_l(&self) -> Option<TLPoly> {
        if self.is_zero() {
            return Some(TLPoly::zero());
        }
        // Collect coefficients of T^a as polynomials in L.
        let max_a = self.terms.keys().map(|&(a, _)| a).max().unwrap();
        let mut by_tau: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); max_a as usize + 1];
        for (&(a, b), c) in &self.terms {
            by_tau[a as usize].insert(b, c.clone());
        }
        // Horner descent: q_{a-1} = c_a + L * q_a, remainder = c_0 + L * q_0.
        let mut quot: Vec<BTreeMap<u32, BigInt>> = vec![BTreeMap::new(); max_a as usize];
        let mut carry: BTreeMap<u32, BigInt> = BTreeMap::new();
        for a in (0..=max_a as usize).rev() {
            let mut cur: BTreeMap<u32, BigInt> = BTreeMap::new();
            for (b, c) in &carry {
                cur.insert(b + 1, c.clone());
            }
            for (b, c) in &by_tau[a] {
                let e = cur.entry(*b).or_insert_with(BigInt::zero);
                *e += c;
                if e.is_zero() {
                    cur.remove(b);
                }
            }
            if a == 0 {
                if !cur.is_empty() {
                    return None;
                }
            } else {
                quot[a - 1] = cur.clone();
                carry = cur;
            }
        }
        let mut terms = BTreeMap::new();
        for (a, coeffs) in quot.iter().enumerate() {
            for (b, c) in coeffs {
                terms.insert((a as u32, *b), c.clone());
            }
        }
        Some(TLPoly { terms })
    }

    /// Exact division by an arbitrary nonzero polynomial; `None` if the
    /// quotient does not exist over `Z`. Lex leading-term reduction.
    pub fn div_exact(&self, divisor: &TLPoly) -> Option<TLPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (&lead_key, lead_coeff) = divisor.terms.iter().next_back().unwrap();
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while !rem.is_zero() {
            let (&(ra, rb), rc) = rem.terms.iter().next_back().unwrap();
            if ra < lead_key.0 || rb < lead_key.1 {
                return None;
            }
            let (q, r) = num_integer::div_rem(rc.clone(), lead_coeff.clone());
            if !r.is_zero() {
                return None;
            }
            let key = (ra - lead_key.0, rb - lead_key.1);
            let factor = TLPoly::monomial(q.clone(), key.0, key.1);
            rem = &rem - &(&factor * divisor);
            quot.insert(key, q);
        }
        Some(TLPoly { terms: quot })
    }

    /// Unique decomposition `p = a + T*b` with `a`, `b` symmetric:
    /// `b = (p - swap(p)) / (T - L)`, then `a = p - T*b`.
    pub fn sym_decompose(&self) -> (SymPoly, SymPoly) {
        let diff = self - &self.swap();
        let b = diff
            .div_tau_minus_l()
            .expect("p - swap(p) is always divisible by T - L");
        let a = self - &(&TLPoly::tau() * &b);
        debug_assert!(a.is_symmetric() && b.is_symmetric());
        (SymPoly(a), SymPoly(b))
    }

    /// Evaluates with each variable sent to an element of an arbitrary
    /// commutative ring, via the ring operations of `R`.
    pub fn eval<R: crate::measure::Ring>(&self, tau: &R, lef: &R) -> R {
        let mut acc = R::zero();
        for (&(a, b), c) in &self.terms {
            let mut m = R::from_bigint(c);
            for _ in 0..a {
                m = m.mul(tau);
            }
            for _ in 0..b {
                m = m.mul(lef);
            }
            acc = acc.add(&m);
        }
        acc
    }

    /// Canonical printing with custom variable names (used for `p_Delta(s,t)`).
    pub fn display_with<'a>(&'a self, tau: &'a str, lef: &'a str) -> TLPolyDisplay<'a> {
        TLPolyDisplay { poly: self, tau, lef }
    }
}

pub struct TLPolyDisplay<'a> {
    poly: &'a TLPoly,
    tau: &'a str,
    lef: &'a str,
}

impl fmt::Display for TLPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending lex so T sorts before L: "T + L", "T^2 + T*L + L^2".
        for (&(a, b), c) in self.poly.terms.iter().rev() {
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
            if !abs.is_one() || (a == 0 && b == 0) {
                factors.push(abs.to_string());
            }
            if a > 0 {
                factors.push(if a == 1 {
                    self.tau.to_string()
                } else {
                    format!("{}^{}", self.tau, a)
                });
            }
            if b > 0 {
                factors.push(if b == 1 {
                    self.lef.to_string()
                } else {
                    format!("{}^{}", self.lef, b)
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for TLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("T", "L"))
    }
}

impl fmt::Debug for TLPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &TLPoly {
    type Output = TLPoly;
    fn add(self, rhs: &TLPoly) -> TLPoly {
        let mut terms = self.terms.clone();
        for (key, c) in &rhs.terms {
            TLPoly::insert_add(&mut terms, *key, c);
        }
        TLPoly { terms }
    }
}

impl Sub for &TLPoly {
    type Output = TLPoly;
    fn sub(self, rhs: &TLPoly) -> TLPoly {
        let mut terms = self.terms.clone();
        for (key, c) in &rhs.terms {
            let neg = -c;
            TLPoly::insert_add(&mut terms, *key, &neg);
        }
        TLPoly { terms }
    }
}

impl Neg for &TLPoly {
    type Output = TLPoly;
    fn neg(self) -> TLPoly {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c)).collect();
        TLPoly { terms }
    }
}

impl Mul for &TLPoly {
    type Output = TLPoly;
    fn mul(self, rhs: &TLPoly) -> TLPoly {
        let mut terms = BTreeMap::new();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                TLPoly::insert_add(&mut terms, (a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        TLPoly { terms }
    }
}

/// A polynomial certified symmetric under `T <-> L`, i.e. an element of
/// the subring `Z[T+L, T*L]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymPoly(TLPoly);

impl SymPoly {
    pub fn new(p: TLPoly) -> Option<SymPoly> {
        if p.is_symmetric() {
            Some(SymPoly(p))
        } else {
            None
        }
    }

    pub fn zero() -> Self {
        SymPoly(TLPoly::zero())
    }

    pub fn one() -> Self {
        SymPoly(TLPoly::one())
    }

    pub fn as_poly(&self) -> &TLPoly {
        &self.0
    }

    pub fn into_poly(self) -> TLPoly {
        self.0
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Generators of the permitted multiplicative set: `T`, `L`, `L - T`, and
/// the projective-space polynomials `[P^n]` for `n >= 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum DenomFactor {
    Tau,
    Lef,
    LMinusTau,
    Pn(u32),
}

impl DenomFactor {
    pub fn to_poly(self) -> TLPoly {
        match self {
            DenomFactor::Tau => TLPoly::tau(),
            DenomFactor::Lef => TLPoly::lef(),
            DenomFactor::LMinusTau => &TLPoly::lef() - &TLPoly::tau(),
            DenomFactor::Pn(n) => TLPoly::pn(n).into_poly(),
        }
    }
}

impl fmt::Display for DenomFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenomFactor::Tau => write!(f, "T"),
            DenomFactor::Lef => write!(f, "L"),
            DenomFactor::LMinusTau => write!(f, "(L - T)"),
            DenomFactor::Pn(n) => write!(f, "P({n})"),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FractionError {
    #[error("denominator factor P({0}) requires n >= 1")]
    InvalidPnFactor(u32),
}

/// A fraction over `Z[T, L]` whose denominator is a syntactically certified
/// product of [`DenomFactor`]s. Equality is decided by cross-multiplication,
/// which is valid since `Z[T, L]` is an integral domain.
#[derive(Clone, Debug)]
pub struct TLFraction {
    num: TLPoly,
    /// Sorted multiset of denominator factors.
    den: Vec<DenomFactor>,
}

impl TLFraction {
    pub fn new(num: TLPoly, mut den: Vec<DenomFactor>) -> Result<TLFraction, FractionError> {
        for f in &den {
            if let DenomFactor::Pn(n) = f {
                if *n < 1 {
                    return Err(FractionError::InvalidPnFactor(*n));
                }
            }
        }
        den.sort();
        Ok(TLFraction { num, den })
    }

    pub fn from_poly(p: TLPoly) -> TLFraction {
        TLFraction { num: p, den: Vec::new() }
    }

    pub fn one() -> TLFraction {
        Self::from_poly(TLPoly::one())
    }

    pub fn zero() -> TLFraction {
        Self::from_poly(TLPoly::zero())
    }

    pub fn numerator(&self) -> &TLPoly {
        &self.num
    }

    pub fn denominator_factors(&self) -> &[DenomFactor] {
        &self.den
    }

    pub fn denominator_poly(&self) -> TLPoly {
        let mut p = TLPoly::one();
        for f in &self.den {
            p = &p * &f.to_poly();
        }
        p
    }

    /// Reciprocal; only defined when the numerator is itself a unit times a
    /// product of permitted factors, so we only expose it for `num == 1`
    /// denominator-building and the `gl`/`bgl` constructors handle the rest.
    pub fn reciprocal_of_factors(factors: Vec<DenomFactor>) -> Result<TLFraction, FractionError> {
        TLFraction::new(TLPoly::one(), factors)
    }

    pub fn add(&self, rhs: &TLFraction) -> TLFraction {
        // Common denominator: multiset union (max multiplicity per factor).
        let union = multiset_union(&self.den, &rhs.den);
        let scale_self = multiset_diff(&union, &self.den);
        let scale_rhs = multiset_diff(&union, &rhs.den);
        let num = &(&self.num * &product(&scale_self)) + &(&rhs.num * &product(&scale_rhs));
        TLFraction { num, den: union }
    }

    pub fn neg(&self) -> TLFraction {
        TLFraction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &TLFraction) -> TLFraction {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &TLFraction) -> TLFraction {
        let mut den = self.den.clone();
        den.extend_from_slice(&rhs.den);
        den.sort();
        TLFraction { num: &self.num * &rhs.num, den }
    }

    pub fn eq_frac(&self, rhs: &TLFraction) -> bool {
        &self.num * &rhs.denominator_poly() == &rhs.num * &self.denominator_poly()
    }

    pub fn is_one(&self) -> bool {
        self.eq_frac(&TLFraction::one())
    }
}

impl PartialEq for TLFraction {
    fn eq(&self, other: &Self) -> bool {
        self.eq_frac(other)
    }
}

impl Eq for TLFraction {}

impl fmt::Display for TLFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            let den: Vec<String> = self.den.iter().map(|d| d.to_string()).collect();
            write!(f, "({}) / ({})", self.num, den.join("*"))
        }
    }
}

fn product(factors: &[DenomFactor]) -> TLPoly {
    let mut p = TLPoly::one();
    for f in factors {
        p = &p * &f.to_poly();
    }
    p
}

fn multiset_union(a: &[DenomFactor], b: &[DenomFactor]) -> Vec<DenomFactor> {
    let mut counts: BTreeMap<DenomFactor, usize> = BTreeMap::new();
    for f in a {
        *counts.entry(*f).or_insert(0) += 1;
    }
    let mut bc: BTreeMap<DenomFactor, usize> = BTreeMap::new();
    for f in b {
        *bc.entry(*f).or_insert(0) += 1;
    }
    for (f, n) in bc {
        let e = counts.entry(f).or_insert(0);
        *e = (*e).max(n);
    }
    counts
        .into_iter()
        .flat_map(|(f, n)| std::iter::repeat(f).take(n))
        .collect()
}

fn multiset_diff(a: &[DenomFactor], b: &[DenomFactor]) -> Vec<DenomFactor> {
    let mut counts: BTreeMap<DenomFactor, isize> = BTreeMap::new();
    for f in a {
        *counts.entry(*f).or_insert(0) += 1;
    }
    for f in b {
        *counts.entry(*f).or_insert(0) -= 1;
    }
    counts
        .into_iter()
        .flat_map(|(f, n)| std::iter::repeat(f).take(n.max(0) as usize))
        .collect()
}
