//! Graded lambda-ring machinery on truncated power series: `lambda_t`,
//! Adams operations, the line-element action of the big-ring product, and
//! the sigma-division algorithm that extends lambda-structures through
//! localization.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::measure::Ring;
use crate::motivic::{AtomTable, MotivicClass};
use crate::tlpoly::TLPoly;

/// Power series truncated at an explicit order `N`; arithmetic never
/// inspects coefficients beyond `N`, and binary operations truncate to the
/// smaller operand order.
#[derive(Clone, PartialEq, Eq)]
pub struct Series<R: Ring> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// The series `1 + 0*t + ... + 0*t^N`.
    pub fn one(order: u32) -> Self {
        let mut coeffs = vec![R::zero(); order as usize + 1];
        coeffs[0] = R::one();
        Series { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series { coeffs }
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeff(&self, n: u32) -> &R {
        &self.coeffs[n as usize]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn truncate(&self, order: u32) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series { coeffs: self.coeffs[..=order as usize].to_vec() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order()) as usize;
        let mut coeffs = vec![R::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse; requires constant term exactly `1`.
    pub fn inverse(&self) -> Self {
        assert!(
            self.coeffs[0] == R::one(),
            "series inverse requires constant term 1"
        );
        let order = self.order() as usize;
        let mut inv = vec![R::zero(); order + 1];
        inv[0] = R::one();
        for n in 1..=order {
            let mut s = R::zero();
            for i in 1..=n {
                s = s.add(&self.coeffs[i].mul(&inv[n - i]));
            }
            inv[n] = s.neg();
        }
        Series { coeffs: inv }
    }

    /// Integer power, negative exponents via `inverse`.
    pub fn pow(&self, e: &BigInt) -> Self {
        let base = if e.is_negative() { self.inverse() } else { self.clone() };
        let mut n: u64 = e.magnitude().try_into().expect("series exponent fits in u64");
        let mut acc = Series::one(self.order());
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            n >>= 1;
        }
        acc
    }
}

impl<R: Ring> fmt::Display for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && n > 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl<R: Ring> fmt::Debug for Series<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LambdaError {
    #[error("atom {atom:?} has no symmetric-power data for m = {m}")]
    MissingSym { atom: String, m: u32 },
    #[error("unknown atom {0:?}")]
    UnknownAtom(String),
    #[error(
        "lambda of a product of atoms ({monomial}) is not determined by the \
         per-atom symmetric-power tables"
    )]
    ProductOfAtoms { monomial: String },
    #[error("sigma division: coefficient at order {order} is not divisible by f evaluated at the {order}-th power monomials")]
    NotDivisible { order: u32 },
    #[error("sigma division: f must be a nonzero polynomial")]
    ZeroDivisor,
    #[error("stratification data keys do not match the partitions of {m}")]
    BadStrata { m: u32 },
}

/// `lambda_t(class) = sum lambda^m(class) t^m`, truncated at order `n`.
///
/// Computed from the group-homomorphism property termwise: for a term
/// `c * T^a L^b * A`, `lambda^m(T^a L^b * A) = T^{ma} L^{mb} lambda^m(A)`,
/// with `lambda_t(1) = (1 - t)^{-1}` and single atoms looked up in their
/// symmetric-power tables. Integer coefficients are handled by series
/// powers (inversion for negatives).
pub fn lambda_t(
    class: &MotivicClass,
    n: u32,
    table: &AtomTable,
) -> Result<Series<MotivicClass>, LambdaError> {
    let mut result = Series::one(n);
    for (monomial, coeff) in class.terms() {
        // lambda^m of the underlying atom monomial, for m = 0..=n.
        let atom_lambdas: Vec<MotivicClass> = if monomial.is_unit() {
            vec![MotivicClass::one(); n as usize + 1]
        } else if let Some((name, dim)) = monomial.as_single_atom() {
            let atom = table.get(name).ok_or_else(|| LambdaError::UnknownAtom(name.to_string()))?;
            let mut v = Vec::with_capacity(n as usize + 1);
            v.push(MotivicClass::one());
            for m in 1..=n {
                let lam = if m == 1 {
                    MotivicClass::atom(name, dim)
                } else {
                    atom.sym
                        .get(&m)
                        .cloned()
                        .ok_or_else(|| LambdaError::MissingSym { atom: name.to_string(), m })?
                };
                v.push(lam);
            }
            v
        } else {
            return Err(LambdaError::ProductOfAtoms { monomial: monomial.to_string() });
        };
        for (&(a, b), c) in coeff.terms() {
            // Base series for T^a L^b * (atom monomial) with coefficient 1.
            let mut coeffs = Vec::with_capacity(n as usize + 1);
            for m in 0..=n {
                coeffs.push(atom_lambdas[m as usize].scale(&TLPoly::monomial(1, m * a, m * b)));
            }
            result = result.mul(&Series::from_coeffs(coeffs).pow(c));
        }
    }
    Ok(result)
}

/// The `n`-th Adams operation, via the Newton recurrence adapted to
/// `lambda_t(1) = (1 - t)^{-1}` (lambda-operations of complete-homogeneous
/// type): `psi_n = n*lambda^n - sum_{i=1}^{n-1} lambda^i * psi_{n-i}`.
pub fn adams(n: u32, class: &MotivicClass, table: &AtomTable) -> Result<MotivicClass, LambdaError> {
    assert!(n >= 1);
    let lam = lambda_t(class, n, table)?;
    let mut psi: Vec<MotivicClass> = Vec::with_capacity(n as usize + 1);
    psi.push(MotivicClass::zero()); // unused index 0
    for k in 1..=n {
        let mut p = lam.coeff(k).scale(&TLPoly::constant(k as i64));
        for i in 1..k {
            p = p.add(&lam.coeff(i).mul(&psi[(k - i) as usize]).neg());
        }
        psi.push(p);
    }
    Ok(psi.pop().unwrap())
}

/// A product of factors `(1 + T^a L^b t)^{e}`, the only shape of big-ring
/// element the localization argument needs.
#[derive(Clone, Debug)]
pub struct LineElement {
    factors: Vec<(u32, u32, BigInt)>,
}

impl LineElement {
    /// Reads a polynomial `f = sum c_I m_I` as the line element
    /// `prod (1 + m_I t)^{c_I}`.
    pub fn from_poly(f: &TLPoly) -> LineElement {
        LineElement {
            factors: f.terms().map(|(&(a, b), c)| (a, b, c.clone())).collect(),
        }
    }

    /// `sigma_t(f) o phi = prod phi(m_I t)^{c_I}`, truncated at the order
    /// of `phi`.
    pub fn act(&self, phi: &Series<MotivicClass>) -> Series<MotivicClass> {
        let n = phi.order();
        let mut result = Series::one(n);
        for (a, b, e) in &self.factors {
            // phi(m t): scale the t^k coefficient by m^k.
            let coeffs: Vec<MotivicClass> = (0..=n)
                .map(|k| phi.coeff(k).scale(&TLPoly::monomial(1, a * k, b * k)))
                .collect();
            result = result.mul(&Series::from_coeffs(coeffs).pow(e));
        }
        result
    }
}

/// Solves `sigma_t(f) o phi = psi` for the unique `phi = 1 + sum b_n t^n`,
/// coefficient by coefficient: at each order the unknown `b_n` enters
/// linearly with factor `f` evaluated at the `n`-th powers of its
/// monomials, so `b_n` is recovered by exact division.
pub fn solve_sigma_division(
    f: &TLPoly,
    psi: &Series<MotivicClass>,
    n: u32,
) -> Result<Series<MotivicClass>, LambdaError> {
    if f.is_zero() {
        return Err(LambdaError::ZeroDivisor);
    }
    let line = LineElement::from_poly(f);
    let mut phi = Series::one(n);
    for k in 1..=n {
        let g = line.act(&phi);
        let diff = psi.coeff(k).add(&g.coeff(k).neg());
        if diff.is_zero() {
            continue;
        }
        // f(m^{(k)}): every monomial of f raised to the k-th power.
        let fk = f.frobenius(k);
        let bk = diff
            .div_exact_poly(&fk)
            .ok_or(LambdaError::NotDivisible { order: k })?;
        phi.coeffs[k as usize] = bk;
    }
    Ok(phi)
}

/// All partitions of `m`, parts in non-increasing order, enumerated in
/// deterministic (lexicographically decreasing) order.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m.max(1), &mut Vec::new(), &mut out);
    out
}

/// Checks the partition stratification of a symmetric power: the supplied
/// per-partition stratum classes must be indexed by exactly the partitions
/// of `m` and sum to `lambda^m` of the atom.
pub fn sym_power_stratification(
    atom: &str,
    m: u32,
    table: &AtomTable,
    strata: &BTreeMap<Vec<u32>, MotivicClass>,
) -> Result<bool, LambdaError> {
    let parts = partitions(m);
    if strata.len() != parts.len() || parts.iter().any(|p| !strata.contains_key(p)) {
        return Err(LambdaError::BadStrata { m });
    }
    let atom_entry = table.get(atom).ok_or_else(|| LambdaError::UnknownAtom(atom.to_string()))?;
    let class = MotivicClass::atom(atom, atom_entry.dim);
    let lam = lambda_t(&class, m, table)?;
    let mut total = MotivicClass::zero();
    for c in strata.values() {
        total = total.add(c);
    }
    Ok(total == *lam.coeff(m))
}
