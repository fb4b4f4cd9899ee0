//! Arithmetic criterion for rational homology manifold (RHM) Brieskorn
//! hypersurfaces `x_1^{a_1} + ... + x_n^{a_n} = 0`: the link is a rational
//! homology sphere (and the singularity a D-singularity candidate) exactly
//! when no tuple `b_i` in `{1, ..., a_i - 1}` makes `sum b_i / a_i` an
//! integer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrieskornSpec {
    pub exponents: Vec<u64>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BrieskornError {
    #[error("need at least 2 exponents, got {0}")]
    TooFew(usize),
    #[error("exponent {0} < 2")]
    SmallExponent(u64),
}

impl BrieskornSpec {
    pub fn new(exponents: Vec<u64>) -> Result<Self, BrieskornError> {
        if exponents.len() < 2 {
            return Err(BrieskornError::TooFew(exponents.len()));
        }
        if let Some(&a) = exponents.iter().find(|&&a| a < 2) {
            return Err(BrieskornError::SmallExponent(a));
        }
        Ok(BrieskornSpec { exponents })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhmResult {
    pub rhm: bool,
    /// A tuple `b` with integral `sum b_i / a_i`, when one exists.
    pub witness: Option<Vec<u64>>,
}

fn tuples(spec: &BrieskornSpec) -> impl Iterator<Item = Vec<u64>> + '_ {
    // mixed-radix counter over b_i in 1..a_i
    let radices: Vec<u64> = spec.exponents.iter().map(|a| a - 1).collect();
    let total: u64 = radices.iter().product();
    (0..total).map(move |mut idx| {
        radices
            .iter()
            .map(|r| {
                let b = idx % r + 1;
                idx /= r;
                b
            })
            .collect()
    })
}

/// Exhaustive search with exact rational arithmetic; returns the first
/// (lexicographically smallest in counter order) integral witness.
pub fn brieskorn_rhm(spec: &BrieskornSpec) -> RhmResult {
    for b in tuples(spec) {
        let sum: BigRational = b
            .iter()
            .zip(&spec.exponents)
            .map(|(&bi, &ai)| BigRational::new(BigInt::from(bi), BigInt::from(ai)))
            .sum();
        if sum.denom().is_one() {
            return RhmResult { rhm: false, witness: Some(b) };
        }
    }
    RhmResult { rhm: true, witness: None }
}

/// Independent oracle: clears denominators by the least common multiple
/// and checks divisibility in integers only.
pub fn brieskorn_rhm_lcm_oracle(spec: &BrieskornSpec) -> RhmResult {
    let lcm = spec.exponents.iter().fold(1u64, |acc, &a| acc.lcm(&a));
    for b in tuples(spec) {
        let total: u64 = b
            .iter()
            .zip(&spec.exponents)
            .map(|(&bi, &ai)| bi * (lcm / ai))
            .sum();
        if (BigInt::from(total) % BigInt::from(lcm)).is_zero() {
            return RhmResult { rhm: false, witness: Some(b) };
        }
    }
    RhmResult { rhm: true, witness: None }
}
