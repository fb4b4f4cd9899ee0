//! Independent counting oracle for symmetric powers of the projective
//! line: over a finite field with q elements, the degree-m effective
//! divisors on P^1 are counted by the zeta-function recursion
//! m*c_m = sum_{k=1}^m N_k c_{m-k} with N_k = q^k + 1. The result must
//! match the point count of lambda^m(P^1) = [P^m], i.e. 1 + q + ... + q^m,
//! as a polynomial identity in q.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use motivic::lambda::lambda_t;
use motivic::measure::{point_count, Ring};
use motivic::motivic::{AtomTable, MotivicClass};
use motivic::tlpoly::TLPoly;
use motivic::varpoly::VarPoly;

/// Univariate polynomials in q with rational coefficients, just enough
/// arithmetic for the recursion.
#[derive(Clone, PartialEq, Debug, Default)]
struct QPoly(BTreeMap<u32, BigRational>);

impl QPoly {
    fn monomial(c: BigRational, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if c != BigRational::from(BigInt::from(0)) {
            m.insert(e, c);
        }
        QPoly(m)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0.clone();
        for (e, c) in &rhs.0 {
            let entry = out.entry(*e).or_insert_with(|| BigRational::from(BigInt::from(0)));
            *entry += c;
            if *entry == BigRational::from(BigInt::from(0)) {
                out.remove(e);
            }
        }
        QPoly(out)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = QPoly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &rhs.0 {
                out = out.add(&QPoly::monomial(c1 * c2, e1 + e2));
            }
        }
        out
    }

    fn scale(&self, c: BigRational) -> Self {
        QPoly(self.0.iter().map(|(e, x)| (*e, x * &c)).collect())
    }

    /// Converts to a VarPoly in `q`; all coefficients must be integers.
    fn to_varpoly(&self) -> VarPoly {
        let mut acc = VarPoly::zero();
        let q = VarPoly::var("q");
        for (e, c) in &self.0 {
            assert!(c.denom() == &BigInt::from(1), "non-integral coefficient");
            let mut term = VarPoly::from_bigint(&c.numer().clone());
            for _ in 0..*e {
                term = term.mul(&q);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

#[test]
fn symmetric_powers_of_p1_match_divisor_counts() {
    let one = || BigRational::from(BigInt::from(1));
    // c_0 = 1; m c_m = sum N_k c_{m-k}, N_k = q^k + 1.
    let max_m = 12u32;
    let mut c: Vec<QPoly> = vec![QPoly::monomial(one(), 0)];
    for m in 1..=max_m {
        let mut acc = QPoly::default();
        for k in 1..=m {
            let nk = QPoly::monomial(one(), k).add(&QPoly::monomial(one(), 0));
            acc = acc.add(&nk.mul(&c[(m - k) as usize]));
        }
        c.push(acc.scale(BigRational::new(BigInt::from(1), BigInt::from(m))));
    }

    let table = AtomTable::new();
    let p1 = MotivicClass::from_poly(TLPoly::pn(1).into_poly());
    let z = lambda_t(&p1, max_m, &table).unwrap();
    let count = point_count(&table).unwrap();
    for m in 1..=max_m {
        let via_lambda = count.apply(z.coeff(m)).unwrap();
        let via_divisors = c[m as usize].to_varpoly();
        assert_eq!(via_lambda, via_divisors, "degree-{m} divisor count on P^1");
    }
}
