//! Kapranov zeta functions, the Hankel-determinant rationality test, and
//! the irrationality machinery: the plurigenus monoid-ring measure `mu_d`
//! and the binomial-determinant non-cancellation certificate.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::binomial;
use serde::Serialize;

use crate::lambda::{lambda_t, LambdaError, Series};
use crate::measure::{MeasureError, MeasureSpec, Ring};
use crate::monoid::{MonoidRingElem, NatMonoidElem, NatSym, PolyMonoidElem, PolySym};
use crate::motivic::{AtomTable, MotivicClass};
use crate::varpoly::VarPoly;

/// `Z(t) = lambda_t(class)`, the graded Kapranov zeta function truncated
/// at order `n`.
pub fn kapranov_zeta(
    class: &MotivicClass,
    n: u32,
    table: &AtomTable,
) -> Result<Series<MotivicClass>, LambdaError> {
    lambda_t(class, n, table)
}

/// Determinant by cofactor expansion along the first column; exact in any
/// commutative ring. Matrix sizes here never exceed (j+1) <= 6, so the
/// factorial term count stays trivial.
pub fn det<R: Ring>(matrix: &[Vec<R>]) -> R {
    let n = matrix.len();
    if n == 0 {
        return R::one();
    }
    assert!(matrix.iter().all(|row| row.len() == n), "square matrix required");
    if n == 1 {
        return matrix[0][0].clone();
    }
    let mut acc = R::zero();
    for i in 0..n {
        if matrix[i][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = matrix
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let cof = matrix[i][0].mul(&det(&minor));
        acc = if i % 2 == 0 { acc.add(&cof) } else { acc.add(&cof.neg()) };
    }
    acc
}

/// Determinant of the `(j+1) x (j+1)` Hankel matrix with entries
/// `a_{m+i+k}` for `i, k = 0..j`. Requires `m + 2j` within the truncation
/// order.
pub fn hankel_det<R: Ring>(series: &Series<R>, m: u32, j: u32) -> R {
    assert!(
        m + 2 * j <= series.order(),
        "hankel_det needs coefficients up to order {} but series is truncated at {}",
        m + 2 * j,
        series.order()
    );
    let matrix: Vec<Vec<R>> = (0..=j)
        .map(|i| (0..=j).map(|k| series.coeff(m + i + k).clone()).collect())
        .collect();
    det(&matrix)
}

/// Builds the plurigenus measure `mu_d`: `T -> 0`, `L -> 1`, each atom to
/// the monoid basis symbol of its polynomial
/// `nu = 1 + h_d^1 s + ... + h_d^n s^n`.
pub fn mu_d_measure(table: &AtomTable, d: u32) -> Result<MeasureSpec<PolyMonoidElem>, MeasureError> {
    let key = d.to_string();
    let mut atom_values = BTreeMap::new();
    for atom in table.atoms() {
        let Some(hs) = atom.measures.plurigenera.get(&key) else { continue };
        if hs.len() != atom.dim as usize {
            return Err(MeasureError::BadData {
                atom: atom.name.clone(),
                field: format!("plurigenera[{d}]"),
                detail: format!("expected {} entries, got {}", atom.dim, hs.len()),
            });
        }
        let mut nu = VarPoly::one();
        for (i, h) in hs.iter().enumerate() {
            let term = VarPoly::constant(BigInt::from(*h)).mul(&VarPoly::var("s").pow(i as u32 + 1));
            nu = nu.add(&term);
        }
        let sym = PolySym::new(nu).expect("constant term is 1 by construction");
        atom_values.insert(atom.name.clone(), MonoidRingElem::basis(sym));
    }
    Ok(MeasureSpec {
        name: format!("mu_{d}"),
        tau: MonoidRingElem::zero(),
        lef: MonoidRingElem::one(),
        atom_values,
    })
}

/// Applies `mu_d` to a class.
pub fn mu_d(
    class: &MotivicClass,
    table: &AtomTable,
    d: u32,
) -> Result<PolyMonoidElem, MeasureError> {
    mu_d_measure(table, d)?.apply(class)
}

fn binomial_entry(h: u32, s: u32) -> BigInt {
    // C(m + s + h - 3, h - 1) with m folded into s by the caller.
    binomial(BigInt::from(s + h - 3), BigInt::from(h - 1))
}

/// The Hankel determinant of the series `a_m = [C(m+h-1, h-1)]` in the
/// monoid ring `Z[N_mult]`, expanded directly over permutations:
/// `sum_{sigma} sgn(sigma) [prod_i C(m + sigma(i) + i + h - 3, h - 1)]`,
/// each product collapsed to a single multiplicative-integer basis symbol.
pub fn binomial_hankel_det(h: u32, j: u32, m: u32) -> NatMonoidElem {
    assert!(h >= 1 && m >= 1);
    let size = j as usize + 1;
    let mut acc = NatMonoidElem::zero();
    for perm in (1..=size as u32).permutations(size) {
        let sign = permutation_sign(&perm);
        let mut product = BigInt::from(1);
        for (i0, &s) in perm.iter().enumerate() {
            let i = i0 as u32 + 1;
            product *= binomial_entry(h, m + s + i);
        }
        if product == BigInt::from(0) {
            continue;
        }
        let term = NatMonoidElem::basis(NatSym::new(product));
        acc = if sign > 0 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

fn permutation_sign(perm: &[u32]) -> i32 {
    let mut sign = 1;
    for i in 0..perm.len() {
        for k in i + 1..perm.len() {
            if perm[i] > perm[k] {
                sign = -sign;
            }
        }
    }
    sign
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub h: u32,
    pub j: u32,
    /// Sorted multiset `{sigma(i) + i}` of the identity permutation.
    pub identity_multiset: Vec<u32>,
    /// Number of permutations sharing the identity's multiset (including
    /// the identity).
    pub sharing_permutations: usize,
    /// Signed count of those permutations.
    pub signed_count: i64,
    pub certified: bool,
}

/// Certifies non-cancellation of `binomial_hankel_det(h, j, m)` for all
/// sufficiently large `m`: the entry multiset of the identity permutation
/// determines its product polynomial in `m`, so the determinant term
/// survives whenever no other permutation produces the same multiset (or,
/// more generally, the signed count of permutations sharing it is
/// nonzero).
pub fn identity_multiset_certificate(h: u32, j: u32) -> CertificateReport {
    assert!(h >= 2);
    let size = j as usize + 1;
    let id_multiset: Vec<u32> = (1..=size as u32).map(|i| 2 * i).collect();
    let mut sharing = 0usize;
    let mut signed = 0i64;
    for perm in (1..=size as u32).permutations(size) {
        let mut ms: Vec<u32> = perm
            .iter()
            .enumerate()
            .map(|(i0, &s)| s + i0 as u32 + 1)
            .collect();
        ms.sort();
        if ms == id_multiset {
            sharing += 1;
            signed += permutation_sign(&perm) as i64;
        }
    }
    CertificateReport {
        h,
        j,
        identity_multiset: id_multiset,
        sharing_permutations: sharing,
        signed_count: signed,
        certified: sharing == 1 && signed != 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanVerdict {
    /// Some row of determinants vanishes for every tested `m` at or beyond
    /// its tail start; consistent with a linear recurrence of that order.
    RationalConsistent,
    /// Nonvanishing determinants persist through the grid at every order.
    IrrationalityEvidence,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub j: u32,
    pub vanishing_m: Vec<u32>,
    pub nonvanishing_m: Vec<u32>,
    /// Smallest `m0` with all determinants zero for `m0 <= m <= m_max`,
    /// when the row ends in zeros.
    pub tail_vanishes_from: Option<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub verdict: ScanVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
}

/// Hankel-determinant grid scan: for each `j <= j_max` reports which
/// `m <= m_max` have vanishing determinant, and classifies the series.
pub fn rationality_scan<R: Ring>(series: &Series<R>, j_max: u32, m_max: u32) -> ScanReport {
    let mut rows = Vec::new();
    for j in 1..=j_max {
        let mut vanishing = Vec::new();
        let mut nonvanishing = Vec::new();
        for m in 1..=m_max {
            if m + 2 * j > series.order() {
                break;
            }
            if hankel_det(series, m, j).is_zero() {
                vanishing.push(m);
            } else {
                nonvanishing.push(m);
            }
        }
        let last_tested = vanishing.iter().chain(&nonvanishing).max().copied();
        let tail_vanishes_from = last_tested.and_then(|last| {
            if nonvanishing.contains(&last) {
                return None;
            }
            let mut start = last;
            while start > 1 && vanishing.contains(&(start - 1)) {
                start -= 1;
            }
            Some(start)
        });
        rows.push(ScanRow { j, vanishing_m: vanishing, nonvanishing_m: nonvanishing, tail_vanishes_from });
    }
    let verdict = if rows.iter().any(|r| r.tail_vanishes_from.is_some()) {
        ScanVerdict::RationalConsistent
    } else {
        ScanVerdict::IrrationalityEvidence
    };
    ScanReport { rows, verdict, certificate: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tlpoly::TLPoly;

    fn p1_zeta(n: u32) -> Series<MotivicClass> {
        let p1 = MotivicClass::from_poly(TLPoly::pn(1).into_poly());
        kapranov_zeta(&p1, n, &AtomTable::new()).unwrap()
    }

    #[test]
    fn zeta_of_point_and_zero() {
        let table = AtomTable::new();
        let z = kapranov_zeta(&MotivicClass::one(), 5, &table).unwrap();
        for m in 0..=5 {
            assert_eq!(*z.coeff(m), MotivicClass::one());
        }
        let z0 = kapranov_zeta(&MotivicClass::zero(), 5, &table).unwrap();
        assert_eq!(z0, Series::one(5));
    }

    #[test]
    fn hankel_rank_one_series() {
        // constant series 1 + t + t^2 + ...: all 2x2 determinants vanish
        let s: Series<MotivicClass> =
            Series::from_coeffs(vec![MotivicClass::one(); 10]);
        for m in 1..=7 {
            assert!(hankel_det(&s, m, 1).is_zero());
        }
    }

    #[test]
    fn hankel_p1_vanishes_at_j2() {
        let z = p1_zeta(45);
        for m in 0..=20 {
            assert!(hankel_det(&z, m, 2).is_zero(), "m = {m}");
        }
        // but j = 1 does not vanish (order-2 recurrence, not order-1)
        assert!(!hankel_det(&z, 1, 1).is_zero());
    }

    #[test]
    fn hankel_of_recurrent_series() {
        // a_{n+r} = sum c_i a_{n+i} forces vanishing for all j >= r.
        let cs = [3i64, -2, 5, 1];
        for r in 1..=4usize {
            let mut coeffs: Vec<MotivicClass> = (0..r)
                .map(|i| MotivicClass::from_poly(TLPoly::constant(i as i64 + 1)))
                .collect();
            for n in r..20 {
                let mut next = MotivicClass::zero();
                for i in 0..r {
                    let c = MotivicClass::from_poly(TLPoly::constant(cs[i]));
                    next = next.add(&c.mul(&coeffs[n - r + i]));
                }
                coeffs.push(next);
            }
            let s = Series::from_coeffs(coeffs);
            for j in r as u32..=4 {
                for m in 1..=(19 - 2 * j) {
                    assert!(hankel_det(&s, m, j).is_zero(), "r = {r}, j = {j}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn binomial_det_base_cases() {
        assert_eq!(binomial_hankel_det(2, 1, 1).to_string(), "[8] - [9]");
        assert_eq!(binomial_hankel_det(2, 1, 2).to_string(), "[15] - [16]");
        // h = 1: all entries C(*, 0) = 1, determinant 0 for j >= 1
        assert!(binomial_hankel_det(1, 1, 1).is_zero());
        assert!(binomial_hankel_det(1, 2, 3).is_zero());
    }

    #[test]
    fn binomial_det_matches_hankel_oracle() {
        // Independent path: Hankel determinant of the series
        // a_s = [C(s+h-1, h-1)] computed by the generic cofactor code.
        for h in 2..=4u32 {
            for j in 1..=2u32 {
                for m in 1..=5u32 {
                    let order = m + 2 * j;
                    let coeffs: Vec<NatMonoidElem> = (0..=order)
                        .map(|s| {
                            if s == 0 {
                                NatMonoidElem::one()
                            } else {
                                NatMonoidElem::basis(NatSym::new(binomial(
                                    BigInt::from(s + h - 1),
                                    BigInt::from(h - 1),
                                )))
                            }
                        })
                        .collect();
                    let series = Series::from_coeffs(coeffs);
                    assert_eq!(
                        binomial_hankel_det(h, j, m),
                        hankel_det(&series, m, j),
                        "h = {h}, j = {j}, m = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn integer_collapse_vanishes_for_large_j() {
        // Collapsing [n] -> n recovers the integer Hankel determinant of a
        // polynomial sequence of degree h-1, which vanishes for j >= h.
        for h in 2..=3u32 {
            for m in 1..=4u32 {
                let d = binomial_hankel_det(h, h, m);
                let collapsed = d.collapse(|s: &NatSym| VarPoly::constant(s.0.clone()));
                assert!(collapsed.is_zero(), "h = {h}, m = {m}");
                // ...while the monoid-ring determinant itself is nonzero.
                assert!(!d.is_zero());
            }
        }
    }

    #[test]
    fn certificate_small_cases() {
        let c = identity_multiset_certificate(2, 1);
        assert!(c.certified);
        assert_eq!(c.identity_multiset, vec![2, 4]);
        assert!(identity_multiset_certificate(3, 2).certified);
        let c0 = identity_multiset_certificate(2, 0);
        assert!(c0.certified);
    }

    #[test]
    fn scan_classifications() {
        let z = p1_zeta(45);
        let report = rationality_scan(&z, 2, 20);
        assert_eq!(report.verdict, ScanVerdict::RationalConsistent);
        assert_eq!(report.rows[1].tail_vanishes_from, Some(1));
        assert!(report.rows[1].nonvanishing_m.is_empty());

        // binomial series in the monoid ring: evidence of irrationality
        let h = 2u32;
        let coeffs: Vec<NatMonoidElem> = (0..=12u32)
            .map(|s| {
                if s == 0 {
                    NatMonoidElem::one()
                } else {
                    NatMonoidElem::basis(NatSym::new(BigInt::from(s + 1)))
                }
            })
            .collect();
        let series = Series::from_coeffs(coeffs);
        let report = rationality_scan(&series, 2, 8);
        assert_eq!(report.verdict, ScanVerdict::IrrationalityEvidence);
        let _ = h;
    }

    #[test]
    fn mu_d_basics() {
        use crate::motivic::{Atom, AtomMeasures};
        let mut table = AtomTable::new();
        let mut plurigenera = BTreeMap::new();
        plurigenera.insert("2".to_string(), vec![1, 0, 3]);
        table
            .insert(Atom {
                name: "X".to_string(),
                dim: 3,
                measures: AtomMeasures { plurigenera, ..Default::default() },
                sym: BTreeMap::new(),
            })
            .unwrap();
        let x = MotivicClass::atom("X", 3);
        assert_eq!(mu_d(&x, &table, 2).unwrap().to_string(), "[3*s^3 + s + 1]");
        // kills tau-multiples
        let tx = x.scale(&TLPoly::tau());
        assert!(mu_d(&tx, &table, 2).unwrap().is_zero());
        // unit
        assert_eq!(mu_d(&MotivicClass::one(), &table, 2).unwrap(), PolyMonoidElem::one());
        // additivity
        let sum = x.add(&MotivicClass::one());
        let lhs = mu_d(&sum, &table, 2).unwrap();
        let rhs = mu_d(&x, &table, 2).unwrap().add(&mu_d(&MotivicClass::one(), &table, 2).unwrap());
        assert_eq!(lhs, rhs);
    }
}
