//! Motivic measures: ring homomorphisms out of the free model, used to
//! probe classes and to certify inequalities that the free model alone
//! cannot decide.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::monoid::{FreeMonoidElem, FreeSym, MonoidRingElem};
use crate::motivic::{AtomTable, MotivicClass};
use crate::varpoly::{parse_varpoly, VarPoly};

/// Minimal commutative-ring interface shared by every measure target.
/// Operations take references and return owned values; all implementors
/// are exact (no floating point anywhere).
pub trait Ring: Clone + Eq + std::fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn from_bigint(c: &BigInt) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum MeasureError {
    #[error("measure {measure:?} has no value for atom {atom:?}")]
    MissingAtom { measure: String, atom: String },
    #[error("atom {atom:?}: invalid {field} data: {detail}")]
    BadData { atom: String, field: String, detail: String },
}

/// A ring homomorphism out of the model, determined by the images of
/// `T`, `L`, and each atom.
#[derive(Clone, Debug)]
pub struct MeasureSpec<R: Ring> {
    pub name: String,
    pub tau: R,
    pub lef: R,
    pub atom_values: BTreeMap<String, R>,
}

impl<R: Ring> MeasureSpec<R> {
    pub fn apply(&self, class: &MotivicClass) -> Result<R, MeasureError> {
        let mut acc = R::zero();
        for (monomial, coeff) in class.terms() {
            let mut v = coeff.eval(&self.tau, &self.lef);
            for (name, _dim) in monomial.atoms() {
                let av = self.atom_values.get(name).ok_or_else(|| {
                    MeasureError::MissingAtom {
                        measure: self.name.clone(),
                        atom: name.clone(),
                    }
                })?;
                v = v.mul(av);
            }
            acc = acc.add(&v);
        }
        Ok(acc)
    }
}

fn parse_count_q(atom: &str, v: &serde_json::Value) -> Result<VarPoly, MeasureError> {
    let bad = |detail: String| MeasureError::BadData {
        atom: atom.to_string(),
        field: "count_q".to_string(),
        detail,
    };
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| bad(format!("not an integer: {n}")))?;
            Ok(VarPoly::constant(i))
        }
        serde_json::Value::String(s) => parse_varpoly(s).map_err(|e| bad(e.to_string())),
        other => Err(bad(format!("expected integer or string, got {other}"))),
    }
}

/// Point-count measure: `T -> 1`, `L -> q`, atoms to their counting
/// polynomials in `q`.
pub fn point_count(table: &AtomTable) -> Result<MeasureSpec<VarPoly>, MeasureError> {
    let mut atom_values = BTreeMap::new();
    for atom in table.atoms() {
        if let Some(v) = &atom.measures.count_q {
            atom_values.insert(atom.name.clone(), parse_count_q(&atom.name, v)?);
        }
    }
    Ok(MeasureSpec {
        name: "point-count".to_string(),
        tau: VarPoly::one(),
        lef: VarPoly::var("q"),
        atom_values,
    })
}

/// Hodge-Deligne measure: `T -> 1`, `L -> u*v`, atoms to their
/// E-polynomials in `u`, `v`.
pub fn hodge_deligne(table: &AtomTable) -> Result<MeasureSpec<VarPoly>, MeasureError> {
    let mut atom_values = BTreeMap::new();
    for atom in table.atoms() {
        if let Some(e) = &atom.measures.e_poly {
            let p = parse_varpoly(e).map_err(|err| MeasureError::BadData {
                atom: atom.name.clone(),
                field: "E".to_string(),
                detail: err.to_string(),
            })?;
            atom_values.insert(atom.name.clone(), p);
        }
    }
    Ok(MeasureSpec {
        name: "hodge-deligne".to_string(),
        tau: VarPoly::one(),
        lef: VarPoly::var("u").mul(&VarPoly::var("v")),
        atom_values,
    })
}

/// Birational quotient: `T -> 0`, `L` kept as a formal generator, atoms
/// to the named generators of their birational equivalence classes.
pub fn birational(table: &AtomTable) -> MeasureSpec<FreeMonoidElem> {
    MeasureSpec {
        name: "birational".to_string(),
        tau: MonoidRingElem::zero(),
        lef: MonoidRingElem::basis(FreeSym::generator("L")),
        atom_values: sb_values(table),
    }
}

/// Stably-birational quotient: `T -> 1`, `L -> 0`, atoms to the named
/// generators of their stable-birational classes.
pub fn stably_birational(table: &AtomTable) -> MeasureSpec<FreeMonoidElem> {
    MeasureSpec {
        name: "stably-birational".to_string(),
        tau: MonoidRingElem::one(),
        lef: MonoidRingElem::zero(),
        atom_values: sb_values(table),
    }
}

fn sb_values(table: &AtomTable) -> BTreeMap<String, FreeMonoidElem> {
    table
        .atoms()
        .filter_map(|a| {
            let sb = a.measures.sb.as_ref()?;
            Some((a.name.clone(), MonoidRingElem::basis(FreeSym::generator(sb))))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motivic::{Atom, AtomMeasures};
    use crate::tlpoly::TLPoly;

    fn table() -> AtomTable {
        let mut t = AtomTable::new();
        t.insert(Atom {
            name: "E".to_string(),
            dim: 1,
            measures: AtomMeasures {
                count_q: Some(serde_json::json!("q + 1 - a")),
                e_poly: Some("u*v - u - v + 1".to_string()),
                sb: Some("E".to_string()),
                plurigenera: BTreeMap::new(),
            },
            sym: BTreeMap::new(),
        })
        .unwrap();
        t
    }

    #[test]
    fn point_count_of_pn() {
        let spec = point_count(&table()).unwrap();
        let c = MotivicClass::from_poly(TLPoly::pn(3).into_poly());
        assert_eq!(spec.apply(&c).unwrap().to_string(), "q^3 + q^2 + q + 1");
    }

    #[test]
    fn hodge_deligne_of_atom() {
        let spec = hodge_deligne(&table()).unwrap();
        let e = MotivicClass::atom("E", 1);
        assert_eq!(spec.apply(&e).unwrap().to_string(), "u*v - u - v + 1");
        assert_eq!(spec.apply(&MotivicClass::one()).unwrap(), VarPoly::one());
    }

    #[test]
    fn birational_kills_tau() {
        let spec = birational(&table());
        let e = MotivicClass::atom("E", 1);
        let te = e.scale(&TLPoly::tau());
        assert!(spec.apply(&te).unwrap().is_zero());
        assert_eq!(spec.apply(&e).unwrap().to_string(), "[E]");
    }

    #[test]
    fn stably_birational_kills_lef() {
        let spec = stably_birational(&table());
        let e = MotivicClass::atom("E", 1);
        let le = e.scale(&TLPoly::lef());
        assert!(spec.apply(&le).unwrap().is_zero());
        let t_e = e.scale(&TLPoly::tau());
        assert_eq!(spec.apply(&t_e).unwrap().to_string(), "[E]");
    }

    #[test]
    fn missing_atom_is_an_error() {
        let spec = point_count(&AtomTable::new()).unwrap();
        let e = MotivicClass::atom("E", 1);
        assert!(matches!(
            spec.apply(&e),
            Err(MeasureError::MissingAtom { .. })
        ));
    }

    #[test]
    fn homomorphism_on_products() {
        let spec = point_count(&table()).unwrap();
        use crate::measure::Ring as _;
        let a = MotivicClass::atom("E", 1).add(&MotivicClass::from_poly(TLPoly::lef()));
        let b = MotivicClass::from_poly(TLPoly::pn(2).into_poly());
        let lhs = spec.apply(&a.mul(&b)).unwrap();
        let rhs = spec.apply(&a).unwrap().mul(&spec.apply(&b).unwrap());
        assert_eq!(lhs, rhs);
    }
}
