//! Boundary classes of smooth compactifications from simple-normal-
//! crossings incidence data, and the pairwise comparison of
//! compactifications of a common open variety.

use std::collections::BTreeSet;

use serde::Deserialize;

use crate::expr::ExprError;
use crate::measure::Ring;
use crate::motivic::{AtomTable, MotivicClass};
use crate::tlpoly::TLPoly;

use super::{compare_classes, Verdict};

/// One closed stratum `D_J` of an snc boundary: the intersection of the
/// components named in `subset`.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub subset: BTreeSet<String>,
    pub class: MotivicClass,
    pub dim: u32,
}

/// Incidence data of a simple-normal-crossings boundary: the component
/// names and, for each nonempty intersection, its smooth-proper class and
/// dimension. Subsets absent from `strata` are empty intersections.
#[derive(Debug, Clone)]
pub struct SncIncidence {
    pub components: Vec<String>,
    pub strata: Vec<Stratum>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IncidenceError {
    #[error("stratum subset is empty")]
    EmptySubset,
    #[error("stratum names unknown component {0:?}")]
    UnknownComponent(String),
    #[error("duplicate stratum for subset {0:?}")]
    DuplicateSubset(String),
    #[error("stratum {subset:?}: class has degree {got:?}, declared dimension {dim}")]
    DegreeMismatch { subset: String, got: Option<u32>, dim: u32 },
    #[error("stratum {subset:?} is inhomogeneous")]
    Inhomogeneous { subset: String },
    #[error("strata {small:?} and {large:?}: dimension must drop by the number of added components ({expected}), got {got}")]
    DimInconsistent { small: String, large: String, expected: u32, got: i64 },
}

fn subset_label(s: &BTreeSet<String>) -> String {
    s.iter().cloned().collect::<Vec<_>>().join(",")
}

impl SncIncidence {
    /// Checks the structural invariants: known components, unique subsets,
    /// homogeneous classes of the declared dimension, and the codimension
    /// rule `dim D_J = dim D_J' - (|J| - |J'|)` for nested pairs present.
    pub fn validate(&self) -> Result<(), IncidenceError> {
        let known: BTreeSet<&String> = self.components.iter().collect();
        let mut seen: BTreeSet<&BTreeSet<String>> = BTreeSet::new();
        for s in &self.strata {
            if s.subset.is_empty() {
                return Err(IncidenceError::EmptySubset);
            }
            for name in &s.subset {
                if !known.contains(name) {
                    return Err(IncidenceError::UnknownComponent(name.clone()));
                }
            }
            if !seen.insert(&s.subset) {
                return Err(IncidenceError::DuplicateSubset(subset_label(&s.subset)));
            }
            if !s.class.is_homogeneous() {
                return Err(IncidenceError::Inhomogeneous { subset: subset_label(&s.subset) });
            }
            if let Some(d) = s.class.degree() {
                if d != s.dim {
                    return Err(IncidenceError::DegreeMismatch {
                        subset: subset_label(&s.subset),
                        got: Some(d),
                        dim: s.dim,
                    });
                }
            }
        }
        for a in &self.strata {
            for b in &self.strata {
                if a.subset.len() < b.subset.len() && a.subset.is_subset(&b.subset) {
                    let expected = (b.subset.len() - a.subset.len()) as u32;
                    let got = a.dim as i64 - b.dim as i64;
                    if got != expected as i64 {
                        return Err(IncidenceError::DimInconsistent {
                            small: subset_label(&a.subset),
                            large: subset_label(&b.subset),
                            expected,
                            got,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The boundary class `sum_{J != 0} (-1)^{|J|-1} [D_J] * [P^{|J|-1}]`,
    /// which depends only on the open complement.
    pub fn boundary_class(&self) -> Result<MotivicClass, IncidenceError> {
        self.validate()?;
        let mut acc = MotivicClass::zero();
        for s in &self.strata {
            let j = s.subset.len() as u32;
            let term = s.class.scale(TLPoly::pn(j - 1).as_poly());
            acc = if j % 2 == 1 { acc.add(&term) } else { acc.add(&term.neg()) };
        }
        Ok(acc)
    }
}

/// JSON file format for incidence data: component names plus one record
/// per nonempty stratum, whose class is a class expression.
#[derive(Deserialize)]
struct IncidenceFile {
    components: Vec<String>,
    strata: Vec<StratumFile>,
}

#[derive(Deserialize)]
struct StratumFile {
    subset: Vec<String>,
    class: String,
    dim: u32,
}

#[derive(Debug, thiserror::Error)]
pub enum IncidenceLoadError {
    #[error("invalid incidence JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("stratum {subset:?}: {source}")]
    ClassExpr { subset: String, source: ExprError },
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
}

/// Parses and validates incidence data from its JSON representation.
pub fn load_incidence(json: &str, table: &AtomTable) -> Result<SncIncidence, IncidenceLoadError> {
    let file: IncidenceFile = serde_json::from_str(json)?;
    let mut strata = Vec::new();
    for s in file.strata {
        let class = parse_stratum_class(&s.class, table, &s.subset)?;
        let subset: BTreeSet<String> = s.subset.into_iter().collect();
        strata.push(Stratum { subset, class, dim: s.dim });
    }
    let inc = SncIncidence { components: file.components, strata };
    inc.validate()?;
    Ok(inc)
}

fn parse_stratum_class(
    expr: &str,
    table: &AtomTable,
    subset: &[String],
) -> Result<MotivicClass, IncidenceLoadError> {
    crate::expr::parse_class(expr, table).map_err(|source| IncidenceLoadError::ClassExpr {
        subset: subset.join(","),
        source,
    })
}

/// Compares the boundary classes of two compactification datasets. `Equal`
/// means the free-model classes agree exactly (so the compactifications
/// are compatible with bounding the same open variety); a separating
/// measure certifies that they cannot.
pub fn compare_compactifications(
    inc1: &SncIncidence,
    inc2: &SncIncidence,
    table: &AtomTable,
) -> Result<Verdict, IncidenceError> {
    let b1 = inc1.boundary_class()?;
    let b2 = inc2.boundary_class()?;
    Ok(compare_classes(&b1, &b2, table))
}

/// Cone criterion: a cone over a smooth projective `Y` of dimension `n`
/// has D-singularities exactly when `[Y] = [P^n]`.
pub fn cone_dsing_check(
    y: &MotivicClass,
    n: u32,
    table: &AtomTable,
) -> Result<Verdict, IncidenceError> {
    if !y.is_homogeneous() {
        return Err(IncidenceError::Inhomogeneous { subset: "Y".to_string() });
    }
    if let Some(d) = y.degree() {
        if d != n {
            return Err(IncidenceError::DegreeMismatch {
                subset: "Y".to_string(),
                got: Some(d),
                dim: n,
            });
        }
    }
    let pn = MotivicClass::from_poly(TLPoly::pn(n).into_poly());
    Ok(compare_classes(y, &pn, table))
}

/// Isolated-singularity criterion in ambient dimension `n + 1`: the
/// exceptional incidence data must satisfy
/// `sum (-1)^{|J|-1} [D_J][P^{|J|-1}] = [P^n]`.
pub fn isolated_dsing_check(
    inc: &SncIncidence,
    n: u32,
    table: &AtomTable,
) -> Result<Verdict, IncidenceError> {
    let b = inc.boundary_class()?;
    let pn = MotivicClass::from_poly(TLPoly::pn(n).into_poly());
    Ok(compare_classes(&b, &pn, table))
}
