//! Geometry-facing checkers built on the motivic core: gluing-morphism
//! boundary classes from snc incidence data, D-singularity tests (cone,
//! isolated, Brieskorn arithmetic), and the simplicial-toric verifier.

pub mod brieskorn;
pub mod fan;
pub mod glue;

use serde::Serialize;

use crate::measure::{birational, hodge_deligne, point_count, stably_birational};
use crate::motivic::{AtomTable, MotivicClass};

/// Three-valued comparison verdict, reflecting the semi-decidability of
/// equality in the true ring: exact agreement in the free model proves
/// equality, a separating measure proves inequality, and otherwise the
/// question stays open.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equal,
    Separated { measure: String },
    Inconclusive,
}

/// Compares two classes, trying each registered measure as a separator
/// when they differ formally.
pub fn compare_classes(a: &MotivicClass, b: &MotivicClass, table: &AtomTable) -> Verdict {
    if a == b {
        return Verdict::Equal;
    }
    if let Ok(spec) = point_count(table) {
        if let (Ok(va), Ok(vb)) = (spec.apply(a), spec.apply(b)) {
            if va != vb {
                return Verdict::Separated { measure: spec.name };
            }
        }
    }
    if let Ok(spec) = hodge_deligne(table) {
        if let (Ok(va), Ok(vb)) = (spec.apply(a), spec.apply(b)) {
            if va != vb {
                return Verdict::Separated { measure: spec.name };
            }
        }
    }
    for spec in [birational(table), stably_birational(table)] {
        if let (Ok(va), Ok(vb)) = (spec.apply(a), spec.apply(b)) {
            if va != vb {
                return Verdict::Separated { measure: spec.name };
            }
        }
    }
    Verdict::Inconclusive
}
