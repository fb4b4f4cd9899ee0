//! Exact symbolic computation in the graded Grothendieck ring of
//! varieties, modeled as a quadratic extension of its smooth-proper
//! subring.
//!
//! The crate computes in a *free model*: formal `Z[T, L]`-combinations of
//! user-declared smooth-proper atom symbols. Exact equality in the model
//! implies equality in the true ring; inequality is certified by motivic
//! measures. On top of the core algebra sit lambda-ring and Adams
//! machinery, Kapranov zeta functions with Hankel-determinant rationality
//! tests, and geometry-facing checkers for gluing data, Brieskorn
//! hypersurfaces, and simplicial toric fans.

pub mod expr;
pub mod geom;
pub mod lambda;
pub mod measure;
pub mod monoid;
pub mod motivic;
pub mod tlpoly;
pub mod varpoly;
pub mod zeta;
