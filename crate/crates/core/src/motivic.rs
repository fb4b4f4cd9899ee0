//! The free computable model of the graded Grothendieck ring of varieties:
//! formal `Z[T, L]`-combinations of smooth-proper atom symbols, with the
//! involution `D`, the projections `pi1`/`pi2`, and the blow-up and
//! projective-bundle class constructors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::measure::Ring;
use crate::tlpoly::{DenomFactor, SymPoly, TLFraction, TLPoly};

/// A commutative multiset of atoms, each a declared smooth-proper symbol
/// with its dimension. The empty monomial is the class of the point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct AtomMonomial {
    atoms: Vec<(String, u32)>,
}

impl AtomMonomial {
    pub fn unit() -> Self {
        AtomMonomial::default()
    }

    pub fn single(name: &str, dim: u32) -> Self {
        AtomMonomial { atoms: vec![(name.to_string(), dim)] }
    }

    pub fn product(&self, other: &AtomMonomial) -> AtomMonomial {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        atoms.sort();
        AtomMonomial { atoms }
    }

    pub fn is_unit(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.atoms.iter().map(|(_, d)| d).sum()
    }

    pub fn atoms(&self) -> &[(String, u32)] {
        &self.atoms
    }

    /// The single atom name when the monomial has exactly one factor.
    pub fn as_single_atom(&self) -> Option<(&str, u32)> {
        match self.atoms.as_slice() {
            [(name, dim)] => Some((name, *dim)),
            _ => None,
        }
    }
}

impl fmt::Display for AtomMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self.atoms.iter().map(|(n, _)| n.as_str()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Element of the free `Z[T, L]`-module on atom monomials. Exact equality
/// here implies equality in the true ring; inequality is only certified by
/// a separating measure.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct MotivicClass {
    terms: BTreeMap<AtomMonomial, TLPoly>,
}

impl MotivicClass {
    pub fn zero() -> Self {
        MotivicClass::default()
    }

    /// The class of the point.
    pub fn one() -> Self {
        Self::from_poly(TLPoly::one())
    }

    /// A pure polynomial class (coefficient of the unit monomial).
    pub fn from_poly(p: TLPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(AtomMonomial::unit(), p);
        }
        MotivicClass { terms }
    }

    pub fn atom(name: &str, dim: u32) -> Self {
        Self::from_term(AtomMonomial::single(name, dim), TLPoly::one())
    }

    pub fn from_term(m: AtomMonomial, c: TLPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MotivicClass { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AtomMonomial, &TLPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &AtomMonomial) -> TLPoly {
        self.terms.get(m).cloned().unwrap_or_else(TLPoly::zero)
    }

    /// Coefficient of the unit monomial; the whole class if it is a pure
    /// polynomial class, in which case `as_poly` returns `Some`.
    pub fn as_poly(&self) -> Option<&TLPoly> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&AtomMonomial::unit()),
            _ => None,
        }
    }

    pub fn is_poly_class(&self) -> bool {
        self.terms.is_empty() || self.as_poly().is_some()
    }

    fn insert_add(terms: &mut BTreeMap<AtomMonomial, TLPoly>, key: AtomMonomial, c: &TLPoly) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&key) {
            Some(e) => {
                let sum = &*e + c;
                if sum.is_zero() {
                    terms.remove(&key);
                } else {
                    *e = sum;
                }
            }
            None => {
                terms.insert(key, c.clone());
            }
        }
    }

    pub fn scale(&self, p: &TLPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, m.clone(), &(c * p));
        }
        MotivicClass { terms }
    }

    /// The involution `D`: swaps `T` and `L` in every coefficient and fixes
    /// atoms.
    pub fn involute(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.swap())).collect();
        MotivicClass { terms }
    }

    /// Projection to the symmetric-coefficient component: `alpha = pi1 + T*pi2`.
    pub fn pi1(&self) -> Self {
        self.project(|a, _| a)
    }

    pub fn pi2(&self) -> Self {
        self.project(|_, b| b)
    }

    fn project(&self, pick: impl Fn(SymPoly, SymPoly) -> SymPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (a, b) = c.sym_decompose();
            let chosen = pick(a, b).into_poly();
            if !chosen.is_zero() {
                terms.insert(m.clone(), chosen);
            }
        }
        MotivicClass { terms }
    }

    /// Divides every coefficient exactly by `p`; `None` when some
    /// coefficient is not a multiple of `p` in `Z[T, L]`.
    pub fn div_exact_poly(&self, p: &TLPoly) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let q = c.div_exact(p)?;
            if !q.is_zero() {
                terms.insert(m.clone(), q);
            }
        }
        Some(MotivicClass { terms })
    }

    /// `max` over terms of `dim(monomial) + degree(coefficient term)`;
    /// `None` for the zero class.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .flat_map(|(m, c)| c.terms().map(move |(&(a, b), _)| m.dim() + a + b))
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self
            .terms
            .iter()
            .flat_map(|(m, c)| c.terms().map(move |(&(a, b), _)| m.dim() + a + b));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }
}

impl Ring for MotivicClass {
    fn zero() -> Self {
        MotivicClass::zero()
    }

    fn one() -> Self {
        MotivicClass::one()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            Self::insert_add(&mut terms, m.clone(), c);
        }
        MotivicClass { terms }
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MotivicClass { terms }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                Self::insert_add(&mut terms, m1.product(m2), &(c1 * c2));
            }
        }
        MotivicClass { terms }
    }

    fn from_bigint(c: &BigInt) -> Self {
        Self::from_poly(TLPoly::from_bigint(c.clone()))
    }
}

impl fmt::Display for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending monomial order puts the unit (constant) part last.
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_unit() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else if c.num_terms() == 1 {
                write!(f, "{c}*{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MotivicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("blow-up requires codimension >= 2, got {0}")]
    BadCodim(u32),
    #[error("projective bundle requires rank >= 1, got {0}")]
    BadRank(u32),
    #[error("degree mismatch: expected deg(Y) = deg(X) - {codim}, got deg(X) = {degx:?}, deg(Y) = {degy:?}")]
    DegreeMismatch { codim: u32, degx: Option<u32>, degy: Option<u32> },
    #[error("inhomogeneous input to a degree-checked constructor")]
    Inhomogeneous,
}

/// Blow-up relation: the class of the blow-up of `X` along a center `Y` of
/// codimension `codim = k+1` is `X + T*L*[P^{k-1}]*Y`.
pub fn blowup_class(
    x: &MotivicClass,
    y: &MotivicClass,
    codim: u32,
) -> Result<MotivicClass, ClassError> {
    if codim < 2 {
        return Err(ClassError::BadCodim(codim));
    }
    if !x.is_homogeneous() || !y.is_homogeneous() {
        return Err(ClassError::Inhomogeneous);
    }
    if let (Some(dx), Some(dy)) = (x.degree(), y.degree()) {
        if dy + codim != dx {
            return Err(ClassError::DegreeMismatch { codim, degx: x.degree(), degy: y.degree() });
        }
    }
    let k = codim - 1;
    let tl = TLPoly::monomial(1, 1, 1);
    let factor = &tl * TLPoly::pn(k - 1).as_poly();
    Ok(x.add(&y.scale(&factor)))
}

/// Projective bundle relation: the class of a Zariski-locally-trivial
/// `P^{k}`-fibration over `Y`, with `rank = k+1`, is `[P^k]*Y`.
pub fn proj_bundle_class(y: &MotivicClass, rank: u32) -> Result<MotivicClass, ClassError> {
    if rank < 1 {
        return Err(ClassError::BadRank(rank));
    }
    Ok(y.scale(TLPoly::pn(rank - 1).as_poly()))
}

/// `[GL_n] = prod_{i=0}^{n-1} (L^n - L^i T^{n-i})` as a pure coefficient.
pub fn gl_poly(n: u32) -> TLPoly {
    assert!(n >= 1);
    let mut p = TLPoly::one();
    for i in 0..n {
        let factor = &TLPoly::monomial(1, 0, n) - &TLPoly::monomial(1, n - i, i);
        p = &p * &factor;
    }
    p
}

/// Factorization of `[GL_n]` into permitted denominator factors:
/// `L^n - L^i T^{n-i} = L^i * (L - T) * [P^{n-i-1}]`.
pub fn gl_factors(n: u32) -> Vec<DenomFactor> {
    assert!(n >= 1);
    let mut factors = Vec::new();
    for i in 0..n {
        for _ in 0..i {
            factors.push(DenomFactor::Lef);
        }
        factors.push(DenomFactor::LMinusTau);
        if n - i - 1 >= 1 {
            factors.push(DenomFactor::Pn(n - i - 1));
        }
    }
    factors.sort();
    factors
}

pub fn gl_class(n: u32) -> TLFraction {
    TLFraction::from_poly(gl_poly(n))
}

/// `{BGL_n} = {GL_n}^{-1}`.
pub fn bgl_class(n: u32) -> TLFraction {
    TLFraction::new(TLPoly::one(), gl_factors(n)).expect("gl factors are permitted")
}

/// Per-atom measure data supplied with the atom table. All fields are
/// optional; a measure construction fails only when it is applied to a
/// class whose atoms lack the relevant datum.
#[derive(Clone, Debug, Default, Deserialize)]
pub struct AtomMeasures {
    /// Point count as an integer or polynomial expression in `q`.
    pub count_q: Option<serde_json::Value>,
    /// Hodge-Deligne E-polynomial in `u`, `v`.
    #[serde(rename = "E")]
    pub e_poly: Option<String>,
    /// Name of the (stable) birational equivalence class.
    pub sb: Option<String>,
    /// Per-`d` plurigenus vectors `[h_d^1, ..., h_d^n]`.
    #[serde(default)]
    pub plurigenera: BTreeMap<String, Vec<u64>>,
}

/// A declared smooth-proper symbol. The library never verifies smoothness
/// or properness; the declaration is the user's contract.
#[derive(Clone, Debug)]
pub struct Atom {
    pub name: String,
    pub dim: u32,
    pub measures: AtomMeasures,
    /// `m -> [Sym^m atom]`, user-supplied symmetric power classes.
    pub sym: BTreeMap<u32, MotivicClass>,
}

#[derive(Debug, thiserror::Error)]
pub enum AtomTableError {
    #[error("duplicate atom name {0:?}")]
    DuplicateName(String),
    #[error("atom {atom:?}: sym table entry for m = {m} has degree {got:?}, expected {want}")]
    SymDegree { atom: String, m: u32, got: Option<u32>, want: u32 },
    #[error("atom {atom:?}: sym table entry for m = {m} is inhomogeneous")]
    SymInhomogeneous { atom: String, m: u32 },
}

/// Immutable registry of atoms; loaded once, then shared.
#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    atoms: BTreeMap<String, Atom>,
}

impl AtomTable {
    pub fn new() -> Self {
        AtomTable::default()
    }

    pub fn insert(&mut self, atom: Atom) -> Result<(), AtomTableError> {
        if self.atoms.contains_key(&atom.name) {
            return Err(AtomTableError::DuplicateName(atom.name));
        }
        for (&m, class) in &atom.sym {
            if !class.is_homogeneous() {
                return Err(AtomTableError::SymInhomogeneous { atom: atom.name, m });
            }
            let want = m * atom.dim;
            if let Some(got) = class.degree() {
                if got != want {
                    return Err(AtomTableError::SymDegree {
                        atom: atom.name,
                        m,
                        got: Some(got),
                        want,
                    });
                }
            }
        }
        self.atoms.insert(atom.name.clone(), atom);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Atom> {
        self.atoms.get(name)
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.values()
    }
}

/// One entry of the atom-table JSON file: an array of these objects, e.g.
/// `[{"name": "C", "dim": 1, "measures": {"count_q": "q + 1"},
///    "sym": {"2": "P(2)"}}]`. `sym` values are class expressions and may
/// reference any atom declared in the same file.
#[derive(Debug, Deserialize)]
pub struct AtomFileEntry {
    pub name: String,
    pub dim: u32,
    #[serde(default)]
    pub measures: AtomMeasures,
    #[serde(default)]
    pub sym: BTreeMap<String, String>,
}

#[derive(Debug, thiserror::Error)]
pub enum AtomLoadError {
    #[error("invalid atom table JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] AtomTableError),
    #[error("atom {atom:?}: sym key {key:?} is not a positive integer")]
    BadSymKey { atom: String, key: String },
    #[error("atom {atom:?}, sym entry {m}: {source}")]
    SymExpr { atom: String, m: u32, source: crate::expr::ExprError },
}

/// Loads an atom table from its JSON file format. Symmetric-power
/// expressions are resolved in a second pass, so they may reference any
/// atom in the file.
pub fn load_atom_table(json: &str) -> Result<AtomTable, AtomLoadError> {
    let entries: Vec<AtomFileEntry> = serde_json::from_str(json)?;
    let mut names_only = AtomTable::new();
    for e in &entries {
        names_only.insert(Atom {
            name: e.name.clone(),
            dim: e.dim,
            measures: e.measures.clone(),
            sym: BTreeMap::new(),
        })?;
    }
    let mut table = AtomTable::new();
    for e in entries {
        let mut sym = BTreeMap::new();
        for (key, expr) in &e.sym {
            let m: u32 = key.parse().ok().filter(|&m| m >= 1).ok_or_else(|| {
                AtomLoadError::BadSymKey { atom: e.name.clone(), key: key.clone() }
            })?;
            let class = crate::expr::parse_class(expr, &names_only)
                .map_err(|source| AtomLoadError::SymExpr { atom: e.name.clone(), m, source })?;
            sym.insert(m, class);
        }
        table.insert(Atom { name: e.name, dim: e.dim, measures: e.measures, sym })?;
    }
    Ok(table)
}
