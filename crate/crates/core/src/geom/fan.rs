//! Simplicial fans on an integer lattice: validation, smoothness, star
//! subdivision, refinement maps, the symmetric polynomial `p_Delta(s, t)`,
//! orbit-sum toric classes, and a two-dimensional resolver.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::motivic::MotivicClass;
use crate::tlpoly::TLPoly;

pub type Ray = Vec<i64>;
pub type Cone = BTreeSet<usize>;

/// A fan given by primitive rays and a face-closed list of simplicial
/// cones (as ray-index sets). The empty cone is always present implicitly
/// and is included in the `cones()` enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Ray>,
    /// Sorted: ascending size, then lexicographic. First entry is the
    /// empty cone.
    cones: Vec<Cone>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FanError {
    #[error("ray {0} has {1} coordinates, fan dimension is {2}")]
    RayDim(usize, usize, usize),
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(usize),
    #[error("rays {0} and {1} are equal")]
    DuplicateRay(usize, usize),
    #[error("cone references ray index {0}, only {1} rays")]
    BadRayIndex(usize, usize),
    #[error("duplicate cone {0:?}")]
    DuplicateCone(Vec<usize>),
    #[error("fan is not face-closed: cone {0:?} is listed but its face {1:?} is not")]
    NotFaceClosed(Vec<usize>, Vec<usize>),
    #[error("cone {0:?} has linearly dependent rays (fan not simplicial)")]
    NotSimplicial(Vec<usize>),
    #[error("subdivision ray is outside the support of the fan")]
    RayOutsideSupport,
    #[error("cone {0:?} of the refining fan is contained in no cone of the base fan")]
    NotRefinement(Vec<usize>),
    #[error("base fan must have a unique maximal cone")]
    NoUniqueMaxCone,
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Solves `sum_i x_i * cols_i = target` by Gaussian elimination over the
/// rationals; `None` when inconsistent or underdetermined.
fn solve(cols: &[&Ray], target: &[i64]) -> Option<Vec<BigRational>> {
    let rows = target.len();
    let k = cols.len();
    if k == 0 {
        return if target.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
    }
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<BigRational> =
                cols.iter().map(|c| BigRational::from(BigInt::from(c[r]))).collect();
            row.push(BigRational::from(BigInt::from(target[r])));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for pc in 0..k {
        let Some(sel) = (pr..rows).find(|&r| !m[r][pc].is_zero()) else { continue };
        m.swap(pr, sel);
        let inv = m[pr][pc].recip();
        for x in m[pr].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pr && !m[r][pc].is_zero() {
                let f = m[r][pc].clone();
                for c in 0..=k {
                    let sub = &f * &m[pr][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(pc);
        pr += 1;
    }
    // inconsistent rows
    for r in pr..rows {
        if !m[r][k].is_zero() {
            return None;
        }
    }
    // underdetermined (dependent columns)
    if pivot_cols.len() < k {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = m[row][k].clone();
    }
    Some(x)
}

fn rank(cols: &[&Ray], dim: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|r| cols.iter().map(|c| BigRational::from(BigInt::from(c[r]))).collect())
        .collect();
    let k = cols.len();
    let mut rk = 0;
    for pc in 0..k {
        let Some(sel) = (rk..dim).find(|&r| !m[r][pc].is_zero()) else { continue };
        m.swap(rk, sel);
        let inv = m[rk][pc].recip();
        for x in m[rk].iter_mut() {
            *x *= &inv;
        }
        for r in 0..dim {
            if r != rk && !m[r][pc].is_zero() {
                let f = m[r][pc].clone();
                for c in 0..k {
                    let sub = &f * &m[rk][c];
                    m[r][c] -= sub;
                }
            }
        }
        rk += 1;
    }
    rk
}

fn int_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = BigInt::zero();
            for i in 0..n {
                if m[i][0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != i)
                    .map(|(_, row)| row[1..].to_vec())
                    .collect();
                let c = &m[i][0] * int_det(&minor);
                if i % 2 == 0 {
                    acc += c;
                } else {
                    acc -= c;
                }
            }
            acc
        }
    }
}

fn sort_cones(cones: &mut Vec<Cone>) {
    cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cones.dedup();
}

impl Fan {
    /// Strict constructor: validates rays and requires the nonempty cones
    /// to be listed face-closed (every subset of a listed cone present).
    pub fn new(dim: usize, rays: Vec<Ray>, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        Self::build(dim, rays, cones, false)
    }

    /// Convenience constructor that closes the given (maximal) cones under
    /// taking subsets.
    pub fn from_max_cones(
        dim: usize,
        rays: Vec<Ray>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan, FanError> {
        Self::build(dim, rays, max_cones, true)
    }

    fn build(
        dim: usize,
        rays: Vec<Ray>,
        cone_lists: Vec<Vec<usize>>,
        close: bool,
    ) -> Result<Fan, FanError> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::RayDim(i, r.len(), dim));
            }
            if r.iter().all(|&x| x == 0) {
                return Err(FanError::ZeroRay(i));
            }
            if primitive(r) != *r {
                return Err(FanError::NonPrimitiveRay(i));
            }
            for (j, s) in rays.iter().enumerate().take(i) {
                if r == s {
                    return Err(FanError::DuplicateRay(j, i));
                }
            }
        }
        let mut set: BTreeSet<Cone> = BTreeSet::new();
        set.insert(Cone::new());
        for list in &cone_lists {
            let cone: Cone = list.iter().copied().collect();
            if cone.len() != list.len() {
                return Err(FanError::DuplicateCone(list.clone()));
            }
            if let Some(&bad) = cone.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::BadRayIndex(bad, rays.len()));
            }
            if !set.insert(cone.clone()) && !close {
                return Err(FanError::DuplicateCone(list.clone()));
            }
            if close {
                for k in 1..cone.len() {
                    for sub in cone.iter().copied().combinations(k) {
                        set.insert(sub.into_iter().collect());
                    }
                }
            }
        }
        if !close {
            for cone in set.clone() {
                for k in 1..cone.len() {
                    for sub in cone.iter().copied().combinations(k) {
                        let face: Cone = sub.into_iter().collect();
                        if !set.contains(&face) {
                            return Err(FanError::NotFaceClosed(
                                cone.iter().copied().collect(),
                                face.iter().copied().collect(),
                            ));
                        }
                    }
                }
            }
        }
        let mut cones: Vec<Cone> = set.into_iter().collect();
        sort_cones(&mut cones);
        Ok(Fan { dim, rays, cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// All cones including the empty one, in canonical order.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn max_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| !self.cones.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
            .collect()
    }

    fn cone_rays(&self, cone: &Cone) -> Vec<&Ray> {
        cone.iter().map(|&i| &self.rays[i]).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones
            .iter()
            .all(|c| rank(&self.cone_rays(c), self.dim) == c.len())
    }

    /// Smooth (regular) fan: each cone's rays extend to a basis of the
    /// lattice, i.e. the gcd of the maximal minors of its ray matrix is 1.
    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|c| {
            let k = c.len();
            if k == 0 {
                return true;
            }
            let rays = self.cone_rays(c);
            let mut g = BigInt::zero();
            for rows in (0..self.dim).combinations(k) {
                let m: Vec<Vec<BigInt>> = rays
                    .iter()
                    .map(|r| rows.iter().map(|&i| BigInt::from(r[i])).collect())
                    .collect();
                g = g.gcd(&int_det(&m));
            }
            g == BigInt::one()
        })
    }

    /// Is `point` in the cone spanned by the rays of `cone` (simplicial)?
    fn cone_contains(&self, cone: &Cone, point: &[i64]) -> bool {
        match solve(&self.cone_rays(cone), point) {
            Some(x) => x.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    /// The smallest cone whose span contains `point` (relies on face
    /// closure + simpliciality: the first containing cone in ascending
    /// size order is minimal).
    fn minimal_containing_cone(&self, point: &[i64]) -> Option<usize> {
        self.cones.iter().position(|c| !c.is_empty() && self.cone_contains(c, point))
            .or_else(|| {
                if point.iter().all(|&x| x == 0) {
                    Some(0)
                } else {
                    None
                }
            })
    }

    /// Star subdivision at a primitive ray in the support. Subdividing at
    /// an existing ray returns the fan unchanged.
    pub fn star_subdivision(&self, ray: &[i64]) -> Result<Fan, FanError> {
        let ray = primitive(ray);
        if let Some(i) = self.rays.iter().position(|r| *r == ray) {
            // already a ray: identity if {i} is a cone
            if self.cones.iter().any(|c| c.len() == 1 && c.contains(&i)) {
                return Ok(self.clone());
            }
        }
        let s0_idx = self
            .minimal_containing_cone(&ray)
            .filter(|&i| !self.cones[i].is_empty())
            .ok_or(FanError::RayOutsideSupport)?;
        let s0 = self.cones[s0_idx].clone();
        let mut rays = self.rays.clone();
        let vi = rays.len();
        rays.push(ray);
        let mut new_cones: BTreeSet<Cone> = BTreeSet::new();
        new_cones.insert(Cone::new());
        for cone in &self.cones {
            if !s0.is_subset(cone) {
                new_cones.insert(cone.clone());
            } else {
                for &r in &s0 {
                    let mut c = cone.clone();
                    c.remove(&r);
                    c.insert(vi);
                    // faces of the replacement cones
                    let items: Vec<usize> = c.iter().copied().collect();
                    for k in 0..=items.len() {
                        for sub in items.iter().copied().combinations(k) {
                            new_cones.insert(sub.into_iter().collect());
                        }
                    }
                }
            }
        }
        let mut cones: Vec<Cone> = new_cones.into_iter().collect();
        sort_cones(&mut cones);
        Ok(Fan { dim: self.dim, rays, cones })
    }

    /// For a refinement `self` of `base`, the map sending each cone to the
    /// smallest cone of `base` containing it (as an index into
    /// `base.cones()`).
    pub fn phi_map(&self, base: &Fan) -> Result<Vec<usize>, FanError> {
        let mut phi = Vec::with_capacity(self.cones.len());
        for cone in &self.cones {
            let candidates: Vec<usize> = base
                .cones
                .iter()
                .enumerate()
                .filter(|(_, t)| {
                    cone.iter().all(|&ri| base.cone_contains(t, &self.rays[ri]))
                })
                .map(|(i, _)| i)
                .collect();
            // minimal by size; unique since the candidates are closed
            // under intersection of faces in a simplicial fan
            let best = candidates
                .iter()
                .copied()
                .min_by_key(|&i| base.cones[i].len())
                .ok_or_else(|| FanError::NotRefinement(cone.iter().copied().collect()))?;
            phi.push(best);
        }
        Ok(phi)
    }
}

/// `p_Delta(s, t)` for a simplicial refinement `sigma` of the single
/// simplicial cone fan `delta` (all faces listed):
/// `sum_{sigma' in Sigma} (-1)^{|phi(sigma')|} (s - t)^{|phi| - |sigma'|}
///  t^{n - |phi| + |sigma'|}`, a homogeneous degree-`n` polynomial whose
/// `s <-> t` symmetry is the toric D-singularity certificate. `T` plays
/// `s` and `L` plays `t` in the returned polynomial.
pub fn p_delta(sigma: &Fan, delta: &Fan) -> Result<TLPoly, FanError> {
    let max = delta.max_cones();
    if max.len() != 1 {
        return Err(FanError::NoUniqueMaxCone);
    }
    let n = max[0].len() as u32;
    let phi = sigma.phi_map(delta)?;
    let s_minus_t = &TLPoly::tau() - &TLPoly::lef();
    let mut p = TLPoly::zero();
    for (cone, &phi_idx) in sigma.cones().iter().zip(&phi) {
        let tp = delta.cones()[phi_idx].len() as u32;
        let sp = cone.len() as u32;
        let term = &s_minus_t.pow(tp - sp) * &TLPoly::monomial(1, 0, n - tp + sp);
        p = if tp % 2 == 0 { &p + &term } else { &p - &term };
    }
    Ok(p)
}

/// Orbit sum: the class of the toric variety of a valid fan,
/// `sum_{cones} (L - T)^{n - |cone|} T^{|cone|}` (each orbit is a torus of
/// dimension `n - |cone|`).
pub fn toric_class(fan: &Fan) -> MotivicClass {
    let lt = &TLPoly::lef() - &TLPoly::tau();
    let n = fan.dim() as u32;
    let mut p = TLPoly::zero();
    for cone in fan.cones() {
        let k = cone.len() as u32;
        p = &p + &(&lt.pow(n - k) * &TLPoly::monomial(1, k, 0));
    }
    MotivicClass::from_poly(p)
}

/// Per-face result of the toric D-singularity verifier.
#[derive(Debug, Clone)]
pub struct FaceReport {
    pub face: Vec<usize>,
    pub p: TLPoly,
    pub symmetric: bool,
}

#[derive(Debug, Clone)]
pub struct ToricReport {
    pub faces: Vec<FaceReport>,
    pub certified: bool,
}

/// Verifies D-singularities of the simplicial toric variety of `delta`
/// against a smooth refinement `sigma`: every nonempty face of `delta`
/// must yield a symmetric `p(s, t)` on the induced refinement.
pub fn toric_dsing_verify(delta: &Fan, sigma: &Fan) -> Result<ToricReport, FanError> {
    let phi = sigma.phi_map(delta)?;
    let mut faces = Vec::new();
    for (f_idx, face) in delta.cones().iter().enumerate() {
        if face.is_empty() {
            continue;
        }
        // induced base: the single cone `face` with all its faces
        let delta_sub = Fan::from_max_cones(
            delta.dim(),
            delta.rays().to_vec(),
            vec![face.iter().copied().collect()],
        )?;
        // induced refinement: cones of sigma mapping into `face`
        let sub_cones: Vec<Vec<usize>> = sigma
            .cones()
            .iter()
            .zip(&phi)
            .filter(|(_, &p)| delta.cones()[p].is_subset(face))
            .map(|(c, _)| c.iter().copied().collect())
            .collect();
        let sigma_sub = Fan::from_max_cones(sigma.dim(), sigma.rays().to_vec(), sub_cones)?;
        let p = p_delta(&sigma_sub, &delta_sub)?;
        let symmetric = p.is_symmetric();
        faces.push(FaceReport { face: face.iter().copied().collect(), p, symmetric });
        let _ = f_idx;
    }
    let certified = faces.iter().all(|f| f.symmetric);
    Ok(ToricReport { faces, certified })
}

/// Resolves a two-dimensional fan by repeated star subdivision: each
/// singular cone is split at a Hilbert-basis point of its fundamental
/// parallelepiped with minimal coefficient sum.
pub fn resolve_2d(fan: &Fan) -> Result<Fan, FanError> {
    assert_eq!(fan.dim(), 2, "resolve_2d requires a 2-dimensional fan");
    let mut current = fan.clone();
    loop {
        let Some(bad) = current
            .cones()
            .iter()
            .find(|c| {
                c.len() == 2 && {
                    let rays = current.cone_rays(c);
                    let det = rays[0][0] * rays[1][1] - rays[0][1] * rays[1][0];
                    det.abs() != 1
                }
            })
            .cloned()
        else {
            return Ok(current);
        };
        let idx: Vec<usize> = bad.iter().copied().collect();
        let u = current.rays()[idx[0]].clone();
        let v = current.rays()[idx[1]].clone();
        let pick = interior_hilbert_point(&u, &v).expect("singular cone has an interior point");
        current = current.star_subdivision(&pick)?;
    }
}

/// A nonzero lattice point `su + tv`, `0 <= s, t < 1`, of minimal `s + t`
/// (ties broken lexicographically for determinism).
fn interior_hilbert_point(u: &[i64], v: &[i64]) -> Option<Vec<i64>> {
    let lo = |i: usize| 0.min(u[i].min(v[i]).min(u[i] + v[i]));
    let hi = |i: usize| 0.max(u[i].max(v[i]).max(u[i] + v[i]));
    let mut best: Option<(BigRational, Vec<i64>)> = None;
    for x in lo(0)..=hi(0) {
        for y in lo(1)..=hi(1) {
            if x == 0 && y == 0 {
                continue;
            }
            let p = vec![x, y];
            let u_owned = u.to_vec();
            let v_owned = v.to_vec();
            let Some(coeffs) = solve(&[&u_owned, &v_owned], &p) else { continue };
            let one = BigRational::one();
            if coeffs.iter().any(|c| c.is_negative() || *c >= one) {
                continue;
            }
            let score = &coeffs[0] + &coeffs[1];
            match &best {
                Some((s, bp)) if *s < score || (*s == score && *bp <= p) => {}
                _ => best = Some((score, p)),
            }
        }
    }
    best.map(|(_, p)| primitive(&p))
}

/// JSON file format for fans: `{dim, rays: [[int]], cones: [[ray index]]}`.
#[derive(Debug, Deserialize)]
pub struct FanFile {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl FanFile {
    pub fn into_fan(self) -> Result<Fan, FanError> {
        Fan::new(self.dim, self.rays, self.cones)
    }
}

/// The complete fan of the Hirzebruch surface `F_a`: rays
/// `(1,0), (0,1), (-1,a), (0,-1)` with the four adjacent maximal cones.
pub fn hirzebruch_fan(a: i64) -> Fan {
    Fan::from_max_cones(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .expect("valid fan")
}
