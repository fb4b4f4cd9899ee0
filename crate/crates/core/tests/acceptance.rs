//! Acceptance gate: one test per criterion, each ending in a single
//! pass/fail line. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use motivic::geom::brieskorn::{brieskorn_rhm, brieskorn_rhm_lcm_oracle, BrieskornSpec};
use motivic::geom::fan::{hirzebruch_fan, p_delta, resolve_2d, toric_class, toric_dsing_verify, Fan};
use motivic::geom::glue::{compare_compactifications, load_incidence, SncIncidence, Stratum};
use motivic::geom::Verdict;
use motivic::lambda::{lambda_t, adams, solve_sigma_division};
use motivic::measure::Ring;
use motivic::motivic::{
    bgl_class, blowup_class, gl_class, load_atom_table, proj_bundle_class, AtomTable, MotivicClass,
};
use motivic::tlpoly::{DenomFactor, TLFraction, TLPoly};
use motivic::varpoly::VarPoly;
use motivic::zeta::{binomial_hankel_det, hankel_det, identity_multiset_certificate, kapranov_zeta};

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("cannot read {path}: {e}"))
}

fn pn_class(k: u32) -> MotivicClass {
    MotivicClass::from_poly(TLPoly::pn(k).into_poly())
}

#[test]
fn criterion_01_projections_of_tau_powers() {
    let start = Instant::now();
    for k in 1..=32u32 {
        let c = MotivicClass::from_poly(TLPoly::tau().pow(k + 1));
        assert_eq!(c.pi2(), pn_class(k), "pi2(tau^{})", k + 1);
        let want_pi1 = MotivicClass::from_poly(
            -&(&(&TLPoly::tau() * &TLPoly::lef()) * &TLPoly::pn(k - 1).into_poly()),
        );
        assert_eq!(c.pi1(), want_pi1, "pi1(tau^{})", k + 1);
        assert_eq!(c.pi1().add(&c.pi2().scale(&TLPoly::tau())), c);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 01 (pi-projections, k <= 32, {elapsed:?}): PASS");
}

fn random_class(rng: &mut StdRng) -> MotivicClass {
    let atom_pool = [("A", 1u32), ("B", 2), ("C", 3), ("D", 1), ("E", 2), ("F", 4)];
    let mut acc = MotivicClass::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = MotivicClass::one();
        for _ in 0..rng.gen_range(0..=2) {
            let (name, dim) = atom_pool[rng.gen_range(0..atom_pool.len())];
            term = term.mul(&MotivicClass::atom(name, dim));
        }
        let mut poly = TLPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            poly = &poly
                + &TLPoly::monomial(
                    rng.gen_range(-9i64..=9),
                    rng.gen_range(0..=10u32),
                    rng.gen_range(0..=10u32),
                );
        }
        acc = acc.add(&term.scale(&poly));
    }
    acc
}

#[test]
fn criterion_02_involution_algebra_randomized() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..1000 {
        let a = random_class(&mut rng);
        let b = random_class(&mut rng);
        assert_eq!(a.involute().involute(), a, "D is an involution");
        assert_eq!(
            a.mul(&b).involute(),
            a.involute().mul(&b.involute()),
            "D is multiplicative"
        );
        assert_eq!(a.pi1().add(&a.pi2().scale(&TLPoly::tau())), a, "a = pi1 + tau*pi2");
        assert_eq!(a.involute().pi2(), a.pi2().neg(), "pi2 o D = -pi2");
    }
    println!("criterion 02 (involution algebra on 1000 random classes): PASS");
}

#[test]
fn criterion_03_blowup_consistency() {
    let bl = blowup_class(&pn_class(2), &MotivicClass::one(), 2).unwrap();
    let pb = proj_bundle_class(&pn_class(1), 2).unwrap();
    let want = MotivicClass::from_poly(TLPoly::pn(1).as_poly().pow(2));
    assert_eq!(bl, want);
    assert_eq!(pb, want);
    println!("criterion 03 (blow-up of a point in the plane vs P^1-bundle): PASS");
}

#[test]
fn criterion_04_lambda_machinery() {
    let table = AtomTable::new();
    // lambda^m of the P^1 class.
    let z = lambda_t(&pn_class(1), 12, &table).unwrap();
    for m in 1..=12 {
        assert_eq!(z.coeff(m), &pn_class(m), "lambda^{m}(P^1)");
    }
    // Additivity and tau/L-linearity on randomized polynomial classes.
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    for _ in 0..10 {
        let a = MotivicClass::from_poly(TLPoly::monomial(
            rng.gen_range(-5i64..=5),
            rng.gen_range(0..=4u32),
            rng.gen_range(0..=4u32),
        ))
        .add(&MotivicClass::from_poly(TLPoly::constant(rng.gen_range(-3i64..=3))));
        let b = MotivicClass::from_poly(TLPoly::monomial(
            rng.gen_range(-5i64..=5),
            rng.gen_range(0..=4u32),
            rng.gen_range(0..=4u32),
        ));
        let sum = lambda_t(&a.add(&b), 10, &table).unwrap();
        let prod = lambda_t(&a, 10, &table)
            .unwrap()
            .mul(&lambda_t(&b, 10, &table).unwrap());
        assert!(sum == prod, "lambda_t is additive-to-multiplicative");
        let (p, q) = (rng.gen_range(0..=3u32), rng.gen_range(0..=3u32));
        let scaled = lambda_t(&a.scale(&TLPoly::monomial(1, p, q)), 6, &table).unwrap();
        let plain = lambda_t(&a, 6, &table).unwrap();
        for m in 1..=6 {
            assert_eq!(
                scaled.coeff(m),
                &plain.coeff(m).scale(&TLPoly::monomial(1, m * p, m * q)),
                "tau/L-linearity of lambda^{m}"
            );
        }
    }
    // Adams operations on line classes.
    for n in 1..=8 {
        for (a, b) in [(0u32, 0u32), (1, 0), (0, 1), (2, 3), (3, 1)] {
            let c = MotivicClass::from_poly(TLPoly::monomial(1, a, b));
            let want = MotivicClass::from_poly(TLPoly::monomial(1, n * a, n * b));
            assert_eq!(adams(n, &c, &table).unwrap(), want, "psi_{n}(tau^{a} L^{b})");
        }
    }
    println!("criterion 04 (lambda^m(P^1) = P^m, additivity, Adams on lines): PASS");
}

#[test]
fn criterion_05_sigma_division_roundtrip() {
    let table = AtomTable::new();
    let tau = TLPoly::tau();
    let lef = TLPoly::lef();
    let fs = [
        lef.clone(),
        &tau * &lef,
        &lef - &tau,
        &lef.pow(2) - &tau.pow(2),
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    for f in &fs {
        for _ in 0..20 {
            let mut alpha = TLPoly::zero();
            for _ in 0..rng.gen_range(1..=3) {
                alpha = &alpha
                    + &TLPoly::monomial(
                        rng.gen_range(-4i64..=4),
                        rng.gen_range(0..=3u32),
                        rng.gen_range(0..=3u32),
                    );
            }
            let alpha = MotivicClass::from_poly(alpha);
            let fa = alpha.scale(f);
            let psi = lambda_t(&fa, 10, &table).unwrap();
            let phi = solve_sigma_division(f, &psi, 10).unwrap();
            assert!(phi == lambda_t(&alpha, 10, &table).unwrap());
        }
    }
    println!("criterion 05 (sigma_t-division round-trip, 4 divisors x 20 classes): PASS");
}

#[test]
fn criterion_06_zeta_p1_rationality() {
    let table = AtomTable::new();
    let z = kapranov_zeta(&pn_class(1), 25, &table).unwrap();
    for m in 1..=20 {
        assert!(hankel_det(&z, m, 2).is_zero(), "j = 2 Hankel determinant at m = {m}");
    }
    println!("criterion 06 (Z_P1 satisfies the order-2 Hankel recurrence, m <= 20): PASS");
}

#[test]
fn criterion_07_irrationality_engine() {
    let start = Instant::now();
    for h in 2..=5u32 {
        for j in 1..=3u32 {
            let cert = identity_multiset_certificate(h, j);
            assert!(cert.certified, "certificate h = {h}, j = {j}");
            for m in 1..=10u32 {
                let d = binomial_hankel_det(h, j, m);
                assert!(!d.is_zero(), "binomial Hankel det h = {h}, j = {j}, m = {m}");
                if j >= h {
                    let collapsed = d.collapse(|s| VarPoly::constant(s.0.clone()));
                    assert!(collapsed.is_zero(), "integer collapse h = {h}, j = {j}, m = {m}");
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    println!("criterion 07 (binomial Hankel non-cancellation grid, {elapsed:?}): PASS");
}

#[test]
fn criterion_08_brieskorn_table() {
    let check = |exponents: Vec<u64>, want_rhm: bool| {
        let spec = BrieskornSpec::new(exponents.clone()).unwrap();
        let got = brieskorn_rhm(&spec);
        assert_eq!(got.rhm, want_rhm, "exponents {exponents:?}");
        let oracle = brieskorn_rhm_lcm_oracle(&spec);
        assert_eq!(got.rhm, oracle.rhm, "oracle disagrees on {exponents:?}");
        if let Some(w) = &got.witness {
            let sum: num_rational::BigRational = w
                .iter()
                .zip(&exponents)
                .map(|(&b, &a)| {
                    num_rational::BigRational::new(BigInt::from(b), BigInt::from(a))
                })
                .sum();
            assert!(sum.denom() == &BigInt::from(1), "witness sum not integral");
        }
    };
    for n in 2..=6usize {
        for d in 2..=7u64 {
            // (1): n-1 squares plus x^d.
            let mut e1 = vec![2u64; n - 1];
            e1.push(d);
            check(e1, n % 2 == 1 || d % 2 == 1);
            // (3): n-1 copies of d-1 plus x^d.
            if d >= 3 {
                let mut e3 = vec![d - 1; n - 1];
                e3.push(d);
                check(e3, true);
            }
        }
        // (2): n-2 squares plus two cubes.
        let mut e2 = vec![2u64; n - 2];
        e2.extend([3, 3]);
        check(e2, n % 2 == 1);
    }
    println!("criterion 08 (Brieskorn families (1)-(3), n <= 6, d <= 7, with LCM oracle): PASS");
}

fn candidate_rays(dim: usize) -> Vec<Vec<i64>> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    let mut out = Vec::new();
    let mut v = vec![0i64; dim];
    loop {
        let g = v.iter().copied().fold(0, gcd);
        if g == 1 {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            v[i] += 1;
            if v[i] <= 2 {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn criterion_09_toric_verifier() {
    // p_delta(Delta, Delta) = 0 and symmetry under chains of subdivisions.
    for dim in [2usize, 3] {
        let rays: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        let delta = Fan::from_max_cones(dim, rays, vec![(0..dim).collect()]).unwrap();
        assert!(p_delta(&delta, &delta).unwrap().is_zero(), "p(Delta, Delta) in dim {dim}");
        let candidates = candidate_rays(dim);
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut stack = vec![(delta.clone(), 0u32)];
        while let Some((fan, depth)) = stack.pop() {
            let p = p_delta(&fan, &delta).unwrap();
            assert!(p.is_symmetric(), "p not symmetric in dim {dim}: {p}");
            if depth == 3 {
                continue;
            }
            for ray in &candidates {
                if fan.rays().contains(ray) {
                    continue;
                }
                let next = fan.star_subdivision(ray).unwrap();
                let key = format!("{:?}|{:?}", next.rays(), next.cones());
                if seen.insert(key) {
                    stack.push((next, depth + 1));
                }
            }
        }
    }
    // Hirzebruch surface classes.
    for a in 0..=5 {
        let f = hirzebruch_fan(a);
        assert!(f.is_smooth());
        assert_eq!(
            toric_class(&f),
            MotivicClass::from_poly(TLPoly::pn(1).as_poly().pow(2)),
            "class of F_{a}"
        );
    }
    // A_k cone resolutions, certified D-singular.
    for k in 1..=12i64 {
        let delta =
            Fan::from_max_cones(2, vec![vec![1, 0], vec![1, k + 1]], vec![vec![0, 1]]).unwrap();
        let sigma = resolve_2d(&delta).unwrap();
        assert!(sigma.is_smooth(), "A_{k} resolution smooth");
        let report = toric_dsing_verify(&delta, &sigma).unwrap();
        assert!(report.certified, "A_{k} certified");
    }
    println!("criterion 09 (toric verifier: subdivision chains, F_a, A_k): PASS");
}

#[test]
fn criterion_10_gluing() {
    // Two-divisor template.
    let d1 = MotivicClass::atom("D1", 1);
    let d2 = MotivicClass::atom("D2", 1);
    let d12 = MotivicClass::atom("D12", 0);
    let set = |names: &[&str]| -> BTreeSet<String> { names.iter().map(|s| s.to_string()).collect() };
    let inc = SncIncidence {
        components: vec!["1".to_string(), "2".to_string()],
        strata: vec![
            Stratum { subset: set(&["1"]), class: d1.clone(), dim: 1 },
            Stratum { subset: set(&["2"]), class: d2.clone(), dim: 1 },
            Stratum { subset: set(&["1", "2"]), class: d12.clone(), dim: 0 },
        ],
    };
    let want = d1.add(&d2).add(&d12.scale(TLPoly::pn(1).as_poly()).neg());
    assert_eq!(inc.boundary_class().unwrap(), want);
    // Fixtures.
    let atoms = load_atom_table(&fixture("atoms.json")).unwrap();
    let q = load_incidence(&fixture("quadric_surface.json"), &atoms).unwrap();
    let p2 = load_incidence(&fixture("projective_plane.json"), &atoms).unwrap();
    assert_eq!(
        compare_compactifications(&q, &p2, &atoms).unwrap(),
        Verdict::Separated { measure: "hodge-deligne".to_string() }
    );
    let f0 = load_incidence(&fixture("hirzebruch_F0.json"), &atoms).unwrap();
    let f1 = load_incidence(&fixture("hirzebruch_F1.json"), &atoms).unwrap();
    assert_eq!(compare_compactifications(&f0, &f1, &atoms).unwrap(), Verdict::Equal);
    assert_eq!(
        f0.boundary_class().unwrap(),
        MotivicClass::from_poly(TLPoly::pn(1).as_poly().pow(2))
    );
    println!("criterion 10 (gluing template and compactification fixtures): PASS");
}

#[test]
fn criterion_11_localized_identities() {
    for n in 1..=6 {
        assert!(gl_class(n).mul(&bgl_class(n)).is_one(), "gl * bgl at n = {n}");
    }
    // L*x = (L - tau) + tau*x solves to x = 1.
    let tau = TLPoly::tau();
    let lef = TLPoly::lef();
    let x = TLFraction::new(&lef - &tau, vec![DenomFactor::LMinusTau]).unwrap();
    assert!(x.is_one());
    let lhs = TLFraction::from_poly(lef.clone()).mul(&x);
    let rhs = TLFraction::from_poly(&lef - &tau).add(&TLFraction::from_poly(tau.clone()).mul(&x));
    assert!(lhs.eq_frac(&rhs));
    println!("criterion 11 (gl * bgl = 1 for n <= 6, unity equation): PASS");
}
