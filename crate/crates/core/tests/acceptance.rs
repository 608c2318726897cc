//! Acceptance suite, part 1: exactness and structural criteria.
//! (Wall-clock scaling criteria live in the CLI crate's acceptance suite,
//! next to the benchmark harness they use.)
//!
//! Each test prints one PASS line; a failed assertion fails the criterion.

use std::time::Instant;

use pscomp::bipoly::{bipoly_mul, bipoly_mul_schoolbook, BiPoly};
use pscomp::compose::compose_series_traced;
use pscomp::powproj::power_projection_traced;
use pscomp::reference::{compose_horner, duality_check, powproj_naive};
use pscomp::rng::SplitMix64;
use pscomp::unipoly::{poly_mul_schoolbook, poly_recip, truncate, UniPoly};
use pscomp::{compose_series, power_projection, LinearForm, PrimeModulus};

const NTT_PRIME: u64 = 998244353;
const CRT_PRIME: u64 = 1000000007;

fn modulus(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

fn random_instance(
    rng: &mut SplitMix64,
    cap: u64,
    md: &PrimeModulus,
) -> (usize, usize, UniPoly, UniPoly, LinearForm) {
    let n = 1 + rng.next_below(cap) as usize;
    let m = 1 + rng.next_below(cap) as usize;
    let f = rng.poly(m, md);
    let g = rng.poly(n, md);
    let w = LinearForm::new(rng.poly(n, md).into_coeffs());
    (n, m, f, g, w)
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    for p in [NTT_PRIME, CRT_PRIME] {
        let md = modulus(p);
        let mut rng = SplitMix64::new(0xC1 ^ p);
        for trial in 0..1000 {
            let (n, m, f, g, w) = random_instance(&mut rng, 64, &md);
            assert_eq!(
                compose_series(&f, &g, n, &md).unwrap(),
                compose_horner(&f, &g, n, &md),
                "compose mismatch: p={p} trial={trial} n={n} m={m}"
            );
            assert_eq!(
                power_projection(&w, &g, n, m, &md).unwrap(),
                powproj_naive(&w, &g, n, m, &md),
                "projection mismatch: p={p} trial={trial} n={n} m={m}"
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < 60.0,
        "oracle equivalence took {elapsed:.1} s, budget is 60 s"
    );
    println!(
        "criterion 1 (oracle equivalence, 1000 instances x 2 moduli): PASS in {elapsed:.1} s"
    );
}

#[test]
fn criterion_2_duality() {
    for p in [NTT_PRIME, CRT_PRIME] {
        let md = modulus(p);
        let mut rng = SplitMix64::new(0xC2 ^ p);
        for trial in 0..1000 {
            let (n, m, f, g, w) = random_instance(&mut rng, 64, &md);
            assert!(
                duality_check(&f, &g, &w, n, m, &md),
                "duality violated: p={p} trial={trial} n={n} m={m}"
            );
        }
    }
    println!("criterion 2 (transpose duality, 1000 instances x 2 moduli, all four pairings): PASS");
}

#[test]
fn criterion_3_reciprocal() {
    let md = modulus(NTT_PRIME);
    let mut rng = SplitMix64::new(0xC3);
    for n in [1usize, 2, 3, 5, 64, 1000, 4096] {
        for _ in 0..3 {
            let mut coeffs = rng.poly(n, &md).into_coeffs();
            coeffs[0] = 1;
            let f = UniPoly::new(coeffs);
            let r = poly_recip(&f, n, &md).unwrap();
            assert_eq!(r.len(), n);
            // Schoolbook verification keeps the check off the transform path.
            let prod = truncate(&poly_mul_schoolbook(&f, &r, &md), n);
            assert_eq!(prod.get(0), 1, "n={n}");
            assert!(
                prod.coeffs()[1..].iter().all(|&c| c == 0),
                "f * recip(f) != 1 mod x^{n}"
            );
        }
    }
    println!("criterion 3 (Newton reciprocal, n in {{1,2,3,5,64,1000,4096}}): PASS");
}

#[test]
fn criterion_4_kronecker() {
    let md = modulus(NTT_PRIME);
    let mut rng = SplitMix64::new(0xC4);
    for trial in 0..200 {
        let nxa = 1 + rng.next_below(32) as usize;
        let nya = 1 + rng.next_below((1024 / nxa) as u64) as usize;
        let nxb = 1 + rng.next_below(32) as usize;
        let nyb = 1 + rng.next_below((1024 / nxb) as u64) as usize;
        let a = BiPoly::from_grid(
            (0..nxa * nya).map(|_| rng.field_elem(&md)).collect(),
            nxa,
            nya,
        );
        let b = BiPoly::from_grid(
            (0..nxb * nyb).map(|_| rng.field_elem(&md)).collect(),
            nxb,
            nyb,
        );
        assert_eq!(
            bipoly_mul(&a, &b, &md),
            bipoly_mul_schoolbook(&a, &b, &md),
            "Kronecker mismatch: trial={trial} a=({nxa},{nya}) b=({nxb},{nyb})"
        );
    }
    println!("criterion 4 (Kronecker product = schoolbook, 200 instances, nx*ny <= 1024): PASS");
}

#[test]
fn criterion_5_bidegree_instrumentation() {
    let md = modulus(NTT_PRIME);
    let mut rng = SplitMix64::new(0xC5);
    for (n, m) in [(1000usize, 1000usize), (4096, 64), (64, 4096)] {
        let f = rng.poly(m, &md);
        let g = rng.poly(n, &md);
        let w = LinearForm::new(rng.poly(n, &md).into_coeffs());

        let (_, proj_trace) = power_projection_traced(&w, &g, n, m, &md).unwrap();
        assert!(
            proj_trace.all_within_bounds(),
            "projection bidegree bound violated at (n={n}, m={m}): {:?}",
            proj_trace.levels.iter().find(|l| !l.within_bounds())
        );

        let (_, comp_trace) = compose_series_traced(&f, &g, n, &md).unwrap();
        assert!(
            comp_trace.all_within_bounds(),
            "composition bidegree bound violated at (n={n}, m={m}): {:?}",
            comp_trace.levels.iter().find(|l| !l.within_bounds())
        );
    }
    println!(
        "criterion 5 (bidegree bounds at (1000,1000), (4096,64), (64,4096), all levels): PASS"
    );
}

#[test]
fn criterion_8_edge_coverage() {
    let md = modulus(NTT_PRIME);

    // n = 1: composition is the scalar f(g(0)); projection is geometric.
    let f = UniPoly::new(vec![1, 2, 3]);
    let g = UniPoly::new(vec![5]);
    let composed = compose_series(&f, &g, 1, &md).unwrap();
    assert_eq!(composed, compose_horner(&f, &g, 1, &md));
    assert_eq!(composed.coeffs(), &[1 + 2 * 5 + 3 * 25]);
    let out = power_projection(&LinearForm::new(vec![2]), &UniPoly::new(vec![3]), 1, 3, &md)
        .unwrap();
    assert_eq!(out.coeffs(), &[2, 6, 18]);

    // m = 1: single projection w(g^0) = w_0; constant f composes to a row.
    let w = LinearForm::new(vec![9, 4]);
    let g = UniPoly::new(vec![7, 7]);
    let out = power_projection(&w, &g, 2, 1, &md).unwrap();
    assert_eq!(out.coeffs(), &[9]);
    let out = compose_series(&UniPoly::new(vec![42]), &g, 3, &md).unwrap();
    assert_eq!(out.coeffs(), &[42, 0, 0]);

    // f = 0 (empty and stored-zero forms) composes to zeros.
    for f0 in [UniPoly::zeros(0), UniPoly::zeros(5)] {
        let out = compose_series(&f0, &g, 4, &md).unwrap();
        assert_eq!(out, UniPoly::zeros(4));
    }

    // g = 0: composition keeps only the constant of f; projections vanish
    // beyond i = 0.
    let f = UniPoly::new(vec![3, 1, 4, 1]);
    let out = compose_series(&f, &UniPoly::zeros(0), 5, &md).unwrap();
    assert_eq!(out.coeffs(), &[3, 0, 0, 0, 0]);
    let out = power_projection(&w, &UniPoly::zeros(2), 2, 4, &md).unwrap();
    assert_eq!(out.coeffs(), &[9, 0, 0, 0]);

    // g(0) != 0 is legal: f is a polynomial.
    let out = compose_series(&UniPoly::new(vec![0, 0, 1]), &UniPoly::new(vec![1, 1]), 3, &md)
        .unwrap();
    assert_eq!(out.coeffs(), &[1, 2, 1]);

    // w = 0 projects everything to zero.
    let out = power_projection(
        &LinearForm::new(vec![0; 6]),
        &UniPoly::new(vec![1, 2, 3]),
        6,
        5,
        &md,
    )
    .unwrap();
    assert_eq!(out, UniPoly::zeros(5));

    println!("criterion 8 (edge coverage: n=1, m=1, f=0, g=0, g(0)!=0, w=0): PASS");
}
