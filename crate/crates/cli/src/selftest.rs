//! The selftest suites: the library's own verification battery, runnable in
//! the field. Five suites, each counting per-trial pass/fail over both
//! built-in moduli (the NTT-friendly default and a CRT-path prime).

use pscomp::bipoly::{bipoly_mul, bipoly_mul_schoolbook, BiPoly};
use pscomp::compose::compose_series_traced;
use pscomp::powproj::power_projection_traced;
use pscomp::reference::{compose_horner, duality_check, powproj_naive};
use pscomp::rng::SplitMix64;
use pscomp::unipoly::{poly_mul_schoolbook, poly_recip, truncate, UniPoly};
use pscomp::{compose_series, power_projection, LinearForm, PrimeModulus};

pub const SELFTEST_MODULI: [u64; 2] = [998244353, 1000000007];

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub size_cap: usize,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
}

/// Runs every suite; one entry per suite, in a fixed order.
pub fn run(cfg: &SelftestConfig) -> Vec<SuiteOutcome> {
    let moduli: Vec<PrimeModulus> = SELFTEST_MODULI
        .iter()
        .map(|&p| PrimeModulus::new(p).expect("built-in moduli are valid"))
        .collect();
    let suites: [(&'static str, SuiteFn); 5] = [
        ("oracle-equivalence", oracle_equivalence),
        ("duality", duality),
        ("reciprocal", reciprocal),
        ("kronecker", kronecker),
        ("bidegree-instrumentation", bidegree_instrumentation),
    ];
    suites
        .into_iter()
        .map(|(name, suite)| {
            let mut outcome = SuiteOutcome {
                name,
                passed: 0,
                failed: 0,
            };
            let mut rng = SplitMix64::new(cfg.seed ^ fnv1a(name));
            for _ in 0..cfg.trials {
                for md in &moduli {
                    if suite(&mut rng, cfg.size_cap, md) {
                        outcome.passed += 1;
                    } else {
                        outcome.failed += 1;
                    }
                }
            }
            outcome
        })
        .collect()
}

type SuiteFn = fn(&mut SplitMix64, usize, &PrimeModulus) -> bool;

// Stable per-suite seed separation.
fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn random_orders(rng: &mut SplitMix64, cap: usize) -> (usize, usize) {
    (
        1 + rng.next_below(cap as u64) as usize,
        1 + rng.next_below(cap as u64) as usize,
    )
}

fn oracle_equivalence(rng: &mut SplitMix64, cap: usize, md: &PrimeModulus) -> bool {
    let (n, m) = random_orders(rng, cap);
    let f = rng.poly(m, md);
    let g = rng.poly(n, md);
    let w = LinearForm::new(rng.poly(n, md).into_coeffs());
    compose_series(&f, &g, n, md).expect("valid sizes") == compose_horner(&f, &g, n, md)
        && power_projection(&w, &g, n, m, md).expect("valid sizes")
            == powproj_naive(&w, &g, n, m, md)
}

fn duality(rng: &mut SplitMix64, cap: usize, md: &PrimeModulus) -> bool {
    let (n, m) = random_orders(rng, cap);
    let f = rng.poly(m, md);
    let g = rng.poly(n, md);
    let w = LinearForm::new(rng.poly(n, md).into_coeffs());
    duality_check(&f, &g, &w, n, m, md)
}

fn reciprocal(rng: &mut SplitMix64, cap: usize, md: &PrimeModulus) -> bool {
    let n = 1 + rng.next_below(cap as u64) as usize;
    let mut coeffs = rng.poly(n, md).into_coeffs();
    coeffs[0] = 1;
    let f = UniPoly::new(coeffs);
    let r = match poly_recip(&f, n, md) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let prod = truncate(&poly_mul_schoolbook(&f, &r, md), n);
    prod.get(0) == 1 && prod.coeffs()[1..].iter().all(|&c| c == 0)
}

fn kronecker(rng: &mut SplitMix64, cap: usize, md: &PrimeModulus) -> bool {
    let side = cap.min(32) as u64;
    let (nxa, nya) = (
        1 + rng.next_below(side) as usize,
        1 + rng.next_below(side) as usize,
    );
    let (nxb, nyb) = (
        1 + rng.next_below(side) as usize,
        1 + rng.next_below(side) as usize,
    );
    let a = random_bipoly(rng, nxa, nya, md);
    let b = random_bipoly(rng, nxb, nyb, md);
    bipoly_mul(&a, &b, md) == bipoly_mul_schoolbook(&a, &b, md)
}

fn random_bipoly(rng: &mut SplitMix64, nx: usize, ny: usize, md: &PrimeModulus) -> BiPoly {
    BiPoly::from_grid((0..nx * ny).map(|_| rng.field_elem(md)).collect(), nx, ny)
}

fn bidegree_instrumentation(rng: &mut SplitMix64, cap: usize, md: &PrimeModulus) -> bool {
    let (n, m) = random_orders(rng, cap);
    let f = rng.poly(m, md);
    let g = rng.poly(n, md);
    let w = LinearForm::new(rng.poly(n, md).into_coeffs());
    let comp_ok = match compose_series_traced(&f, &g, n, md) {
        Ok((_, trace)) => trace.all_within_bounds(),
        Err(_) => false,
    };
    let proj_ok = match power_projection_traced(&w, &g, n, m, md) {
        Ok((_, trace)) => trace.all_within_bounds(),
        Err(_) => false,
    };
    comp_ok && proj_ok
}
