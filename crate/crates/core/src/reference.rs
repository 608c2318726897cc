//! Brute-force oracles and the transpose-duality checker.
//!
//! The oracles are deliberately independent of the fast paths: they use their
//! own truncated schoolbook multiplication and touch nothing outside the
//! field layer, so they can vouch for the transform-based routines. They ship
//! in the library (not just in test code) because the selftest command runs
//! them in the field.

use crate::compose::compose_series;
use crate::field::{FieldElem, PrimeModulus};
use crate::powproj::{power_projection, LinearForm};
use crate::unipoly::UniPoly;

// Truncated schoolbook product keeping exactly `n` coefficients. For small
// moduli the 64-bit products are accumulated in 128 bits and reduced once per
// output coefficient.
fn mul_truncated(a: &UniPoly, b: &UniPoly, n: usize, md: &PrimeModulus) -> UniPoly {
    let mut out = vec![0u64; n];
    if a.is_empty() || b.is_empty() {
        return UniPoly::new(out);
    }
    let (ac, bc) = (a.coeffs(), b.coeffs());
    if md.p() < (1 << 32) {
        for (k, slot) in out.iter_mut().enumerate() {
            let lo = (k + 1).saturating_sub(bc.len());
            let hi = k.min(ac.len() - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += (ac[i] * bc[k - i]) as u128;
            }
            *slot = (acc % md.p() as u128) as u64;
        }
    } else {
        for (k, slot) in out.iter_mut().enumerate() {
            let lo = (k + 1).saturating_sub(bc.len());
            let hi = k.min(ac.len() - 1);
            let mut acc = 0u64;
            for i in lo..=hi {
                acc = md.add(acc, md.mul(ac[i], bc[k - i]));
            }
            *slot = acc;
        }
    }
    UniPoly::new(out)
}

/// Composition by Horner's rule with truncation mod `x^n` at every step;
/// `O(m n^2)` field operations. Output length is exactly `n`.
pub fn compose_horner(f: &UniPoly, g: &UniPoly, n: usize, md: &PrimeModulus) -> UniPoly {
    assert!(n >= 1, "composition order must be positive");
    let mut acc = UniPoly::zeros(n);
    for j in (0..f.len()).rev() {
        acc = mul_truncated(&acc, g, n, md);
        let mut coeffs = acc.into_coeffs();
        coeffs[0] = md.add(coeffs[0], f.get(j));
        acc = UniPoly::new(coeffs);
    }
    acc
}

/// Projection by iterated truncated powers: maintains `g^i mod x^n` and dots
/// it with the weights. Output length is exactly `m`.
pub fn powproj_naive(
    w: &LinearForm,
    g: &UniPoly,
    n: usize,
    m: usize,
    md: &PrimeModulus,
) -> UniPoly {
    assert!(n >= 1 && m >= 1, "projection orders must be positive");
    assert_eq!(w.len(), n, "weight vector length must equal n");
    assert!(g.len() <= n, "g must have length at most n");
    let mut power = UniPoly::new(vec![1]);
    let mut out = vec![0u64; m];
    for slot in out.iter_mut() {
        *slot = inner_product(w.weights(), power.coeffs(), md);
        power = mul_truncated(&power, g, n, md);
    }
    UniPoly::new(out)
}

/// `sum a_i b_i` over the shorter of the two slices.
pub fn inner_product(a: &[FieldElem], b: &[FieldElem], md: &PrimeModulus) -> FieldElem {
    if md.p() < (1 << 32) {
        let mut acc: u128 = 0;
        for (&x, &y) in a.iter().zip(b.iter()) {
            acc += (x * y) as u128;
        }
        (acc % md.p() as u128) as u64
    } else {
        a.iter()
            .zip(b.iter())
            .fold(0u64, |acc, (&x, &y)| md.add(acc, md.mul(x, y)))
    }
}

/// The two sides of the transpose identity for already-computed outputs:
/// `<w, f(g) mod x^n> == <f, proj>`.
pub fn pairing_holds(
    f: &UniPoly,
    w: &LinearForm,
    composed: &UniPoly,
    projected: &UniPoly,
    md: &PrimeModulus,
) -> bool {
    inner_product(w.weights(), composed.coeffs(), md)
        == inner_product(f.coeffs(), projected.coeffs(), md)
}

/// Checks the transpose identity with every pairing of fast routine and
/// oracle: both compositions against both projections, exact equality.
/// Requires `w.len() == n`, `g.len() <= n` and `f.len() <= m`.
pub fn duality_check(
    f: &UniPoly,
    g: &UniPoly,
    w: &LinearForm,
    n: usize,
    m: usize,
    md: &PrimeModulus,
) -> bool {
    assert!(f.len() <= m, "f must have length at most m");
    let comp_fast = compose_series(f, g, n, md).expect("validated dimensions");
    let comp_slow = compose_horner(f, g, n, md);
    let proj_fast = power_projection(w, g, n, m, md).expect("validated dimensions");
    let proj_slow = powproj_naive(w, g, n, m, md);
    let values = [
        inner_product(w.weights(), comp_fast.coeffs(), md),
        inner_product(w.weights(), comp_slow.coeffs(), md),
        inner_product(f.coeffs(), proj_fast.coeffs(), md),
        inner_product(f.coeffs(), proj_slow.coeffs(), md),
    ];
    values.iter().all(|&v| v == values[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn modulus(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn horner_constant_and_example() {
        let md = modulus(998244353);
        let g = UniPoly::new(vec![9, 8, 7]);
        assert_eq!(
            compose_horner(&UniPoly::new(vec![5]), &g, 4, &md).coeffs(),
            &[5, 0, 0, 0]
        );
        let f = UniPoly::new(vec![1, 2, 3]);
        let g = UniPoly::new(vec![0, 1, 1]);
        assert_eq!(compose_horner(&f, &g, 4, &md).coeffs(), &[1, 2, 5, 6]);
    }

    #[test]
    fn naive_projection_examples() {
        let md = modulus(998244353);
        // i = 0 term is always w_0.
        let w = LinearForm::new(vec![3, 1, 4]);
        let g = UniPoly::new(vec![0, 2, 2]);
        let out = powproj_naive(&w, &g, 3, 4, &md);
        assert_eq!(out.get(0), 3);
        let w = LinearForm::new(vec![1, 1]);
        let g = UniPoly::new(vec![0, 2]);
        assert_eq!(powproj_naive(&w, &g, 2, 3, &md).coeffs(), &[1, 2, 0]);
    }

    #[test]
    fn oracles_match_fast_paths() {
        for p in [998244353u64, 1000000007] {
            let md = modulus(p);
            let mut rng = SplitMix64::new(p ^ 0x5eed);
            for _ in 0..50 {
                let n = 1 + rng.next_below(48) as usize;
                let m = 1 + rng.next_below(48) as usize;
                let lg = rng.next_below(n as u64 + 1) as usize;
                let f = rng.poly(m, &md);
                let g = rng.poly(lg, &md);
                let w = LinearForm::new((0..n).map(|_| rng.field_elem(&md)).collect());
                assert_eq!(
                    compose_series(&f, &g, n, &md).unwrap(),
                    compose_horner(&f, &g, n, &md),
                    "compose mismatch at p={p} n={n} m={m}"
                );
                assert_eq!(
                    power_projection(&w, &g, n, m, &md).unwrap(),
                    powproj_naive(&w, &g, n, m, &md),
                    "projection mismatch at p={p} n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn duality_zero_f_and_random() {
        let md = modulus(998244353);
        let mut rng = SplitMix64::new(4242);
        let n = 6;
        let m = 5;
        let g = rng.poly(n, &md);
        let w = LinearForm::new((0..n).map(|_| rng.field_elem(&md)).collect());
        assert!(duality_check(&UniPoly::zeros(m), &g, &w, n, m, &md));
        for _ in 0..20 {
            let n = 1 + rng.next_below(24) as usize;
            let m = 1 + rng.next_below(24) as usize;
            let f = rng.poly(m, &md);
            let g = rng.poly(n, &md);
            let w = LinearForm::new((0..n).map(|_| rng.field_elem(&md)).collect());
            assert!(duality_check(&f, &g, &w, n, m, &md));
        }
    }

    #[test]
    fn corrupted_projection_is_detected() {
        let md = modulus(998244353);
        let mut rng = SplitMix64::new(9);
        let (n, m) = (8, 6);
        let f = rng.poly(m, &md);
        let g = rng.poly(n, &md);
        let w = LinearForm::new((0..n).map(|_| rng.field_elem(&md)).collect());
        let composed = compose_horner(&f, &g, n, &md);
        let projected = powproj_naive(&w, &g, n, m, &md);
        assert!(pairing_holds(&f, &w, &composed, &projected, &md));
        // Corrupt one projection coefficient; the pairing must notice, as
        // long as the matching f coefficient is nonzero.
        let mut broken = projected.into_coeffs();
        let idx = (0..m).find(|&i| f.get(i) != 0).unwrap();
        broken[idx] = md.add(broken[idx], 1);
        assert!(!pairing_holds(
            &f,
            &w,
            &composed,
            &UniPoly::new(broken),
            &md
        ));
    }
}
