//! Dense univariate polynomials: the number-theoretic transform, the
//! multiplication dispatch (schoolbook / direct NTT / three-prime CRT),
//! truncation and reversal, and the Newton reciprocal.
//!
//! Lengths are explicit: a `UniPoly` of length `n` has exactly `n` stored
//! coefficients, leading zeros included, and no operation trims implicitly.
//! Downstream bidegree accounting relies on that determinism.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::{crt3, FieldElem, Montgomery, PrimeModulus, Uint192, CRT_PRIMES};

/// Products whose shorter side is at most this long go through schoolbook
/// multiplication; transform overhead dominates below it.
pub const SCHOOLBOOK_THRESHOLD: usize = 32;

/// Dense univariate polynomial, coefficients ascending by exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    /// Wraps canonical residues; callers guarantee every entry is below the
    /// modulus they intend to use the polynomial with.
    pub fn new(coeffs: Vec<FieldElem>) -> Self {
        UniPoly { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        UniPoly {
            coeffs: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the stored length.
    pub fn get(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Largest index with a nonzero coefficient; `None` for the zero
    /// polynomial (of any stored length).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }
}

/// First `n` coefficients, zero-padded so the result has length exactly `n`.
pub fn truncate(f: &UniPoly, n: usize) -> UniPoly {
    let mut out = vec![0; n];
    let keep = f.len().min(n);
    out[..keep].copy_from_slice(&f.coeffs()[..keep]);
    UniPoly::new(out)
}

/// Length-`m` reversal: coefficient `i` of the result is coefficient
/// `m - 1 - i` of the zero-padded input. Requires `f.len() <= m`.
pub fn reverse(f: &UniPoly, m: usize) -> UniPoly {
    assert!(f.len() <= m, "reverse: length {} exceeds {}", f.len(), m);
    let mut out = vec![0; m];
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = f.get(m - 1 - i);
    }
    UniPoly::new(out)
}

/// Exact product in `O(len_a * len_b)` field operations; also the base case
/// and cross-check oracle for the transform paths.
pub fn poly_mul_schoolbook(a: &UniPoly, b: &UniPoly, m: &PrimeModulus) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return UniPoly::zeros(0);
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.coeffs().iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.coeffs().iter().enumerate() {
            out[i + j] = m.add(out[i + j], m.mul(ai, bj));
        }
    }
    UniPoly::new(out)
}

/// Exact product with length `a.len() + b.len() - 1` (length 0 if either
/// factor is empty). Dispatch: schoolbook for short inputs, a direct NTT when
/// the modulus supports the transform size, and otherwise convolution under
/// the three fixed CRT primes followed by Garner recombination.
pub fn poly_mul(a: &UniPoly, b: &UniPoly, m: &PrimeModulus) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return UniPoly::zeros(0);
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_THRESHOLD {
        return poly_mul_schoolbook(a, b, m);
    }
    let out_len = a.len() + b.len() - 1;
    let log_size = out_len.next_power_of_two().trailing_zeros();
    if m.primitive_root().is_some() && log_size <= m.two_adicity() {
        let evals = ntt_convolve(a.coeffs(), b.coeffs(), out_len, m)
            .expect("transform size was checked against the modulus");
        UniPoly::new(evals)
    } else {
        crt_convolve(a, b, m)
    }
}

struct CrtContext {
    moduli: [PrimeModulus; 3],
    product: Uint192,
}

fn crt_context() -> &'static CrtContext {
    static CTX: OnceLock<CrtContext> = OnceLock::new();
    CTX.get_or_init(|| {
        let moduli = CRT_PRIMES.map(|p| {
            PrimeModulus::new(p).expect("fixed CRT primes are valid NTT moduli")
        });
        let m1m2 = CRT_PRIMES[0] as u128 * CRT_PRIMES[1] as u128;
        let product = Uint192::mul_u64_u128(CRT_PRIMES[2], m1m2);
        CrtContext { moduli, product }
    })
}

fn crt_convolve(a: &UniPoly, b: &UniPoly, m: &PrimeModulus) -> UniPoly {
    let ctx = crt_context();
    // Exactness requires the true integer coefficients, bounded by
    // overlap * (p-1)^2, to stay below the combined modulus.
    let overlap = a.len().min(b.len()) as u64;
    let square = (m.p() - 1) as u128 * (m.p() - 1) as u128;
    let need = Uint192::mul_u64_u128(overlap, square);
    assert!(
        need < ctx.product,
        "CRT convolution range exceeded: {} overlapping terms under modulus {}",
        overlap,
        m.p()
    );

    let out_len = a.len() + b.len() - 1;
    let images: Vec<Vec<u64>> = ctx
        .moduli
        .iter()
        .map(|mi| {
            let ra: Vec<u64> = a.coeffs().iter().map(|&c| c % mi.p()).collect();
            let rb: Vec<u64> = b.coeffs().iter().map(|&c| c % mi.p()).collect();
            ntt_convolve(&ra, &rb, out_len, mi)
                .expect("fixed CRT primes support every practical size")
        })
        .collect();

    let moduli = CRT_PRIMES;
    let out = (0..out_len)
        .map(|i| crt3([images[0][i], images[1][i], images[2][i]], moduli).rem_u64(m.p()))
        .collect();
    UniPoly::new(out)
}

// Per-modulus transform tables, grown on demand and shared across sizes.
//
// Twiddles use the stage-major layout: the segment `[h, 2h)` of the forward
// table holds the 2h-th roots `w_{2h}^j` for `j < h` (inverse powers in the
// matching inverse segment), all in Montgomery form below p. A table built
// for size `2^k` therefore serves every smaller power of two as a prefix.
struct ModTables {
    mont: Montgomery,
    log_size: u32,
    fwd: Vec<u64>,
    inv: Vec<u64>,
}

fn tables_for(m: &PrimeModulus, log_size: u32) -> Result<Arc<ModTables>> {
    let root = m.primitive_root().ok_or(Error::UnsupportedSize {
        size: 1usize << log_size,
        modulus: m.p(),
    })?;
    if log_size > m.two_adicity() {
        return Err(Error::UnsupportedSize {
            size: 1usize << log_size,
            modulus: m.p(),
        });
    }

    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<ModTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("NTT table cache poisoned");
    if let Some(tables) = guard.get(&m.p()) {
        if tables.log_size >= log_size {
            return Ok(tables.clone());
        }
    }

    let size = 1usize << log_size;
    let mont = Montgomery::new(m.p());
    let mut fwd = vec![0u64; size.max(2)];
    let mut inv = vec![0u64; size.max(2)];
    let mut half = 1usize;
    while half < size {
        let w = m.pow(root, (m.p() - 1) >> (half.trailing_zeros() + 1));
        let w_inv = m.inv(w).expect("root of unity is nonzero");
        let (wm, wim) = (mont.to_mont(w), mont.to_mont(w_inv));
        let (mut f, mut b) = (mont.to_mont(1), mont.to_mont(1));
        for j in 0..half {
            fwd[half + j] = f;
            inv[half + j] = b;
            f = mont.mul(f, wm);
            b = mont.mul(b, wim);
        }
        half *= 2;
    }
    let tables = Arc::new(ModTables {
        mont,
        log_size,
        fwd,
        inv,
    });
    guard.insert(m.p(), tables.clone());
    Ok(tables)
}

// Montgomery product without the final conditional subtraction: for
// a * b < p * 2^64 the result is below 2p. Data flows through the transform
// kernels in this relaxed range and is normalized once at the boundary.
#[inline(always)]
fn mont_mul_lazy(a: u64, b: u64, p: u64, neg_inv: u64) -> u64 {
    let t = a as u128 * b as u128;
    let m = (t as u64).wrapping_mul(neg_inv);
    ((t.wrapping_add(m as u128 * p as u128)) >> 64) as u64
}

// Decimation in frequency: natural input order, bit-reversed output order.
// Entries stay below 2p throughout; twiddles are below p, so the lazy
// product bound 4p * p < p * 2^64 holds for every supported modulus.
fn forward_in_place(a: &mut [u64], tables: &ModTables) {
    let n = a.len();
    let p = tables.mont.p;
    let neg_inv = tables.mont.neg_inv;
    let twop = 2 * p;
    let mut half = n / 2;
    while half >= 1 {
        let stage = &tables.fwd[half..2 * half];
        for block in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(stage) {
                let x = *u;
                let y = *v;
                let s = x + y;
                *u = if s >= twop { s - twop } else { s };
                *v = mont_mul_lazy(x + twop - y, w, p, neg_inv);
            }
        }
        half /= 2;
    }
}

// Decimation in time with inverse twiddles: consumes the bit-reversed order
// produced above and restores natural order. Scaling is the caller's job.
fn inverse_in_place(a: &mut [u64], tables: &ModTables) {
    let n = a.len();
    let p = tables.mont.p;
    let neg_inv = tables.mont.neg_inv;
    let twop = 2 * p;
    let mut half = 1;
    while half < n {
        let stage = &tables.inv[half..2 * half];
        for block in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(stage) {
                let x = *u;
                let y = mont_mul_lazy(*v, w, p, neg_inv);
                let s = x + y;
                *u = if s >= twop { s - twop } else { s };
                let d = x + twop - y;
                *v = if d >= twop { d - twop } else { d };
            }
        }
        half *= 2;
    }
}

// One exact convolution under an NTT-capable modulus; returns `out_len`
// canonical coefficients.
fn ntt_convolve(a: &[u64], b: &[u64], out_len: usize, m: &PrimeModulus) -> Result<Vec<u64>> {
    let size = out_len.next_power_of_two();
    let tables = tables_for(m, size.trailing_zeros())?;
    let mont = &tables.mont;
    let (p, neg_inv) = (mont.p, mont.neg_inv);

    let mut va = vec![0u64; size];
    for (slot, &c) in va.iter_mut().zip(a) {
        *slot = mont.to_mont(c);
    }
    let mut vb = vec![0u64; size];
    for (slot, &c) in vb.iter_mut().zip(b) {
        *slot = mont.to_mont(c);
    }
    forward_in_place(&mut va, &tables);
    forward_in_place(&mut vb, &tables);
    for (x, &y) in va.iter_mut().zip(vb.iter()) {
        *x = mont_mul_lazy(*x, y, p, neg_inv);
    }
    inverse_in_place(&mut va, &tables);
    // Multiplying the relaxed Montgomery values by the standard-form 1/size
    // applies the scaling, leaves the Montgomery domain and renormalizes.
    let size_inv = m.inv(size as u64).expect("size is nonzero");
    va.truncate(out_len);
    for x in va.iter_mut() {
        *x = mont.redc(*x as u128 * size_inv as u128);
    }
    Ok(va)
}

/// Forward transform of a polynomial already padded to a power-of-two length.
/// Returns the evaluations at the roots of unity in bit-reversed order;
/// [`ntt_inverse`] consumes exactly this layout.
pub fn ntt_forward(a: &UniPoly, m: &PrimeModulus) -> Result<Vec<FieldElem>> {
    let size = a.len();
    if size == 0 || !size.is_power_of_two() {
        return Err(Error::UnsupportedSize {
            size,
            modulus: m.p(),
        });
    }
    if size == 1 {
        return Ok(vec![a.get(0)]);
    }
    let tables = tables_for(m, size.trailing_zeros())?;
    let mut v: Vec<u64> = a
        .coeffs()
        .iter()
        .map(|&c| tables.mont.to_mont(c))
        .collect();
    forward_in_place(&mut v, &tables);
    for x in v.iter_mut() {
        *x = tables.mont.from_mont(*x);
    }
    Ok(v)
}

/// Inverse transform, including the `1/size` scaling; composes with
/// [`ntt_forward`] to the identity.
pub fn ntt_inverse(evals: &[FieldElem], m: &PrimeModulus) -> Result<UniPoly> {
    let size = evals.len();
    if size == 0 || !size.is_power_of_two() {
        return Err(Error::UnsupportedSize {
            size,
            modulus: m.p(),
        });
    }
    if size == 1 {
        return Ok(UniPoly::new(vec![evals[0]]));
    }
    let tables = tables_for(m, size.trailing_zeros())?;
    let mut v: Vec<u64> = evals.iter().map(|&c| tables.mont.to_mont(c)).collect();
    inverse_in_place(&mut v, &tables);
    let size_inv = m.inv(size as u64).expect("size is nonzero");
    for x in v.iter_mut() {
        *x = tables.mont.redc(*x as u128 * size_inv as u128);
    }
    Ok(UniPoly::new(v))
}

/// Truncated reciprocal: `g` of length `n` with `f * g = 1 (mod x^n)`,
/// requiring `f(0) = 1`. Newton iteration over the ceiling-halving precision
/// schedule `n, ceil(n/2), ..., 1`, refined bottom-up.
pub fn poly_recip(f: &UniPoly, n: usize, m: &PrimeModulus) -> Result<UniPoly> {
    assert!(n >= 1, "reciprocal order must be positive");
    if f.get(0) != 1 {
        return Err(Error::BadConstantTerm);
    }
    let mut schedule = vec![n];
    while *schedule.last().unwrap() > 1 {
        schedule.push(schedule.last().unwrap().div_ceil(2));
    }
    let mut g = UniPoly::new(vec![1]);
    for &t in schedule.iter().rev().skip(1) {
        // g <- g * (2 - f g) mod x^t
        let ft = truncate(f, t);
        let fg = truncate(&poly_mul(&ft, &g, m), t);
        let mut correction = vec![0u64; t];
        correction[0] = m.sub(2 % m.p(), fg.get(0));
        for (i, slot) in correction.iter_mut().enumerate().skip(1) {
            *slot = m.neg(fg.get(i));
        }
        g = truncate(&poly_mul(&g, &UniPoly::new(correction), m), t);
    }
    Ok(truncate(&g, n))
}
