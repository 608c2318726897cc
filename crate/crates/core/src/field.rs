//! Exact modular arithmetic over word-size odd primes.
//!
//! Everything downstream works with canonical residues: plain `u64` values in
//! `[0, p)`. A [`PrimeModulus`] carries the modulus together with what the
//! transform layer needs (two-adicity, primitive root) and is validated at
//! construction by a deterministic Miller–Rabin check. Convolutions modulo
//! primes without enough two-adicity are lifted over three fixed NTT-friendly
//! primes and recombined with [`crt3`].

use crate::error::{Error, Result};

/// A canonical residue in `[0, p)`. Every public operation both expects and
/// returns canonical values; non-canonical forms (Montgomery, lazy sums) never
/// cross a module boundary.
pub type FieldElem = u64;

/// Supported moduli are odd primes strictly below `2^62`.
pub const MAX_MODULUS_BITS: u32 = 62;

/// A primitive root is only located for moduli whose two-adicity reaches this
/// value; anything smaller takes the CRT convolution path, which never needs
/// roots of unity under the target modulus itself.
pub const NTT_MIN_TWO_ADICITY: u32 = 16;

/// The three fixed NTT-friendly primes backing convolutions modulo arbitrary
/// target primes: `29*2^57 + 1`, `69*2^55 + 1` and `57*2^55 + 1`, with
/// smallest primitive roots 3, 5 and 7. Their product exceeds `2^183`, enough
/// to recover exact integer convolution coefficients for every supported
/// target modulus at any realistic length.
pub const CRT_PRIMES: [u64; 3] = [
    4179340454199820289,
    2485986994308513793,
    2053641430080946177,
];

/// An odd prime modulus with the precomputed data the rest of the crate needs.
#[derive(Debug, Clone)]
pub struct PrimeModulus {
    p: u64,
    two_adicity: u32,
    primitive_root: Option<u64>,
    // ceil(2^64 / p) when p < 2^31 (Barrett constant), 0 otherwise.
    barrett: u64,
}

impl PrimeModulus {
    /// Validates and describes a modulus. `p` must be an odd prime with
    /// `2 < p < 2^62`; primality is established by deterministic Miller–Rabin.
    pub fn new(p: u64) -> Result<Self> {
        if p <= 2 || p % 2 == 0 {
            return Err(Error::UnsupportedModulus {
                p,
                reason: "modulus must be an odd prime greater than 2",
            });
        }
        if p >> MAX_MODULUS_BITS != 0 {
            return Err(Error::UnsupportedModulus {
                p,
                reason: "modulus must be below 2^62",
            });
        }
        if !is_prime_u64(p) {
            return Err(Error::UnsupportedModulus {
                p,
                reason: "modulus must be prime",
            });
        }
        let two_adicity = (p - 1).trailing_zeros();
        let primitive_root =
            (two_adicity >= NTT_MIN_TWO_ADICITY).then(|| smallest_primitive_root(p));
        let barrett = if p < (1 << 31) { u64::MAX / p + 1 } else { 0 };
        Ok(PrimeModulus {
            p,
            two_adicity,
            primitive_root,
            barrett,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Largest `k` with `2^k | p - 1`.
    #[inline]
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// Smallest primitive root, present only when the two-adicity makes the
    /// transform path feasible.
    #[inline]
    pub fn primitive_root(&self) -> Option<u64> {
        self.primitive_root
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Exact product. Barrett reduction for small moduli, 128-bit remainder
    /// otherwise; the result is always canonical.
    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        debug_assert!(a < self.p && b < self.p);
        if self.barrett != 0 {
            // p < 2^31, so the product fits u64 and one Barrett step suffices.
            let z = a * b;
            let q = ((z as u128 * self.barrett as u128) >> 64) as u64;
            let v = z.wrapping_sub(q.wrapping_mul(self.p));
            if v >= self.p {
                v.wrapping_add(self.p)
            } else {
                v
            }
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    /// `a^e mod p` by square-and-multiply; `pow(a, 0) = 1` for every `a`.
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        debug_assert!(a < self.p);
        let mut base = a;
        let mut acc: u64 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; errors on zero.
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

/// Deterministic Miller–Rabin for 64-bit inputs. The fixed witness set is
/// sufficient for every `n < 3.3 * 10^24`, far beyond the supported range.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(a: u64, mut e: u64, m: u64) -> u64 {
    let mut base = a % m;
    let mut acc: u64 = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// Extended-Euclid inverse for arbitrary coprime moduli (Garner needs this
/// for composite toy moduli where Fermat does not apply).
fn inv_mod_u64(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_t, mut t) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_t, t) = (t, old_t - q * t);
    }
    assert!(old_r == 1, "inv_mod_u64: {a} is not invertible modulo {m}");
    old_t.rem_euclid(m as i128) as u64
}

/// Pollard rho with Floyd cycle detection; returns a nontrivial factor of
/// composite odd `n`.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && n % 2 == 1 && !is_prime_u64(n));
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Distinct prime factors, ascending.
fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(v) = stack.pop() {
        if v == 1 {
            continue;
        }
        if is_prime_u64(v) {
            if !out.contains(&v) {
                out.push(v);
            }
            continue;
        }
        let d = pollard_rho(v);
        stack.push(d);
        stack.push(v / d);
    }
    out.sort_unstable();
    out
}

/// Smallest `g` with `g^((p-1)/q) != 1 (mod p)` for every prime `q | p - 1`.
fn smallest_primitive_root(p: u64) -> u64 {
    let factors = distinct_prime_factors(p - 1);
    let mut g = 2u64;
    'candidate: loop {
        for &q in &factors {
            if pow_mod_u64(g, (p - 1) / q, p) == 1 {
                g += 1;
                continue 'candidate;
            }
        }
        return g;
    }
}

/// A 192-bit unsigned integer, little-endian limbs. Just enough arithmetic to
/// hold exact CRT lifts whose range `m1*m2*m3` exceeds `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Uint192 {
    pub limbs: [u64; 3],
}

impl Uint192 {
    pub const ZERO: Uint192 = Uint192 { limbs: [0; 3] };

    pub fn from_u128(x: u128) -> Self {
        Uint192 {
            limbs: [x as u64, (x >> 64) as u64, 0],
        }
    }

    /// `Some` only when the value fits 128 bits.
    pub fn to_u128(self) -> Option<u128> {
        (self.limbs[2] == 0).then(|| (self.limbs[1] as u128) << 64 | self.limbs[0] as u128)
    }

    pub fn mul_u64_u128(a: u64, b: u128) -> Self {
        let lo = a as u128 * (b as u64 as u128);
        let hi = a as u128 * (b >> 64) + (lo >> 64);
        Uint192 {
            limbs: [lo as u64, hi as u64, (hi >> 64) as u64],
        }
    }

    pub fn checked_add(self, rhs: Uint192) -> Option<Uint192> {
        let mut limbs = [0u64; 3];
        let mut carry = 0u64;
        for (i, limb) in limbs.iter_mut().enumerate() {
            let (s1, c1) = self.limbs[i].overflowing_add(rhs.limbs[i]);
            let (s2, c2) = s1.overflowing_add(carry);
            *limb = s2;
            carry = (c1 | c2) as u64;
        }
        (carry == 0).then_some(Uint192 { limbs })
    }

    /// Remainder modulo a 64-bit value, by chained 128-by-64 division.
    pub fn rem_u64(self, m: u64) -> u64 {
        debug_assert!(m > 0);
        let mut r = self.limbs[2] % m;
        r = (((r as u128) << 64 | self.limbs[1] as u128) % m as u128) as u64;
        r = (((r as u128) << 64 | self.limbs[0] as u128) % m as u128) as u64;
        r
    }
}

impl PartialOrd for Uint192 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Uint192 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let a = &self.limbs;
        let b = &other.limbs;
        a[2].cmp(&b[2]).then(a[1].cmp(&b[1])).then(a[0].cmp(&b[0]))
    }
}

/// Garner recombination of three residues under pairwise-coprime moduli:
/// returns the unique integer in `[0, m1*m2*m3)` matching all three. Callers
/// reduce the result modulo their target prime.
pub fn crt3(residues: [u64; 3], moduli: [u64; 3]) -> Uint192 {
    let [r1, r2, r3] = residues;
    let [m1, m2, m3] = moduli;
    debug_assert!(r1 < m1 && r2 < m2 && r3 < m3);
    debug_assert!(gcd_u64(m1, m2) == 1 && gcd_u64(m1, m3) == 1 && gcd_u64(m2, m3) == 1);

    // x = t1 + t2*m1 + t3*m1*m2 with each t reduced under its own modulus.
    let t1 = r1;
    let t2 = mul_mod_u64(
        sub_mod_u64(r2, t1 % m2, m2),
        inv_mod_u64(m1 % m2, m2),
        m2,
    );
    let partial = t1 as u128 + t2 as u128 * m1 as u128;
    let m1m2 = m1 as u128 * m2 as u128;
    let t3 = mul_mod_u64(
        sub_mod_u64(r3, (partial % m3 as u128) as u64, m3),
        inv_mod_u64((m1m2 % m3 as u128) as u64, m3),
        m3,
    );
    Uint192::mul_u64_u128(t3, m1m2)
        .checked_add(Uint192::from_u128(partial))
        .expect("crt3 value fits 192 bits")
}

#[inline]
fn sub_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (m - b)
    }
}

/// Montgomery context for an odd modulus below `2^63`. Internal to the
/// transform kernels; canonical residues are converted at the boundaries.
#[derive(Debug, Clone)]
pub(crate) struct Montgomery {
    pub p: u64,
    pub neg_inv: u64, // -p^{-1} mod 2^64
    r2: u64,          // 2^128 mod p
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p >> 63 == 0);
        // Newton: five doublings of precision invert p modulo 2^64.
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = mul_mod_u64(r, r, p);
        Montgomery {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    /// `t * 2^-64 mod p` for `t < p * 2^64`, canonical output.
    #[inline]
    pub fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t.wrapping_add(m as u128 * self.p as u128)) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    #[allow(clippy::wrong_self_convention)]
    #[inline]
    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }
}
