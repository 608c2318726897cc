//! Dense bivariate polynomials with explicit size bounds, Kronecker
//! multiplication, and the structural x-operations behind the Graeffe step:
//! negation of x, even/odd splits, x^2 substitution and rectangular
//! truncation.
//!
//! Storage is a dense x-major grid: entry `(i, j)` — the coefficient of
//! `x^i y^j` — lives at `i * ny + j`, so each x-row is contiguous and the
//! row-level operations are block copies. Sizes are never trimmed; `nx` and
//! `ny` are part of the value.

use crate::field::{FieldElem, PrimeModulus};
use crate::unipoly::{poly_mul, UniPoly};

/// Dense bivariate polynomial with `nx * ny` stored coefficients and
/// bidegree at most `(nx - 1, ny - 1)` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<FieldElem>,
    nx: usize,
    ny: usize,
}

impl BiPoly {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        assert!(nx >= 1 && ny >= 1, "BiPoly sizes must be positive");
        BiPoly {
            coeffs: vec![0; nx * ny],
            nx,
            ny,
        }
    }

    /// Wraps an x-major grid of canonical residues.
    pub fn from_grid(coeffs: Vec<FieldElem>, nx: usize, ny: usize) -> Self {
        assert!(nx >= 1 && ny >= 1, "BiPoly sizes must be positive");
        assert_eq!(coeffs.len(), nx * ny, "grid size must equal nx * ny");
        BiPoly { coeffs, nx, ny }
    }

    /// The constant polynomial 1 as a 1x1 grid.
    pub fn one() -> Self {
        BiPoly {
            coeffs: vec![1],
            nx: 1,
            ny: 1,
        }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn grid(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i y^j`, zero outside the stored grid.
    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        if i < self.nx && j < self.ny {
            self.coeffs[i * self.ny + j]
        } else {
            0
        }
    }

    fn row(&self, i: usize) -> &[FieldElem] {
        &self.coeffs[i * self.ny..(i + 1) * self.ny]
    }

    /// The x^0 slice as a polynomial in y, length `ny`.
    pub fn x0_poly(&self) -> UniPoly {
        UniPoly::new(self.row(0).to_vec())
    }

    /// Lifts a polynomial in y to a 1-row grid.
    pub fn from_y_poly(f: &UniPoly) -> Self {
        if f.is_empty() {
            BiPoly::zeros(1, 1)
        } else {
            BiPoly::from_grid(f.coeffs().to_vec(), 1, f.len())
        }
    }

    /// Lifts a polynomial in x to a 1-column grid.
    pub fn from_x_poly(f: &UniPoly) -> Self {
        if f.is_empty() {
            BiPoly::zeros(1, 1)
        } else {
            BiPoly::from_grid(f.coeffs().to_vec(), f.len(), 1)
        }
    }

    /// Actual bidegree found by scanning: largest `(i, j)` with a nonzero
    /// entry, component-wise; `None` for an all-zero grid. Used by the
    /// instrumented runs to compare against the constructed bounds.
    pub fn scanned_bideg(&self) -> Option<(usize, usize)> {
        let mut deg: Option<(usize, usize)> = None;
        for i in 0..self.nx {
            for (j, &c) in self.row(i).iter().enumerate() {
                if c != 0 {
                    let (dx, dy) = deg.unwrap_or((0, 0));
                    deg = Some((dx.max(i), dy.max(j)));
                }
            }
        }
        deg
    }
}

/// Kronecker-substitution product: both factors are packed along
/// `x -> z, y -> z^stride` with the minimal collision-free stride
/// `a.nx + b.nx - 1`, multiplied as univariate polynomials, and unpacked.
/// Output sizes are exactly `(a.nx + b.nx - 1, a.ny + b.ny - 1)`.
pub fn bipoly_mul(a: &BiPoly, b: &BiPoly, m: &PrimeModulus) -> BiPoly {
    let stride = a.nx + b.nx - 1;
    let pa = pack(a, stride);
    let pb = pack(b, stride);
    let prod = poly_mul(&pa, &pb, m);
    let (nx, ny) = (stride, a.ny + b.ny - 1);
    debug_assert_eq!(prod.len(), nx * ny);
    let mut grid = vec![0u64; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            grid[i * ny + j] = prod.get(j * stride + i);
        }
    }
    BiPoly::from_grid(grid, nx, ny)
}

fn pack(a: &BiPoly, stride: usize) -> UniPoly {
    debug_assert!(stride >= a.nx);
    let mut v = vec![0u64; (a.ny - 1) * stride + a.nx];
    for i in 0..a.nx {
        for (j, &c) in a.row(i).iter().enumerate() {
            v[j * stride + i] = c;
        }
    }
    UniPoly::new(v)
}

/// Quartic-time oracle for [`bipoly_mul`].
pub fn bipoly_mul_schoolbook(a: &BiPoly, b: &BiPoly, m: &PrimeModulus) -> BiPoly {
    let (nx, ny) = (a.nx + b.nx - 1, a.ny + b.ny - 1);
    let mut grid = vec![0u64; nx * ny];
    for ia in 0..a.nx {
        for ja in 0..a.ny {
            let ca = a.get(ia, ja);
            if ca == 0 {
                continue;
            }
            for ib in 0..b.nx {
                for jb in 0..b.ny {
                    let slot = &mut grid[(ia + ib) * ny + (ja + jb)];
                    *slot = m.add(*slot, m.mul(ca, b.get(ib, jb)));
                }
            }
        }
    }
    BiPoly::from_grid(grid, nx, ny)
}

/// `a(-x, y)`: negates every odd x-row.
pub fn negate_x(a: &BiPoly, m: &PrimeModulus) -> BiPoly {
    let mut coeffs = a.coeffs.clone();
    for i in (1..a.nx).step_by(2) {
        for c in coeffs[i * a.ny..(i + 1) * a.ny].iter_mut() {
            *c = m.neg(*c);
        }
    }
    BiPoly {
        coeffs,
        nx: a.nx,
        ny: a.ny,
    }
}

/// Even x-part: row `i` of the result is row `2i` of the input;
/// `nx` becomes `ceil(a.nx / 2)`.
pub fn even_part_x(a: &BiPoly) -> BiPoly {
    let nx = a.nx.div_ceil(2);
    let mut coeffs = vec![0u64; nx * a.ny];
    for i in 0..nx {
        coeffs[i * a.ny..(i + 1) * a.ny].copy_from_slice(a.row(2 * i));
    }
    BiPoly {
        coeffs,
        nx,
        ny: a.ny,
    }
}

/// Odd x-part: row `i` of the result is row `2i + 1` of the input;
/// `nx` becomes `floor(a.nx / 2)`, with a single zero row when `a.nx = 1`.
pub fn odd_part_x(a: &BiPoly) -> BiPoly {
    let nx = (a.nx / 2).max(1);
    let mut coeffs = vec![0u64; nx * a.ny];
    for i in 0..a.nx / 2 {
        coeffs[i * a.ny..(i + 1) * a.ny].copy_from_slice(a.row(2 * i + 1));
    }
    BiPoly {
        coeffs,
        nx,
        ny: a.ny,
    }
}

/// `a(x^2, y)`: row `i` moves to row `2i`, odd rows are zero;
/// `nx` becomes `2 * a.nx - 1`.
pub fn substitute_x_squared(a: &BiPoly) -> BiPoly {
    let nx = 2 * a.nx - 1;
    let mut coeffs = vec![0u64; nx * a.ny];
    for i in 0..a.nx {
        coeffs[2 * i * a.ny..(2 * i + 1) * a.ny].copy_from_slice(a.row(i));
    }
    BiPoly {
        coeffs,
        nx,
        ny: a.ny,
    }
}

/// Keeps entries with `i < n` and `j < m`; output sizes are
/// `(min(a.nx, n), min(a.ny, m))`. Shrinks only, never pads.
pub fn truncate_xy(a: &BiPoly, n: usize, m: usize) -> BiPoly {
    assert!(n >= 1 && m >= 1, "truncation bounds must be positive");
    let nx = a.nx.min(n);
    let ny = a.ny.min(m);
    if nx == a.nx && ny == a.ny {
        return a.clone();
    }
    let mut coeffs = vec![0u64; nx * ny];
    for i in 0..nx {
        coeffs[i * ny..(i + 1) * ny].copy_from_slice(&a.row(i)[..ny]);
    }
    BiPoly { coeffs, nx, ny }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::rng::SplitMix64;

    fn modulus(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn random_bipoly(rng: &mut SplitMix64, nx: usize, ny: usize, m: &PrimeModulus) -> BiPoly {
        BiPoly::from_grid(
            (0..nx * ny).map(|_| rng.field_elem(m)).collect(),
            nx,
            ny,
        )
    }

    #[test]
    fn mul_small_example() {
        let m = modulus(998244353);
        let p = m.p();
        // (1 + xy)(1 - xy) = 1 - x^2 y^2
        let a = BiPoly::from_grid(vec![1, 0, 0, 1], 2, 2);
        let b = BiPoly::from_grid(vec![1, 0, 0, p - 1], 2, 2);
        let prod = bipoly_mul(&a, &b, &m);
        assert_eq!(prod.nx(), 3);
        assert_eq!(prod.ny(), 3);
        let mut expect = BiPoly::zeros(3, 3);
        expect = BiPoly::from_grid(
            {
                let mut g = expect.grid().to_vec();
                g[0] = 1; // 1
                g[2 * 3 + 2] = p - 1; // -x^2 y^2
                g
            },
            3,
            3,
        );
        assert_eq!(prod, expect);
        assert_eq!(prod, bipoly_mul_schoolbook(&a, &b, &m));
    }

    #[test]
    fn mul_identity() {
        let m = modulus(998244353);
        let mut rng = SplitMix64::new(11);
        let a = random_bipoly(&mut rng, 4, 3, &m);
        assert_eq!(bipoly_mul(&a, &BiPoly::one(), &m), a);
    }

    #[test]
    fn mul_matches_schoolbook_randomized() {
        for p in [998244353u64, 1000000007] {
            let m = modulus(p);
            let mut rng = SplitMix64::new(p ^ 17);
            for _ in 0..25 {
                let (nxa, nya) = (
                    1 + rng.next_below(16) as usize,
                    1 + rng.next_below(16) as usize,
                );
                let (nxb, nyb) = (
                    1 + rng.next_below(16) as usize,
                    1 + rng.next_below(16) as usize,
                );
                let a = random_bipoly(&mut rng, nxa, nya, &m);
                let b = random_bipoly(&mut rng, nxb, nyb, &m);
                assert_eq!(
                    bipoly_mul(&a, &b, &m),
                    bipoly_mul_schoolbook(&a, &b, &m),
                    "p={p} a=({nxa},{nya}) b=({nxb},{nyb})"
                );
            }
        }
    }

    #[test]
    fn negate_x_examples() {
        let m = modulus(998244353);
        let p = m.p();
        // 1 - xy -> 1 + xy
        let a = BiPoly::from_grid(vec![1, 0, 0, p - 1], 2, 2);
        let n = negate_x(&a, &m);
        assert_eq!(n.get(1, 1), 1);
        assert_eq!(negate_x(&n, &m), a);
        // Even powers are fixed: x^2 y
        let b = BiPoly::from_grid(vec![0, 0, 0, 0, 0, 1], 3, 2);
        assert_eq!(negate_x(&b, &m), b);
    }

    #[test]
    fn even_odd_split_examples() {
        // a = 1 + x + x^2 y
        let a = BiPoly::from_grid(vec![1, 0, 1, 0, 0, 1], 3, 2);
        let e = even_part_x(&a);
        assert_eq!((e.nx(), e.ny()), (2, 2));
        assert_eq!(e.grid(), &[1, 0, 0, 1]); // 1 + xy
        let o = odd_part_x(&a);
        assert_eq!((o.nx(), o.ny()), (1, 2));
        assert_eq!(o.grid(), &[1, 0]); // 1

        // Only odd powers: even part is all zero.
        let b = BiPoly::from_grid(vec![0, 7, 0, 3], 4, 1);
        assert!(even_part_x(&b).grid().iter().all(|&c| c == 0));

        // nx = 1 odd part: a single zero row.
        let c = BiPoly::from_grid(vec![5, 6], 1, 2);
        let oc = odd_part_x(&c);
        assert_eq!((oc.nx(), oc.ny()), (1, 2));
        assert!(oc.grid().iter().all(|&v| v == 0));
    }

    #[test]
    fn substitute_examples() {
        // 1 + xy -> 1 + x^2 y
        let a = BiPoly::from_grid(vec![1, 0, 0, 1], 2, 2);
        let s = substitute_x_squared(&a);
        assert_eq!((s.nx(), s.ny()), (3, 2));
        assert_eq!(s.get(2, 1), 1);
        assert_eq!(s.get(1, 0), 0);
        assert_eq!(even_part_x(&s), a);
        // Zero stays zero.
        let z = substitute_x_squared(&BiPoly::zeros(1, 1));
        assert_eq!((z.nx(), z.ny()), (1, 1));
        assert_eq!(z.grid(), &[0]);
    }

    #[test]
    fn even_odd_reconstruction() {
        let m = modulus(998244353);
        let mut rng = SplitMix64::new(23);
        for _ in 0..20 {
            let (nx, ny) = (
                1 + rng.next_below(9) as usize,
                1 + rng.next_below(9) as usize,
            );
            let a = random_bipoly(&mut rng, nx, ny, &m);
            let e = substitute_x_squared(&even_part_x(&a));
            let o = substitute_x_squared(&odd_part_x(&a));
            // a == e(x^2) + x * o(x^2), checked entrywise.
            for i in 0..a.nx() {
                for j in 0..a.ny() {
                    let from_o = if i >= 1 { o.get(i - 1, j) } else { 0 };
                    assert_eq!(a.get(i, j), m.add(e.get(i, j), from_o));
                }
            }
        }
    }

    #[test]
    fn graeffe_product_is_even_in_x() {
        let m = modulus(998244353);
        let mut rng = SplitMix64::new(31);
        for _ in 0..20 {
            let (nx, ny) = (
                1 + rng.next_below(12) as usize,
                1 + rng.next_below(6) as usize,
            );
            let a = random_bipoly(&mut rng, nx, ny, &m);
            let prod = bipoly_mul(&a, &negate_x(&a, &m), &m);
            for i in (1..prod.nx()).step_by(2) {
                for j in 0..prod.ny() {
                    assert_eq!(prod.get(i, j), 0, "odd row {i} must vanish");
                }
            }
        }
    }

    #[test]
    fn truncate_examples() {
        let a = BiPoly::from_grid(vec![1, 0, 0, 0, 0, 0, 0, 0, 1], 3, 3); // 1 + x^2 y^2
        assert_eq!(truncate_xy(&a, 3, 3), a);
        let t = truncate_xy(&a, 2, 2);
        assert_eq!((t.nx(), t.ny()), (2, 2));
        assert_eq!(t.grid(), &[1, 0, 0, 0]);
    }

    #[test]
    fn truncate_commutes_with_mul() {
        let m = modulus(998244353);
        let mut rng = SplitMix64::new(41);
        for _ in 0..10 {
            let a = random_bipoly(&mut rng, 6, 4, &m);
            let b = random_bipoly(&mut rng, 5, 3, &m);
            let (n, my) = (4, 3);
            let full = truncate_xy(&bipoly_mul_schoolbook(&a, &b, &m), n, my);
            let pre = bipoly_mul(
                &truncate_xy(&a, n, my),
                &truncate_xy(&b, n, my),
                &m,
            );
            assert_eq!(truncate_xy(&pre, n, my), full);
        }
    }

    #[test]
    fn scanned_bideg_reports_actual_degree() {
        let mut g = vec![0u64; 12];
        g[6] = 9; // x^1 y^2 in a 3x4 grid
        let a = BiPoly::from_grid(g, 3, 4);
        assert_eq!(a.scanned_bideg(), Some((1, 2)));
        assert_eq!(BiPoly::zeros(2, 2).scanned_bideg(), None);
    }
}
