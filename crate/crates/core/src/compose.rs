//! Power series composition `f(g(x)) mod x^n`.
//!
//! The composition is the coefficient of `y^(m-1)` in the bivariate rational
//! series `rev(f)(y) / (1 - y g(x))`, where `rev(f)` reverses `f` to length
//! `m`. The recursion mirrors the projection loop from the other direction:
//! each level squares the denominator against its x-negation (halving the
//! x-order), recurses on the even part, then multiplies back by `Q(-x, y)`
//! and keeps a window of y-rows. The window start `e = max(0, d - deg_y Q)`
//! discards rows that cannot reach the target row `d` once multiplied by
//! `Q(-x, y)`.
//!
//! Since nothing here ever trims stored sizes, `deg_y Q` is tracked as the
//! constructed bound `Q.ny - 1` in O(1) rather than by scanning; instrumented
//! runs record both the tracked value and the scanned one.

use crate::bipoly::{bipoly_mul, even_part_x, negate_x, substitute_x_squared, truncate_xy, BiPoly};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::powproj::{bideg_bound, bideg_fits, one_minus_y_g};
use crate::unipoly::{poly_mul, poly_recip, reverse, truncate, UniPoly};

/// Composition `f(g(x)) mod x^n`, returned with length exactly `n`. The
/// y-truncation order is `m = max(f.len(), 1)`; `g` needs no constraint
/// (coefficients beyond `x^n` are ignored, and `g(0)` may be anything since
/// `f` is a polynomial).
pub fn compose_series(
    f: &UniPoly,
    g: &UniPoly,
    n: usize,
    md: &PrimeModulus,
) -> Result<UniPoly> {
    compose_impl(f, g, n, md, &mut None)
}

/// As [`compose_series`], recording scanned bidegrees of the recursion state
/// at every depth.
pub fn compose_series_traced(
    f: &UniPoly,
    g: &UniPoly,
    n: usize,
    md: &PrimeModulus,
) -> Result<(UniPoly, CompTrace)> {
    let mut trace = Some(CompTrace::default());
    let out = compose_impl(f, g, n, md, &mut trace)?;
    Ok((out, trace.unwrap()))
}

fn compose_impl(
    f: &UniPoly,
    g: &UniPoly,
    n: usize,
    md: &PrimeModulus,
    trace: &mut Option<CompTrace>,
) -> Result<UniPoly> {
    if n < 1 {
        return Err(Error::BadDimensions(format!(
            "composition order must be positive, got n={n}"
        )));
    }
    let m = f.len().max(1);
    let p = reverse(f, m);
    let q = one_minus_y_g(g, n, m, md);
    if let Some(t) = trace.as_mut() {
        t.root_n = n;
        t.m = m;
    }
    let out = comp_rec_inner(n, m - 1, m, &p, &q, md, 0, trace)?;
    debug_assert_eq!(out.ny(), 1);
    let coeffs = (0..out.nx()).map(|i| out.get(i, 0)).collect();
    Ok(truncate(&UniPoly::new(coeffs), n))
}

/// One invocation of the composition recursion: computes the y-rows
/// `d..m-1` of `P(y) / Q(x, y)`, shifted down to start at row 0, truncated
/// mod `x^n`. `P` is a polynomial in `y`; `Q` must have constant term 1.
/// `d = m` is the empty window and yields zero.
pub fn comp_rec(
    n: usize,
    d: usize,
    m: usize,
    p: &UniPoly,
    q: &BiPoly,
    md: &PrimeModulus,
) -> Result<BiPoly> {
    comp_rec_inner(n, d, m, p, q, md, 0, &mut None)
}

#[allow(clippy::too_many_arguments)]
fn comp_rec_inner(
    n: usize,
    d: usize,
    m: usize,
    p: &UniPoly,
    q: &BiPoly,
    md: &PrimeModulus,
    depth: u32,
    trace: &mut Option<CompTrace>,
) -> Result<BiPoly> {
    if n < 1 || m < 1 {
        return Err(Error::BadDimensions(format!(
            "recursion orders must be positive, got n={n}, m={m}"
        )));
    }
    if d > m {
        return Err(Error::BadDimensions(format!(
            "window start d={d} exceeds m={m}"
        )));
    }
    if q.get(0, 0) != 1 {
        return Err(Error::BadConstantTerm);
    }
    if d == m {
        // Empty window.
        return Ok(BiPoly::zeros(1, 1));
    }
    if n == 1 {
        let recip = poly_recip(&truncate(&q.x0_poly(), m), m, md)?;
        let c = truncate(&poly_mul(p, &recip, md), m);
        let windowed = slice_y_poly(&c, d, m);
        if let Some(t) = trace.as_mut() {
            t.levels.push(DepthBideg {
                depth,
                n,
                d,
                q_bideg: q.scanned_bideg(),
                q_bound: bideg_bound(t.root_n, t.m, depth),
                w_bideg: None,
                w_bound: None,
                qdeg_tracked: q.ny() - 1,
            });
        }
        return Ok(BiPoly::from_y_poly(&windowed));
    }

    let q_neg = negate_x(q, md);
    let a = truncate_xy(&bipoly_mul(q, &q_neg, md), n, m);
    let v = even_part_x(&a);
    // Tracked y-degree of Q: exact as a bound because sizes never trim.
    let qdeg = q.ny() - 1;
    let e = d.saturating_sub(qdeg);
    let w = comp_rec_inner(n.div_ceil(2), e, m, p, &v, md, depth + 1, trace)?;
    if let Some(t) = trace.as_mut() {
        t.levels.push(DepthBideg {
            depth,
            n,
            d,
            q_bideg: q.scanned_bideg(),
            q_bound: bideg_bound(t.root_n, t.m, depth),
            w_bideg: w.scanned_bideg(),
            w_bound: Some(bideg_bound(t.root_n, t.m, depth + 1)),
            qdeg_tracked: qdeg,
        });
    }
    let b = bipoly_mul(&substitute_x_squared(&w), &q_neg, md);
    let windowed = slice_y(&b, d - e, m - e);
    Ok(truncate_xy(&windowed, n, windowed.ny()))
}

/// Window operator on y-rows: rows `l..r-1`, shifted down to start at row 0.
/// Rows beyond the stored size read as zero; the output has
/// `ny = max(r - l, 1)`.
pub fn slice_y(a: &BiPoly, l: usize, r: usize) -> BiPoly {
    assert!(l <= r, "slice bounds must satisfy l <= r, got {l} > {r}");
    let ny = (r - l).max(1);
    let mut grid = vec![0u64; a.nx() * ny];
    for i in 0..a.nx() {
        for (jj, slot) in grid[i * ny..i * ny + (r - l)].iter_mut().enumerate() {
            *slot = a.get(i, l + jj);
        }
    }
    BiPoly::from_grid(grid, a.nx(), ny)
}

/// [`slice_y`] for a plain polynomial in `y`.
pub fn slice_y_poly(a: &UniPoly, l: usize, r: usize) -> UniPoly {
    assert!(l <= r, "slice bounds must satisfy l <= r, got {l} > {r}");
    let len = (r - l).max(1);
    let mut v = vec![0u64; len];
    for (jj, slot) in v[..r - l].iter_mut().enumerate() {
        *slot = a.get(l + jj);
    }
    UniPoly::new(v)
}

/// Bidegrees of the recursion state at one depth of an instrumented run.
#[derive(Debug, Clone)]
pub struct DepthBideg {
    pub depth: u32,
    pub n: usize,
    pub d: usize,
    pub q_bideg: Option<(usize, usize)>,
    /// `(ceil(n0 / 2^depth) - 1, min(2^depth, m - 1))`.
    pub q_bound: (usize, usize),
    /// Result of the recursive call; absent at the leaf.
    pub w_bideg: Option<(usize, usize)>,
    pub w_bound: Option<(usize, usize)>,
    /// Constructed y-degree bound of `Q` used for the window arithmetic.
    pub qdeg_tracked: usize,
}

impl DepthBideg {
    pub fn within_bounds(&self) -> bool {
        bideg_fits(self.q_bideg, self.q_bound)
            && match self.w_bound {
                Some(b) => bideg_fits(self.w_bideg, b),
                None => true,
            }
            // Scanning may find less than the tracked bound (degenerate
            // inputs), never more.
            && self.q_bideg.map_or(true, |(_, dy)| dy <= self.qdeg_tracked)
    }
}

/// Per-depth bidegree log of an instrumented composition run.
#[derive(Debug, Clone, Default)]
pub struct CompTrace {
    pub levels: Vec<DepthBideg>,
    pub root_n: usize,
    pub m: usize,
}

impl CompTrace {
    pub fn all_within_bounds(&self) -> bool {
        self.levels.iter().all(DepthBideg::within_bounds)
    }
}
