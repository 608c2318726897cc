//! Power projection: given a linear form `w` on truncated series and a
//! polynomial `g`, compute `w(g^i mod x^n)` for `i = 0..m-1`.
//!
//! The output generating function is the coefficient of `x^(n-1)` in the
//! bivariate rational series `w_rev(x) / (1 - y g(x))`. Each Graeffe step
//! multiplies numerator and denominator by the denominator's x-negation; the
//! product denominator is even in x, so the x-order halves while the y-size
//! at most doubles (capped at `m`). After `log n` steps one truncated
//! reciprocal in `y` finishes the job, for `O(M(n) log m + M(m))` total.

use crate::bipoly::{bipoly_mul, even_part_x, negate_x, odd_part_x, truncate_xy, BiPoly};
use crate::error::{Error, Result};
use crate::field::{FieldElem, PrimeModulus};
use crate::unipoly::{poly_mul, poly_recip, reverse, truncate, UniPoly};

/// The weight vector identifying a linear form on `A[x]_{<n}`:
/// `w(sum a_i x^i) = sum w_i a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    weights: Vec<FieldElem>,
}

impl LinearForm {
    pub fn new(weights: Vec<FieldElem>) -> Self {
        LinearForm { weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[FieldElem] {
        &self.weights
    }
}

/// Which x-parity of the numerator survives a Graeffe step. The driver picks
/// `Even` when `n - 1` is even and `Odd` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParitySelect {
    Even,
    Odd,
}

/// Scanned bidegrees of the loop state at one level, with the proof bound
/// they must stay under.
#[derive(Debug, Clone)]
pub struct LevelBideg {
    pub level: u32,
    /// Current x-truncation order on entry to this level.
    pub n: usize,
    pub p_bideg: Option<(usize, usize)>,
    pub q_bideg: Option<(usize, usize)>,
    /// `(ceil(n0 / 2^level) - 1, min(2^level, m - 1))`.
    pub bound: (usize, usize),
}

impl LevelBideg {
    pub fn within_bounds(&self) -> bool {
        bideg_fits(self.p_bideg, self.bound) && bideg_fits(self.q_bideg, self.bound)
    }
}

pub(crate) fn bideg_fits(d: Option<(usize, usize)>, bound: (usize, usize)) -> bool {
    d.map_or(true, |(dx, dy)| dx <= bound.0 && dy <= bound.1)
}

/// `(ceil(n0 / 2^level) - 1, min(2^level, m - 1))`, the per-level cap on the
/// bidegrees of both loop polynomials.
pub(crate) fn bideg_bound(n0: usize, m: usize, level: u32) -> (usize, usize) {
    let pow = 1usize.checked_shl(level).unwrap_or(usize::MAX);
    (n0.div_ceil(pow) - 1, pow.min(m - 1))
}

/// Per-level bidegree log of an instrumented projection run.
#[derive(Debug, Clone, Default)]
pub struct GraeffeTrace {
    pub levels: Vec<LevelBideg>,
}

impl GraeffeTrace {
    pub fn all_within_bounds(&self) -> bool {
        self.levels.iter().all(LevelBideg::within_bounds)
    }
}

/// `1 - y g(x)` as an `n x min(2, m)` grid (coefficients of `g` beyond `x^n`
/// are dropped, and the `y` row is dropped entirely when `m = 1`).
pub(crate) fn one_minus_y_g(g: &UniPoly, n: usize, m: usize, md: &PrimeModulus) -> BiPoly {
    let ny = 2.min(m);
    let mut grid = vec![0u64; n * ny];
    grid[0] = 1;
    if ny == 2 {
        for i in 0..g.len().min(n) {
            grid[i * 2 + 1] = md.neg(g.get(i));
        }
    }
    BiPoly::from_grid(grid, n, ny)
}

/// `w(g^i mod x^n)` for `i = 0..m-1`, returned as a length-`m` polynomial in
/// `y`. Requires `w.len() == n` and `g.len() <= n`.
pub fn power_projection(
    w: &LinearForm,
    g: &UniPoly,
    n: usize,
    m: usize,
    md: &PrimeModulus,
) -> Result<UniPoly> {
    run_projection(w, g, n, m, md, None)
}

/// As [`power_projection`], additionally recording scanned bidegrees of the
/// loop state at every level.
pub fn power_projection_traced(
    w: &LinearForm,
    g: &UniPoly,
    n: usize,
    m: usize,
    md: &PrimeModulus,
) -> Result<(UniPoly, GraeffeTrace)> {
    let mut trace = GraeffeTrace::default();
    let out = run_projection(w, g, n, m, md, Some(&mut trace))?;
    Ok((out, trace))
}

fn run_projection(
    w: &LinearForm,
    g: &UniPoly,
    n: usize,
    m: usize,
    md: &PrimeModulus,
    mut trace: Option<&mut GraeffeTrace>,
) -> Result<UniPoly> {
    if n < 1 || m < 1 {
        return Err(Error::BadDimensions(format!(
            "projection orders must be positive, got n={n}, m={m}"
        )));
    }
    if w.len() != n {
        return Err(Error::BadDimensions(format!(
            "weight vector has length {}, expected n={n}",
            w.len()
        )));
    }
    if g.len() > n {
        return Err(Error::BadDimensions(format!(
            "g has length {}, which exceeds n={n}",
            g.len()
        )));
    }

    let w_rev = reverse(&UniPoly::new(w.weights().to_vec()), n);
    let mut p = BiPoly::from_x_poly(&w_rev);
    let mut q = one_minus_y_g(g, n, m, md);
    let mut cur_n = n;
    let mut level = 0u32;
    loop {
        if let Some(t) = trace.as_deref_mut() {
            t.levels.push(LevelBideg {
                level,
                n: cur_n,
                p_bideg: p.scanned_bideg(),
                q_bideg: q.scanned_bideg(),
                bound: bideg_bound(n, m, level),
            });
        }
        if cur_n <= 1 {
            break;
        }
        let parity = if (cur_n - 1) % 2 == 0 {
            ParitySelect::Even
        } else {
            ParitySelect::Odd
        };
        let (next_p, next_q, next_n) = graeffe_step_proj(&p, &q, cur_n, m, parity, md)?;
        p = next_p;
        q = next_q;
        cur_n = next_n;
        level += 1;
    }

    // x is exhausted: the answer is P(0, y) / Q(0, y) mod y^m.
    let p0 = truncate(&p.x0_poly(), m);
    let q0 = truncate(&q.x0_poly(), m);
    let recip = poly_recip(&q0, m, md)?;
    Ok(truncate(&poly_mul(&p0, &recip, md), m))
}

/// One Graeffe iteration of the projection loop:
/// `U = P Q(-x) mod x^n mod y^m`, keep the selected x-parity of `U` as the
/// new `P`; `A = Q Q(-x) mod x^n mod y^m`, keep the even x-part as the new
/// `Q`; the order drops to `ceil(n/2)`. Requires a unit constant term in `Q`,
/// which the step preserves.
pub fn graeffe_step_proj(
    p: &BiPoly,
    q: &BiPoly,
    n: usize,
    m: usize,
    parity: ParitySelect,
    md: &PrimeModulus,
) -> Result<(BiPoly, BiPoly, usize)> {
    if n < 1 || m < 1 {
        return Err(Error::BadDimensions(format!(
            "step orders must be positive, got n={n}, m={m}"
        )));
    }
    if q.get(0, 0) != 1 {
        return Err(Error::BadConstantTerm);
    }
    let q_neg = negate_x(q, md);
    let u = truncate_xy(&bipoly_mul(p, &q_neg, md), n, m);
    let next_p = match parity {
        ParitySelect::Even => even_part_x(&u),
        ParitySelect::Odd => odd_part_x(&u),
    };
    let a = truncate_xy(&bipoly_mul(q, &q_neg, md), n, m);
    let next_q = even_part_x(&a);
    debug_assert_eq!(next_q.get(0, 0), 1);
    Ok((next_p, next_q, n.div_ceil(2)))
}
