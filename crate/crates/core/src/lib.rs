//! Power series composition `f(g(x)) mod x^n` and its transpose, power
//! projection, over word-size prime fields — in softly linear time.
//!
//! Both problems are solved by a Graeffe iteration on a bivariate rational
//! series: the denominator `Q(x, y) = 1 - y g(x)` is repeatedly multiplied by
//! `Q(-x, y)` so the x-size halves while the y-size doubles, keeping the work
//! per level at one pair of Kronecker products. One truncated-reciprocal
//! solve in `y` finishes either direction. The whole pipeline costs
//! `O(M(n) log m + M(m))` field operations, with `M` realized by a
//! number-theoretic transform (directly for NTT-friendly moduli, through a
//! fixed three-prime CRT lift for every other odd prime below `2^62`).
//!
//! Brute-force oracles ([`mod@reference`]) ship with the library so
//! equivalence and transpose-duality checks can run anywhere.

pub mod bipoly;
pub mod compose;
pub mod error;
pub mod field;
pub mod powproj;
pub mod reference;
pub mod rng;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use compose::compose_series;
pub use error::{Error, Result};
pub use field::{FieldElem, PrimeModulus};
pub use powproj::{power_projection, LinearForm};
pub use unipoly::UniPoly;

/// The default working prime `119 * 2^23 + 1`, NTT-friendly up to size `2^23`.
pub const DEFAULT_MODULUS: u64 = 998244353;
