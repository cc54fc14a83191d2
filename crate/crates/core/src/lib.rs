//! Exact arithmetic for rank-1 Drinfeld modules over global function fields.
//!
//! The crate builds up, layer by layer:
//! - [`fq`], [`poly`], [`ratfn`]: finite fields F_{p^m}, univariate
//!   polynomials, and rational functions over F_q;
//! - [`laurent`]: truncated Laurent series with certified precision, the
//!   numeric carrier for the completion at infinity;
//! - [`curve`]: the coordinate rings A (rational and quadratic plane models),
//!   elements of K = Frac(A), valuation and degree at the infinite place, and
//!   Laurent expansion there;
//! - [`sign`]: sign functions and positivity;
//! - [`ideal`]: fractional ideals as Hermite-normal-form modules over F_q[x],
//!   class groups, degree-sorted ideal bases, and torsion representatives;
//! - [`zeta`]: partial zeta values over positive ideal elements and the
//!   rank-1 modular invariant j;
//! - [`ore`]: the twisted polynomial ring L{tau} with tau a = a^q tau;
//! - [`drinfeld`]: lattice power sums, exponential coefficients, Drinfeld
//!   module coefficients, the Hayes *-action, torsion values, and
//!   sign-normalization analysis;
//! - [`verify`]: seeded self-check suites used by the CLI.

pub mod error;
pub mod fq;
pub mod ideal;
pub mod laurent;
pub mod basis;
pub mod classgroup;
pub mod curve;
pub mod drinfeld;
pub mod ore;
pub mod poly;
pub mod ratfn;
pub mod sign;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
