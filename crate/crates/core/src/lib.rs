//! Exponential Taylor remainders at configurable precision.
//!
//! The remainder `R_n(x) = e^x - Σ_{k≤n} x^k/k!` and its relatives (real
//! orders, negative arguments, Obreshkov remainders) are evaluated with
//! all-positive series so that no digits are lost to cancellation. On top of
//! those primitives the crate carries a catalog of sharp-constant inequalities
//! with margin reporting, Padé approximants of `exp` in exact rational
//! arithmetic, and a set of numerical experiments around open questions.
//!
//! ```
//! use exptail::{numerics::PrecisionContext, remainders};
//!
//! let ctx = PrecisionContext::new(128).unwrap();
//! let r = remainders::r_tail(0, &ctx.real(1.0), &ctx).unwrap();
//! let e_minus_one = ctx.real(1.0).exp() - 1u32;
//! assert!((r - e_minus_one).abs() < 1e-30);
//! ```

pub mod cli;
pub mod error;
pub mod explorer;
pub mod inequalities;
pub mod numerics;
pub mod pade;
pub mod remainders;

pub use error::{Error, Result};
pub use numerics::{PrecisionContext, Real};
