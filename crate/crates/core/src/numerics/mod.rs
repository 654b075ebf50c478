//! Extended-precision arithmetic context and the classical special functions
//! the remainder family is built from.
//!
//! Arithmetic is MPFR (through `rug`); everything above the raw field
//! operations, `exp` and `ln` is implemented here: the Stirling-series gamma
//! function, the positive series for `γ(v, x)` and `₁F₁(1; b; x)`, and the
//! adaptive Gauss–Legendre quadrature used as an independent oracle.

mod context;
mod extrapolate;
mod gamma;
mod incgamma;
mod kummer;
mod quad;
pub(crate) mod series;

pub use context::{format_real, PrecisionContext, Real};
pub use gamma::gamma_fn;
pub use incgamma::lower_incomplete_gamma;
pub use kummer::kummer_1f1_one;
pub use quad::{quad_integral, QuadResult};

pub(crate) use context::Work;
pub(crate) use extrapolate::{last_three_agree, richardson_diagonal};
pub(crate) use gamma::gamma_at;
pub(crate) use incgamma::lower_incomplete_gamma_at;
pub(crate) use kummer::{kummer_at, kummer_gap_at, kummer_minus_one_at};
pub(crate) use quad::quad_at;
