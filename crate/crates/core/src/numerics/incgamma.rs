use rug::ops::Pow;
use rug::Float;

use super::series::{sum_positive, term_budget};
use super::{PrecisionContext, Real, Work};
use crate::error::{Error, Result};

/// Lower incomplete gamma `γ(v, x) = ∫_0^x t^{v-1} e^{-t} dt`, summed as
/// `x^v e^{-x} Σ_k x^k / (v (v+1) … (v+k))`.
pub fn lower_incomplete_gamma(v: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let w = ctx.work();
    lower_incomplete_gamma_at(&ctx.widen(v), &ctx.widen(x), w).map(|g| ctx.finish(g))
}

pub(crate) fn lower_incomplete_gamma_at(v: &Float, x: &Float, w: Work) -> Result<Float> {
    if !v.is_finite() || *v <= 0u32 {
        return Err(Error::domain(
            "lower_incomplete_gamma",
            format!("v must be positive, got {}", v.to_f64()),
        ));
    }
    if !x.is_finite() || *x < 0u32 {
        return Err(Error::domain(
            "lower_incomplete_gamma",
            format!("x must be nonnegative, got {}", x.to_f64()),
        ));
    }
    let p = w.prec;
    if x.is_zero() {
        return Ok(Float::new(p));
    }
    let first = Float::with_val(p, v.recip_ref());
    let s = sum_positive(
        first,
        |k| Float::with_val(p, x) / Float::with_val(p, v + (k + 1)),
        w,
        term_budget(x, p),
        "lower_incomplete_gamma",
    )?;
    let prefactor = Float::with_val(p, x.pow(v)) * Float::with_val(p, -x.clone()).exp();
    Ok(s * prefactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_one_is_one_minus_exp() {
        let ctx = PrecisionContext::new(256).unwrap();
        for x in [0.5, 1.0, 2.0] {
            let x = ctx.real(x);
            let g = lower_incomplete_gamma(&ctx.real(1.0), &x, &ctx).unwrap();
            let expect = 1u32 - Float::with_val(512, -x.clone()).exp();
            assert!(
                Float::with_val(512, Float::with_val(512, &g - &expect) / &expect).abs() < 1e-70
            );
        }
    }

    #[test]
    fn zero_upper_limit() {
        let ctx = PrecisionContext::new(128).unwrap();
        assert!(lower_incomplete_gamma(&ctx.real(2.5), &ctx.real(0.0), &ctx)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn domain_errors() {
        let ctx = PrecisionContext::new(64).unwrap();
        assert!(lower_incomplete_gamma(&ctx.real(0.0), &ctx.real(1.0), &ctx).is_err());
        assert!(lower_incomplete_gamma(&ctx.real(1.0), &ctx.real(-1.0), &ctx).is_err());
    }
}
