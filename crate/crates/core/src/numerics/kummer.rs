use rug::Float;

use super::series::{sum_positive, term_budget};
use super::{PrecisionContext, Real, Work};
use crate::error::{Error, Result};

/// `₁F₁(1; b; x) = Σ_k x^k / (b)_k`.
///
/// For `x ≥ 0` the defining series has positive terms. For `x < 0` the
/// Kummer transformation `₁F₁(1; b; x) = e^x ₁F₁(b-1; b; -x)` is used so the
/// summed terms stay positive there as well.
pub fn kummer_1f1_one(b: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let w = ctx.work();
    kummer_at(&ctx.widen(b), &ctx.widen(x), w).map(|v| ctx.finish(v))
}

fn check_b(b: &Float) -> Result<()> {
    if !b.is_finite() || *b <= 0u32 {
        return Err(Error::domain(
            "kummer_1f1_one",
            format!("b must be positive, got {}", b.to_f64()),
        ));
    }
    Ok(())
}

fn check_x(x: &Float) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::domain("kummer_1f1_one", "x must be finite"));
    }
    Ok(())
}

pub(crate) fn kummer_at(b: &Float, x: &Float, w: Work) -> Result<Float> {
    check_b(b)?;
    check_x(x)?;
    let p = w.prec;
    let budget = term_budget(x, p);
    if *x >= 0u32 {
        sum_positive(
            Float::with_val(p, 1u32),
            |k| Float::with_val(p, x) / Float::with_val(p, b + k),
            w,
            budget,
            "kummer_1f1_one",
        )
    } else {
        // Σ_k (b-1)_k/(b)_k · |x|^k / k!
        let ax = Float::with_val(p, x.abs_ref());
        let bm1 = Float::with_val(p, b - 1u32);
        let s = sum_positive(
            Float::with_val(p, 1u32),
            |k| {
                let num = Float::with_val(p, &bm1 + k) * &ax;
                let den = Float::with_val(p, b + k) * (k + 1);
                num / den
            },
            w,
            budget,
            "kummer_1f1_one",
        )?;
        Ok(s * Float::with_val(p, x.exp_ref()))
    }
}

/// `₁F₁(1; b; x) - 1` for `x ≥ 0`, summed from the first nonconstant term.
pub(crate) fn kummer_minus_one_at(b: &Float, x: &Float, w: Work) -> Result<Float> {
    check_b(b)?;
    check_x(x)?;
    debug_assert!(*x >= 0u32);
    let p = w.prec;
    let first = Float::with_val(p, x / b);
    sum_positive(
        first,
        |k| Float::with_val(p, x) / Float::with_val(p, b + (k + 1)),
        w,
        term_budget(x, p),
        "kummer_1f1_one",
    )
}

/// `₁F₁(1; b; x) - ₁F₁(1; b+1; x) = Σ_{k≥1} k x^k / ((b)_k (b+k))` for `x ≥ 0`.
pub(crate) fn kummer_gap_at(b: &Float, x: &Float, w: Work) -> Result<Float> {
    check_b(b)?;
    check_x(x)?;
    debug_assert!(*x >= 0u32);
    let p = w.prec;
    let b1 = Float::with_val(p, b + 1u32);
    let first = Float::with_val(p, x / b) / b1;
    sum_positive(
        first,
        |k| {
            // t_{j+1}/t_j = (j+1) x / (j (b+j+1)) with j = k+1
            let j = k + 1;
            Float::with_val(p, x * (j + 1)) / (Float::with_val(p, b + (j + 1)) * j)
        },
        w,
        term_budget(x, p),
        "kummer_1f1_one",
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_two_closed_form() {
        let ctx = PrecisionContext::new(256).unwrap();
        let x = ctx.real(1.0);
        let v = kummer_1f1_one(&ctx.real(2.0), &x, &ctx).unwrap();
        let expect = Float::with_val(512, 1u32).exp() - 1u32;
        assert!(Float::with_val(512, &v - &expect).abs() < 1e-70);
        assert!(ctx.format(&v).starts_with("1.718281828"));
    }

    #[test]
    fn zero_argument_is_one() {
        let ctx = PrecisionContext::new(128).unwrap();
        for b in [0.25, 1.0, 7.5] {
            assert_eq!(
                kummer_1f1_one(&ctx.real(b), &ctx.real(0.0), &ctx).unwrap(),
                1u32
            );
        }
    }

    #[test]
    fn negative_argument_matches_closed_forms() {
        let ctx = PrecisionContext::new(256).unwrap();
        // 1F1(1;1;x) = e^x, 1F1(1;2;x) = (e^x - 1)/x
        let x = ctx.real(-7.5);
        let e = Float::with_val(512, x.exp_ref());
        let v1 = kummer_1f1_one(&ctx.real(1.0), &x, &ctx).unwrap();
        assert!(Float::with_val(512, Float::with_val(512, &v1 - &e) / &e).abs() < 1e-70);
        let v2 = kummer_1f1_one(&ctx.real(2.0), &x, &ctx).unwrap();
        let expect = (e - 1u32) / Float::with_val(512, &x);
        assert!(Float::with_val(512, Float::with_val(512, &v2 - &expect) / &expect).abs() < 1e-70);
    }

    #[test]
    fn gap_and_minus_one_agree_with_direct_sums() {
        let ctx = PrecisionContext::new(256).unwrap();
        let w = ctx.work();
        for (b, x) in [(2.5, 0.001), (3.0, 1.0), (0.5, 12.0)] {
            let b = w.real(b);
            let x = w.real(x);
            let f0 = kummer_at(&b, &x, w).unwrap();
            let f1 = kummer_at(&Float::with_val(w.prec, &b + 1u32), &x, w).unwrap();
            let gap = kummer_gap_at(&b, &x, w).unwrap();
            let direct = Float::with_val(w.prec, &f0 - &f1);
            assert!(
                Float::with_val(w.prec, Float::with_val(w.prec, &gap - &direct) / &gap).abs()
                    < 1e-60
            );
            let m1 = kummer_minus_one_at(&b, &x, w).unwrap();
            assert!(Float::with_val(w.prec, (&m1 - (f0 - 1u32)) / &m1).abs() < 1e-60);
        }
    }

    #[test]
    fn rejects_nonpositive_b() {
        let ctx = PrecisionContext::new(64).unwrap();
        assert!(kummer_1f1_one(&ctx.real(0.0), &ctx.real(1.0), &ctx).is_err());
        assert!(kummer_1f1_one(&ctx.real(-2.0), &ctx.real(1.0), &ctx).is_err());
    }
}
