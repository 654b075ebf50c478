//! Summation of nonnegative hypergeometric-type series.

use rug::Float;

use super::Work;
use crate::error::{Error, Result};

/// Term budget from the ratio test: terms of a series with ratio
/// `|x| / (b + k)` stop growing after about `|x|` steps, and from there the
/// tail shrinks by at least `2^-prec` within another `|x| + 2·prec` steps.
pub(crate) fn term_budget(x_abs: &Float, prec: u32) -> u64 {
    let x = x_abs.to_f64().abs();
    if !x.is_finite() || x > 1e12 {
        return u64::MAX;
    }
    (3.0 * x) as u64 + 2 * prec as u64 + 200
}

/// Sum `t_0 + t_1 + …` with `t_{k+1} = t_k · ratio(k)`, all terms
/// nonnegative and the ratios nonincreasing once below one.
///
/// Stops when the geometric bound on the remaining tail,
/// `t_k · r / (1 - r)`, falls under `tol · sum`.
pub(crate) fn sum_positive<F>(
    first: Float,
    mut ratio: F,
    work: Work,
    budget: u64,
    op: &'static str,
) -> Result<Float>
where
    F: FnMut(u64) -> Float,
{
    let prec = work.prec;
    let mut term = Float::with_val(prec, first);
    let mut sum = term.clone();
    let mut k: u64 = 0;
    loop {
        if k >= budget {
            return Err(Error::NoConvergence {
                op,
                estimate: super::context::format_real(&sum, 20),
                detail: format!("series not converged after {budget} terms"),
            });
        }
        let r = ratio(k);
        term *= &r;
        sum += &term;
        k += 1;
        if term.is_zero() {
            break;
        }
        if r < 1u32 {
            let one_minus = Float::with_val(prec, 1u32 - &r);
            let tail = Float::with_val(prec, &term * &r) / one_minus;
            if tail <= Float::with_val(prec, &sum * work.tol) {
                break;
            }
        }
    }
    Ok(sum)
}
