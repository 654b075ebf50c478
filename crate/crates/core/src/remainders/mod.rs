//! The exponential remainder `R_n(x) = e^x - Σ_{k≤n} x^k/k!` and its
//! relatives, each with at least two independent evaluation paths.
//!
//! Primary paths are positive series; quadrature and the subtraction form
//! (at boosted precision) exist as cross-checks.

mod paths;

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::numerics::series::{sum_positive, term_budget};
use crate::numerics::{
    gamma_at, kummer_at, kummer_gap_at, kummer_minus_one_at, PrecisionContext, Real, Work,
};

pub use paths::{cross_check, evaluate_paths, PathValue};

/// Which remainder, with its order parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum RemainderSpec {
    /// `R_n(x)`, `x ≥ 0`.
    IntegerTail { n: u32 },
    /// `R_a(x) = I^{a+1}_{0+}(e^x)`, `a > -1`.
    Fractional { a: Real },
    /// `|R_n(-x)|`, `x ≥ 0`.
    NegativeArgument { n: u32 },
    /// `R_{n,m}(x) = (-1)^m/(n+m)! ∫_0^x (x-t)^n t^m e^t dt`.
    Obreshkov { n: u32, m: u32 },
}

impl RemainderSpec {
    pub fn fractional(a: Real) -> Result<Self> {
        check_order(&a, "RemainderSpec")?;
        Ok(RemainderSpec::Fractional { a })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RemainderSpec::Fractional { a } => check_order(a, "RemainderSpec"),
            _ => Ok(()),
        }
    }

    /// Value under `ctx`, dispatched to the primary path.
    pub fn eval(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
        match self {
            RemainderSpec::IntegerTail { n } => r_tail(*n, x, ctx),
            RemainderSpec::Fractional { a } => r_frac(a, x, ctx),
            RemainderSpec::NegativeArgument { n } => r_neg(*n, x, ctx),
            RemainderSpec::Obreshkov { n, m } => r_obreshkov(*n, *m, x, ctx),
        }
    }
}

fn check_order(a: &Float, op: &'static str) -> Result<()> {
    if !a.is_finite() || *a <= -1i32 {
        return Err(Error::domain(
            op,
            format!("order must exceed -1, got {}", a.to_f64()),
        ));
    }
    Ok(())
}

fn check_x_nonneg(x: &Float, op: &'static str) -> Result<()> {
    if !x.is_finite() || *x < 0u32 {
        return Err(Error::domain(
            op,
            format!("x must be finite and nonnegative, got {}", x.to_f64()),
        ));
    }
    Ok(())
}

fn check_x_pos(x: &Float, op: &'static str) -> Result<()> {
    if !x.is_finite() || *x <= 0u32 {
        return Err(Error::domain(
            op,
            format!("x must be positive, got {}", x.to_f64()),
        ));
    }
    Ok(())
}

/// `R_n(x) = Σ_{k>n} x^k/k!`, summed term by term.
pub fn r_tail(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    r_tail_at(n, &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn r_tail_at(n: u32, x: &Float, w: Work) -> Result<Float> {
    check_x_nonneg(x, "r_tail")?;
    let p = w.prec;
    if x.is_zero() {
        return Ok(Float::new(p));
    }
    let first = power_over_factorial(x, n + 1, p);
    sum_positive(
        first,
        |k| Float::with_val(p, x) / (u64::from(n) + 2 + k),
        w,
        term_budget(x, p),
        "r_tail",
    )
}

/// `x^k / k!`
pub(crate) fn power_over_factorial(x: &Float, k: u32, p: u32) -> Float {
    Float::with_val(p, x.pow(k)) / Float::with_val(p, factorial(k))
}

pub(crate) fn factorial(k: u32) -> Integer {
    Integer::from(Integer::factorial(k))
}

/// Fractional remainder `R_a(x) = x^{a+1}/Γ(a+2) · ₁F₁(1; a+2; x)`.
pub fn r_frac(a: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    r_frac_at(&ctx.widen(a), &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn r_frac_at(a: &Float, x: &Float, w: Work) -> Result<Float> {
    check_order(a, "r_frac")?;
    check_x_nonneg(x, "r_frac")?;
    let p = w.prec;
    if x.is_zero() {
        return Ok(Float::new(p));
    }
    let b = Float::with_val(p, a + 2u32);
    let f = kummer_at(&b, x, w)?;
    let pw = Float::with_val(p, x.pow(Float::with_val(p, a + 1u32)));
    Ok(pw * f / gamma_at(&b, p)?)
}

/// `|R_n(-x)| = x^{n+1} e^{-x} / n! · Σ_k x^k / (k! (n+1+k))`.
///
/// The sign of `R_n(-x)` itself is [`r_neg_sign`].
pub fn r_neg(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    r_neg_at(n, &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

/// Sign of `R_n(-x)` for `x > 0`: `(-1)^{n+1}`.
pub fn r_neg_sign(n: u32) -> i32 {
    if n % 2 == 0 {
        -1
    } else {
        1
    }
}

pub(crate) fn r_neg_at(n: u32, x: &Float, w: Work) -> Result<Float> {
    check_x_nonneg(x, "r_neg")?;
    let p = w.prec;
    if x.is_zero() {
        return Ok(Float::new(p));
    }
    let n1 = u64::from(n) + 1;
    let first = Float::with_val(p, 1u32) / n1;
    let s = sum_positive(
        first,
        |k| Float::with_val(p, x * (n1 + k)) / ((k + 1) * (n1 + k + 1)),
        w,
        term_budget(x, p),
        "r_neg",
    )?;
    let pre = power_over_factorial(x, n + 1, p) * (n + 1) * Float::with_val(p, -x.clone()).exp();
    Ok(s * pre)
}

/// Obreshkov remainder `R_{n,m}(x)`, signed:
/// `(-1)^m n!/(n+m)! · Σ_k (m+k)! / (k! (n+m+k+1)!) · x^{n+m+k+1}`.
pub fn r_obreshkov(n: u32, m: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    r_obreshkov_at(n, m, &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn r_obreshkov_at(n: u32, m: u32, x: &Float, w: Work) -> Result<Float> {
    check_x_nonneg(x, "r_obreshkov")?;
    let p = w.prec;
    if x.is_zero() {
        return Ok(Float::new(p));
    }
    let (n64, m64) = (u64::from(n), u64::from(m));
    // k = 0 term including the n!/(n+m)! prefactor
    let coeff = factorial(n) * factorial(m);
    let den = factorial(n + m) * factorial(n + m + 1);
    let first =
        Float::with_val(p, x.pow(n + m + 1)) * Float::with_val(p, coeff) / Float::with_val(p, den);
    let s = sum_positive(
        first,
        |k| Float::with_val(p, x * (m64 + k + 1)) / ((k + 1) * (n64 + m64 + k + 2)),
        w,
        term_budget(x, p),
        "r_obreshkov",
    )?;
    Ok(if m % 2 == 1 { -s } else { s })
}

/// Gautschi's `Q_n(x)` from `R_n(x) = x^{n+1}/(n+1)! · e^{x Q_n(x)}`.
pub fn q_value(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    q_value_at(n, &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn q_value_at(n: u32, x: &Float, w: Work) -> Result<Float> {
    if n < 1 {
        return Err(Error::domain("q_value", "n must be at least 1"));
    }
    check_x_pos(x, "q_value")?;
    let p = w.prec;
    // (n+1)! R_n x^{-(n+1)} = ₁F₁(1; n+2; x); take ln(1 + (F - 1)) to keep
    // the small-x digits.
    let b = Float::with_val(p, n + 2);
    let fm1 = kummer_minus_one_at(&b, x, w)?;
    Ok(fm1.ln_1p() / x)
}

/// `B_ν(x) = Γ(ν+2) R_ν(x) = x^{ν+1} ₁F₁(1; ν+2; x)`.
pub fn b_value(nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    b_value_at(&ctx.widen(nu), &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn b_value_at(nu: &Float, x: &Float, w: Work) -> Result<Float> {
    check_order(nu, "b_value")?;
    check_x_nonneg(x, "b_value")?;
    let p = w.prec;
    if x.is_zero() {
        return Ok(Float::new(p));
    }
    let b = Float::with_val(p, nu + 2u32);
    let f = kummer_at(&b, x, w)?;
    Ok(Float::with_val(p, x.pow(Float::with_val(p, nu + 1u32))) * f)
}

/// `ε_ν(x) = R_ν(x)/R_{ν+1}(x) - (ν+2)/x`, computed as
/// `(ν+2)/x · (F(ν+2) - F(ν+3)) / F(ν+3)` with `F(b) = ₁F₁(1; b; x)` and the
/// difference summed as its own positive series.
pub fn eps_value(nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    eps_value_at(&ctx.widen(nu), &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn eps_value_at(nu: &Float, x: &Float, w: Work) -> Result<Float> {
    check_order(nu, "eps_value")?;
    check_x_pos(x, "eps_value")?;
    let p = w.prec;
    let b = Float::with_val(p, nu + 2u32);
    let gap = kummer_gap_at(&b, x, w)?;
    let f3 = kummer_at(&Float::with_val(p, &b + 1u32), x, w)?;
    Ok(b / x * gap / f3)
}

/// `g_n(x) = R_{n-1}(x) / R_n(x) = 1 + x^n / (n! R_n(x))`.
pub fn g_ratio(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    g_ratio_at(n, &ctx.widen(x), ctx.work()).map(|v| ctx.finish(v))
}

pub(crate) fn g_ratio_at(n: u32, x: &Float, w: Work) -> Result<Float> {
    if n < 1 {
        return Err(Error::domain("g_ratio", "n must be at least 1"));
    }
    check_x_pos(x, "g_ratio")?;
    let p = w.prec;
    let rn = r_tail_at(n, x, w)?;
    Ok(power_over_factorial(x, n, p) / rn + 1u32)
}

/// A sequence indexed by order together with how many times it has been
/// differenced.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffTable {
    pub values: Vec<Real>,
    pub k: u32,
}

impl DiffTable {
    pub fn new(values: Vec<Real>) -> Self {
        DiffTable { values, k: 0 }
    }
}

/// Forward differences `Δ^k a_n = Σ_j (-1)^{k-j} C(k,j) a_{n+j}`.
pub fn finite_diff(table: &DiffTable, k: u32) -> Result<DiffTable> {
    if k == 0 {
        return Ok(table.clone());
    }
    let len = table.values.len();
    if len < k as usize + 1 {
        return Err(Error::usage(format!(
            "difference of order {k} needs at least {} values, got {len}",
            k + 1
        )));
    }
    let prec = table.values.iter().map(Float::prec).max().unwrap_or(53);
    let binom: Vec<Integer> = (0..=k)
        .map(|j| Integer::from(Integer::binomial_u(k, j)))
        .collect();
    let values = (0..len - k as usize)
        .map(|n| {
            let mut acc = Float::new(prec);
            for (j, b) in binom.iter().enumerate() {
                let term = Float::with_val(prec, &table.values[n + j] * b);
                if (k as usize - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    Ok(DiffTable {
        values,
        k: table.k + k,
    })
}

#[cfg(test)]
mod tests;
