//! Numerical experiments on open questions about the remainder family, and
//! the Runge–Kutta local error identity.
//!
//! Every function returns an evidence report: samples plus diagnostics.
//! Nothing here decides whether a conjecture is true; a sign violation is a
//! finding recorded in the report, not an error.

mod report;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::inequalities::{evaluate_check, CheckId, CheckKind, Params, Status};
use crate::numerics::{last_three_agree, richardson_diagonal, PrecisionContext, Real, Work};
use crate::pade::{eval_approximant_at, pade_exp};
use crate::remainders::{finite_diff, DiffTable};
use crate::remainders::{g_ratio_at, q_value_at, r_neg_at, r_neg_sign, r_obreshkov_at, r_tail_at};

pub use report::{Cell, Report, Table};

/// Agreement of three successive extrapolants for a limit to count as
/// settled.
pub const LIMIT_TOL: f64 = 1e-6;

/// Problems with an implemented experiment.
pub const PROBLEMS: [&str; 9] = ["1", "5", "7", "8", "9", "11", "12", "15", "rk"];

fn par_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

fn rel(a: &Float, scale: &Float) -> Float {
    if scale.is_zero() {
        Float::with_val(a.prec(), a.abs_ref())
    } else {
        Float::with_val(a.prec(), a / scale).abs()
    }
}

fn max_abs(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec(), a.abs_ref()).max(&Float::with_val(b.prec(), b.abs_ref()))
}

fn positive_xs(xs: &[Real], op: &'static str) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::usage(format!("{op}: empty x grid")));
    }
    if xs.iter().any(|x| !x.is_finite() || *x <= 0u32) {
        return Err(Error::usage(format!("{op}: x values must be positive")));
    }
    Ok(())
}

// ---------------------------------------------------------------- problem 1

#[derive(Debug, Clone)]
pub struct MonotonicityPoint {
    pub x: Real,
    /// `R_{n-1} R_{n+1} / R_n²`.
    pub f: Real,
    /// `R_{n-2} R_n R_{n+1} + R_{n-1} R_n²`.
    pub lhs: Real,
    /// `2 R_{n-1}² R_{n+1}`.
    pub rhs: Real,
    pub margin: Real,
    /// `margin / max(lhs, rhs)`.
    pub rel_margin: Real,
}

#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub n: u32,
    pub points: Vec<MonotonicityPoint>,
    pub min_rel_margin: Real,
    pub min_at: Real,
    /// Sign changes of the margin along the grid.
    pub sign_changes: usize,
    /// Whether the sampled `f` increases strictly along the (sorted) grid.
    pub f_increasing: bool,
}

/// Both sides of `R_{n-2} R_n R_{n+1} + R_{n-1} R_n² > 2 R_{n-1}² R_{n+1}`,
/// the derivative condition for `f = R_{n-1} R_{n+1} / R_n²` to increase.
fn reduced_cubic(n: u32, x: &Float, w: Work) -> Result<(Float, Float, Float)> {
    let p = w.prec;
    let r: Vec<Float> = (n - 2..=n + 1)
        .map(|j| r_tail_at(j, x, w))
        .collect::<Result<_>>()?;
    let (r2, r1, r0, rp) = (&r[0], &r[1], &r[2], &r[3]);
    let lhs = Float::with_val(p, r2 * r0) * rp + Float::with_val(p, r1 * r0) * r0;
    let rhs = Float::with_val(p, r1 * r1) * rp * 2u32;
    let f = Float::with_val(p, r1 * rp) / Float::with_val(p, r0 * r0);
    Ok((lhs, rhs, f))
}

pub fn problem1_monotonicity(
    n: u32,
    xs: &[Real],
    ctx: &PrecisionContext,
) -> Result<MonotonicityReport> {
    if n < 2 {
        return Err(Error::usage("problem 1 needs n >= 2"));
    }
    positive_xs(xs, "problem 1")?;
    let w = ctx.work();
    let mut xs = xs.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let points = par_map(&xs, |x| {
        let (lhs, rhs, f) = reduced_cubic(n, &ctx.widen(x), w)?;
        let margin = Float::with_val(w.prec, &lhs - &rhs);
        let rel_margin = rel(&margin, &max_abs(&lhs, &rhs));
        Ok(MonotonicityPoint {
            x: x.clone(),
            f: ctx.finish(f),
            lhs: ctx.finish(lhs),
            rhs: ctx.finish(rhs),
            margin: ctx.finish(margin.clone()),
            rel_margin: ctx.finish(if margin < 0u32 {
                -rel_margin
            } else {
                rel_margin
            }),
        })
    })?;
    let (min_idx, _) = points
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.rel_margin.partial_cmp(&b.1.rel_margin).expect("finite"))
        .expect("nonempty grid");
    let sign_changes = points
        .windows(2)
        .filter(|p| (p[0].margin < 0u32) != (p[1].margin < 0u32))
        .count();
    let f_increasing = points.windows(2).all(|p| p[1].f > p[0].f);
    Ok(MonotonicityReport {
        n,
        min_rel_margin: points[min_idx].rel_margin.clone(),
        min_at: points[min_idx].x.clone(),
        sign_changes,
        f_increasing,
        points,
    })
}

// ---------------------------------------------------------------- problem 5

#[derive(Debug, Clone)]
pub struct DerivativePoint {
    pub x: Real,
    /// Approximations to the derivatives of orders `0..=k_max`.
    pub derivatives: Vec<Real>,
    /// One of `+`, `-`, `0` per order.
    pub pattern: String,
}

#[derive(Debug, Clone)]
pub struct PadeCmReport {
    pub n: u32,
    pub k_max: u32,
    pub step: Real,
    /// Smallest positive real pole of `[n/n]`, if any.
    pub first_pole: Option<Real>,
    pub points: Vec<DerivativePoint>,
    /// Grid points at or past the first pole, or whose stencil reaches it.
    pub excluded: Vec<Real>,
    pub all_positive: bool,
}

/// Sign pattern of the derivatives of the diagonal approximant `[n/n]` on
/// `x > 0` before its first pole. Derivatives are stencil central
/// differences with step `h = 2^(-bits/4)`; the approximant and the
/// differences are evaluated exactly in rationals, so only truncation error
/// `O(h²)` remains.
pub fn problem5_pade_cm(
    n: u32,
    k_max: u32,
    xs: &[Real],
    ctx: &PrecisionContext,
) -> Result<PadeCmReport> {
    if n < 1 {
        return Err(Error::usage("problem 5 needs n >= 1"));
    }
    positive_xs(xs, "problem 5")?;
    let appr = pade_exp(n, n);
    let h = Rational::from((1, Integer::from(1) << (ctx.bits() / 4)));
    let width = Rational::from((1, Integer::from(1) << (ctx.bits() / 2)));
    let pole = appr.first_positive_pole(&width);
    let reach = Rational::from(&h * k_max) / 2u32;
    let guard = Rational::from_f64(10.0 * ctx.target_rel_err()).expect("finite");
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for x in xs {
        let xr = x.to_rational().expect("finite");
        if let Some(pole) = &pole {
            let limit = pole * (Rational::from(1) - &guard);
            if Rational::from(&xr + &reach) >= limit {
                log::info!(
                    "problem 5: x = {} excluded (first pole near {})",
                    x.to_f64(),
                    pole.to_f64()
                );
                excluded.push(x.clone());
                continue;
            }
        }
        let mut derivatives = Vec::new();
        let mut pattern = String::new();
        for k in 0..=k_max {
            let mut acc = Rational::new();
            for j in 0..=k {
                let offset = Rational::from((i64::from(k) - 2 * i64::from(j), 2)) * &h;
                let v = appr
                    .eval_exact(&Rational::from(&xr + &offset))
                    .expect("stencil avoids poles");
                let c = Rational::from(Integer::from(Integer::binomial_u(k, j)));
                if j % 2 == 0 {
                    acc += c * v;
                } else {
                    acc -= c * v;
                }
            }
            for _ in 0..k {
                acc /= &h;
            }
            pattern.push(match acc.cmp0() {
                std::cmp::Ordering::Greater => '+',
                std::cmp::Ordering::Less => '-',
                std::cmp::Ordering::Equal => '0',
            });
            derivatives.push(Float::with_val(ctx.bits(), &acc));
        }
        points.push(DerivativePoint {
            x: x.clone(),
            derivatives,
            pattern,
        });
    }
    let all_positive = points.iter().all(|p| p.pattern.chars().all(|c| c == '+'));
    Ok(PadeCmReport {
        n,
        k_max,
        step: Float::with_val(ctx.bits(), &h),
        first_pole: pole.map(|p| Float::with_val(ctx.bits(), &p)),
        points,
        excluded,
        all_positive,
    })
}

// ------------------------------------------------------------ problems 7, 9

#[derive(Debug, Clone)]
pub struct LimitReport {
    /// `"7"` or `"9"`.
    pub problem: &'static str,
    pub heading: String,
    /// `(n, x, value)`.
    pub sequence: Vec<(u32, Real, Real)>,
    /// Richardson diagonal over `n = 10, 20, 40, ...` in `h = 1/n`.
    pub extrapolants: Vec<Real>,
    /// Last extrapolant when three successive ones agree to `LIMIT_TOL`.
    pub estimate: Option<Real>,
    /// Ratio of the last two sequence terms.
    pub last_term_ratio: Option<Real>,
}

fn limit_report<F>(
    problem: &'static str,
    heading: String,
    n_max: u32,
    x_of: F,
    value: impl Fn(u32, &Float) -> Result<Float> + Sync,
    ctx: &PrecisionContext,
) -> Result<LimitReport>
where
    F: Fn(u32) -> Float + Sync,
{
    let w = ctx.work();
    let ns: Vec<u32> = (1..=n_max / 10).map(|i| 10 * i).collect();
    let seq = par_map(&ns, |&n| {
        let x = x_of(n);
        let v = value(n, &x)?;
        Ok((n, x, v))
    })?;
    let geometric: Vec<Float> = seq
        .iter()
        .filter(|(n, _, _)| (n / 10).is_power_of_two())
        .map(|(_, _, v)| v.clone())
        .collect();
    let diagonal = richardson_diagonal(&geometric, 2.0, w.prec);
    let estimate = if last_three_agree(&diagonal, LIMIT_TOL) {
        diagonal.last().cloned()
    } else {
        None
    };
    let last_term_ratio = match seq.as_slice() {
        [.., a, b] if !a.2.is_zero() => Some(Float::with_val(w.prec, &b.2 / &a.2)),
        _ => None,
    };
    Ok(LimitReport {
        problem,
        heading,
        sequence: seq
            .into_iter()
            .map(|(n, x, v)| (n, ctx.finish(x), ctx.finish(v)))
            .collect(),
        extrapolants: diagonal.into_iter().map(|v| ctx.finish(v)).collect(),
        estimate: estimate.map(|v| ctx.finish(v)),
        last_term_ratio: last_term_ratio.map(|v| ctx.finish(v)),
    })
}

/// `(x/n) R_{n-1}(x)/R_n(x)` along `x = c n`, `n = 10, 20, ..., n_max`.
pub fn problem7_limit(n_max: u32, c: &Real, ctx: &PrecisionContext) -> Result<LimitReport> {
    if n_max < 10 {
        return Err(Error::usage("problem 7 needs n_max >= 10"));
    }
    if !c.is_finite() || *c <= 0u32 {
        return Err(Error::usage("problem 7 needs c > 0"));
    }
    let w = ctx.work();
    let cw = ctx.widen(c);
    let heading =
        "(x/n) R_{n-1}(x)/R_n(x) along x = c n; the conjectured limit e^{m+1} names an m \
                   that the question never defines, so only the sequence is reported"
            .to_string();
    limit_report(
        "7",
        heading,
        n_max,
        |n| Float::with_val(w.prec, &cw * n),
        |n, x| Ok(g_ratio_at(n, x, w)? * x / n),
        ctx,
    )
}

/// `R_{n,m}(a n) / e^{a m}` for `n = 10, 20, ..., n_max`.
pub fn problem9_limit(a: &Real, m: u32, n_max: u32, ctx: &PrecisionContext) -> Result<LimitReport> {
    if n_max < 10 {
        return Err(Error::usage("problem 9 needs n_max >= 10"));
    }
    if !a.is_finite() || *a <= 0u32 {
        return Err(Error::usage("problem 9 needs a > 0"));
    }
    let w = ctx.work();
    let aw = ctx.widen(a);
    let denom = Float::with_val(w.prec, &aw * m).exp();
    limit_report(
        "9",
        format!("R_{{n,{m}}}(a n) / e^(a {m})"),
        n_max,
        |n| Float::with_val(w.prec, &aw * n),
        |n, x| Ok(r_obreshkov_at(n, m, x, w)? / &denom),
        ctx,
    )
}

// ---------------------------------------------------------------- problem 8

#[derive(Debug, Clone)]
pub struct GautschiPoint {
    pub n: u32,
    pub x: Real,
    /// `(-1)^k Δ^k Q_n(x)`.
    pub signed_diff: Real,
    /// `Σ_j C(k,j) Q_{n+j}`, the size of the terms that cancel.
    pub scale: Real,
    pub status: Status,
    /// `k = 3` only: `R_n R_{n+2}³ - (n+2)(n+4)/(n+3)² R_{n+1}³ R_{n+3}`.
    pub remainder_margin: Option<Real>,
    /// `k = 3` only: `R_n R_{n+2}³ / (R_{n+1}³ R_{n+3})`.
    pub remainder_ratio: Option<Real>,
}

#[derive(Debug, Clone)]
pub struct GautschiReport {
    pub k: u32,
    pub points: Vec<GautschiPoint>,
    /// `k = 3` only: `(n, ratio at x = 1e-8, (n+2)(n+4)/(n+3)²)`.
    pub small_x: Vec<(u32, Real, Real)>,
    pub violations: usize,
}

fn third_order_ratio(n: u32, x: &Float, w: Work) -> Result<(Float, Float)> {
    let p = w.prec;
    let r: Vec<Float> = (n..=n + 3)
        .map(|j| r_tail_at(j, x, w))
        .collect::<Result<_>>()?;
    let lhs = Float::with_val(p, &r[0] * Float::with_val(p, (&r[2]).pow(3u32)));
    let base = Float::with_val(p, (&r[1]).pow(3u32)) * &r[3];
    let c = third_order_constant(n, p);
    let margin = Float::with_val(p, &lhs - Float::with_val(p, &base * &c));
    Ok((margin, lhs / base))
}

fn third_order_constant(n: u32, p: u32) -> Float {
    Float::with_val(p, &Rational::from(((n + 2) * (n + 4), (n + 3) * (n + 3))))
}

/// Signs of `(-1)^k Δ^k Q_n` over `n` and `x`, plus the remainder form of
/// the `k = 3` case.
pub fn problem8_gautschi_k(
    ns: &[u32],
    k: u32,
    xs: &[Real],
    ctx: &PrecisionContext,
) -> Result<GautschiReport> {
    if ns.is_empty() {
        return Err(Error::usage("problem 8: empty n range"));
    }
    positive_xs(xs, "problem 8")?;
    let w = ctx.work();
    let grid: Vec<(u32, Real)> = ns
        .iter()
        .flat_map(|&n| xs.iter().map(move |x| (n, x.clone())))
        .collect();
    let points = par_map(&grid, |(n, x)| {
        let xw = ctx.widen(x);
        let qs: Vec<Float> = (*n..=n + k)
            .map(|j| q_value_at(j, &xw, w))
            .collect::<Result<_>>()?;
        let mut scale = Float::new(w.prec);
        for (j, q) in qs.iter().enumerate() {
            scale += Float::with_val(w.prec, q * Integer::from(Integer::binomial_u(k, j as u32)));
        }
        let diff = finite_diff(&DiffTable::new(qs), k)?.values[0].clone();
        let signed = if k % 2 == 1 { -diff } else { diff };
        let bound = Float::with_val(w.prec, &scale * (100.0 * ctx.target_rel_err()));
        let status = if signed > bound {
            Status::Pass
        } else if signed < -bound.clone() {
            Status::Fail
        } else {
            Status::Indeterminate
        };
        let (remainder_margin, remainder_ratio) = if k == 3 {
            let (m, r) = third_order_ratio(*n, &xw, w)?;
            (Some(ctx.finish(m)), Some(ctx.finish(r)))
        } else {
            (None, None)
        };
        Ok(GautschiPoint {
            n: *n,
            x: x.clone(),
            signed_diff: ctx.finish(signed),
            scale: ctx.finish(scale),
            status,
            remainder_margin,
            remainder_ratio,
        })
    })?;
    let mut small_x = Vec::new();
    if k == 3 {
        let tiny = Float::with_val(w.prec, Float::parse("1e-8").expect("literal"));
        for &n in ns {
            let (_, r) = third_order_ratio(n, &tiny, w)?;
            small_x.push((
                n,
                ctx.finish(r),
                ctx.finish(third_order_constant(n, w.prec)),
            ));
        }
    }
    let violations = points
        .iter()
        .filter(|p| {
            p.status == Status::Fail || p.remainder_margin.as_ref().is_some_and(|m| *m < 0u32)
        })
        .count();
    Ok(GautschiReport {
        k,
        points,
        small_x,
        violations,
    })
}

// --------------------------------------------------------------- problem 11

#[derive(Debug, Clone)]
pub struct DiffRow {
    pub x: Real,
    pub k: u32,
    pub n: u32,
    /// Forward difference `Δ^k g_n = Σ_j (-1)^{k-j} C(k,j) g_{n+j}`.
    pub forward: Real,
    /// Backward difference `∇^k g_n = Δ^k g_{n-k}`, when `n - k ≥ 1`.
    pub backward: Option<Real>,
}

#[derive(Debug, Clone)]
pub struct GDiffReport {
    pub k_max: u32,
    pub rows: Vec<DiffRow>,
    /// Rows with a negative forward difference.
    pub negative_forward: usize,
    /// Rows with a negative backward difference.
    pub negative_backward: usize,
    /// Largest `|Δg_n R_n R_{n+1} - (R_n² - R_{n-1} R_{n+1})|`, relative to
    /// the larger product.
    pub k1_deviation: Real,
    /// Largest deviation of `Δ²g_{n-1} R_{n-1} R_n R_{n+1}` from the problem-1
    /// margin at `n`, relative to the larger side.
    pub k2_deviation: Real,
    /// Whether both deviations are within `100 · target_rel_err`.
    pub crosschecks_agree: bool,
}

/// Differences in `n` of `g_n(x) = R_{n-1}(x)/R_n(x)` at fixed `x`.
///
/// `Δg_n > 0` is `R_n² > R_{n-1} R_{n+1}`, and `Δ²g_{n-1} > 0` is the
/// problem-1 inequality at `n`; both are cross-checked against the direct
/// margins.
pub fn problem11_gdiffs(
    k_max: u32,
    n_lo: u32,
    n_hi: u32,
    xs: &[Real],
    ctx: &PrecisionContext,
) -> Result<GDiffReport> {
    if k_max < 1 {
        return Err(Error::usage("problem 11 needs k_max >= 1"));
    }
    if n_lo < 1 || n_hi < n_lo {
        return Err(Error::usage("problem 11 needs 1 <= n_lo <= n_hi"));
    }
    positive_xs(xs, "problem 11")?;
    let w = ctx.work();
    let first = n_lo.saturating_sub(k_max).max(1);
    let last = n_hi + k_max;
    let per_x = par_map(xs, |x| {
        let xw = ctx.widen(x);
        let g: Vec<Float> = (first..=last)
            .map(|n| g_ratio_at(n, &xw, w))
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for k in 1..=k_max {
            let diffs = finite_diff(&DiffTable::new(g.clone()), k)?.values;
            let at = |n: u32| diffs.get((n - first) as usize).cloned();
            for n in n_lo..=n_hi {
                let forward = at(n).expect("range covers n + k");
                let backward = if n >= k + first { at(n - k) } else { None };
                rows.push(DiffRow {
                    x: x.clone(),
                    k,
                    n,
                    forward: ctx.finish(forward),
                    backward: backward.map(|v| ctx.finish(v)),
                });
            }
        }
        // cross-checks against direct margins
        let mut dev1 = Float::new(w.prec);
        let mut dev2 = Float::new(w.prec);
        let d1 = finite_diff(&DiffTable::new(g.clone()), 1)?.values;
        let d2 = finite_diff(&DiffTable::new(g.clone()), 2)?.values;
        for n in n_lo..=n_hi {
            let mut params = Params {
                n: Some(n),
                ..Params::default()
            };
            params.x = Some(x.clone());
            let direct = evaluate_check(&CheckId::new(CheckKind::Reverse43, params), ctx)?;
            let rn = r_tail_at(n, &xw, w)?;
            let rn1 = r_tail_at(n + 1, &xw, w)?;
            let via = Float::with_val(w.prec, &d1[(n - first) as usize] * &rn) * &rn1;
            let scale = max_abs(&ctx.widen(&direct.lhs), &ctx.widen(&direct.rhs));
            let d = rel(
                &Float::with_val(w.prec, &via - &ctx.widen(&direct.margin)),
                &scale,
            );
            dev1 = dev1.max(&d);
            if n >= 2 && n > first {
                let (lhs, rhs, _) = reduced_cubic(n, &xw, w)?;
                let rm = r_tail_at(n - 1, &xw, w)?;
                let via = Float::with_val(w.prec, &d2[(n - 1 - first) as usize] * &rm) * &rn * &rn1;
                let margin = Float::with_val(w.prec, &lhs - &rhs);
                let d = rel(
                    &Float::with_val(w.prec, &via - &margin),
                    &max_abs(&lhs, &rhs),
                );
                dev2 = dev2.max(&d);
            }
        }
        Ok((rows, dev1, dev2))
    })?;
    let mut rows = Vec::new();
    let mut k1 = Float::new(w.prec);
    let mut k2 = Float::new(w.prec);
    for (r, d1, d2) in per_x {
        rows.extend(r);
        k1 = k1.max(&d1);
        k2 = k2.max(&d2);
    }
    let negative_forward = rows.iter().filter(|r| r.forward < 0u32).count();
    let negative_backward = rows
        .iter()
        .filter(|r| r.backward.as_ref().is_some_and(|b| *b < 0u32))
        .count();
    let limit = 100.0 * ctx.target_rel_err();
    let crosschecks_agree = k1 <= limit && k2 <= limit;
    Ok(GDiffReport {
        k_max,
        rows,
        negative_forward,
        negative_backward,
        k1_deviation: ctx.finish(k1),
        k2_deviation: ctx.finish(k2),
        crosschecks_agree,
    })
}

// --------------------------------------------------------------- problem 12

#[derive(Debug, Clone)]
pub struct RowPoint {
    pub n: u32,
    pub x: Real,
    /// `[n/1](x)`.
    pub lower_row: Real,
    /// `[n+1/1](x)`.
    pub upper_row: Real,
    /// `[n/1](x) - [n+1/1](x)`, exact before rounding.
    pub margin: Real,
}

#[derive(Debug, Clone)]
pub struct RowMonotoneReport {
    pub points: Vec<RowPoint>,
    /// `(n, x, reason)` for grid points outside `0 < x < n+1` or inside a
    /// pole guard.
    pub excluded: Vec<(u32, Real, String)>,
    pub violations: usize,
}

/// Is `[n+1/1](x) < [n/1](x)` on `0 < x < n+1`?
pub fn problem12_row_monotone(
    ns: &[u32],
    xs: &[Real],
    ctx: &PrecisionContext,
) -> Result<RowMonotoneReport> {
    if ns.is_empty() {
        return Err(Error::usage("problem 12: empty n range"));
    }
    positive_xs(xs, "problem 12")?;
    let w = ctx.work();
    let mut points = Vec::new();
    let mut excluded = Vec::new();
    for &n in ns {
        let (lo, hi) = (pade_exp(n, 1), pade_exp(n + 1, 1));
        for x in xs {
            if *x > n {
                excluded.push((n, x.clone(), format!("outside 0 < x < {}", n + 1)));
                continue;
            }
            let xw = ctx.widen(x);
            let evals = eval_approximant_at(&lo, &xw, w)
                .and_then(|a| Ok((a, eval_approximant_at(&hi, &xw, w)?)));
            let (a, b) = match evals {
                Ok(v) => v,
                Err(e @ Error::Pole { .. }) => {
                    log::info!("problem 12: n = {n}, x = {}: {e}", x.to_f64());
                    excluded.push((n, x.clone(), e.to_string()));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let xr = x.to_rational().expect("finite");
            let exact = lo.eval_exact(&xr).expect("guarded") - hi.eval_exact(&xr).expect("guarded");
            points.push(RowPoint {
                n,
                x: x.clone(),
                lower_row: ctx.finish(a),
                upper_row: ctx.finish(b),
                margin: Float::with_val(ctx.bits(), &exact),
            });
        }
    }
    let violations = points.iter().filter(|p| p.margin <= 0u32).count();
    Ok(RowMonotoneReport {
        points,
        excluded,
        violations,
    })
}

// --------------------------------------------------------------- problem 15

#[derive(Debug, Clone)]
pub struct RangeReport {
    pub n: u32,
    /// `(2n+1)/(n+1)`.
    pub lower: Real,
    /// `(2n+3)/(n+1)`.
    pub upper: Real,
    /// `(x, f(x))`.
    pub samples: Vec<(Real, Real)>,
    pub observed_min: Real,
    pub observed_max: Real,
    /// Sample points with `f` outside `[lower, upper]`.
    pub violations: Vec<Real>,
    pub contained: bool,
    /// `f(1e-8)`.
    pub small_x_value: Real,
}

fn prob15_f(n: u32, x: &Float, w: Work) -> Result<Float> {
    let p = w.prec;
    let r: Vec<Float> = (n - 2..=n + 1)
        .map(|j| r_tail_at(j, x, w))
        .collect::<Result<_>>()?;
    let a = Float::with_val(p, &r[0] * &r[2]) / Float::with_val(p, r[1].square_ref());
    let b = Float::with_val(p, r[2].square_ref()) / Float::with_val(p, &r[1] * &r[3]);
    Ok(a + b)
}

/// Observed range of `R_{n-2}R_n/R_{n-1}² + R_n²/(R_{n-1}R_{n+1})`.
pub fn problem15_range(n: u32, xs: &[Real], ctx: &PrecisionContext) -> Result<RangeReport> {
    if n < 2 {
        return Err(Error::usage("problem 15 needs n >= 2"));
    }
    positive_xs(xs, "problem 15")?;
    let w = ctx.work();
    let samples = par_map(xs, |x| {
        Ok((x.clone(), ctx.finish(prob15_f(n, &ctx.widen(x), w)?)))
    })?;
    let lower = Float::with_val(ctx.bits(), &Rational::from((2 * n + 1, n + 1)));
    let upper = Float::with_val(ctx.bits(), &Rational::from((2 * n + 3, n + 1)));
    let observed_min = samples
        .iter()
        .map(|s| s.1.clone())
        .reduce(|a, b| a.min(&b))
        .expect("nonempty");
    let observed_max = samples
        .iter()
        .map(|s| s.1.clone())
        .reduce(|a, b| a.max(&b))
        .expect("nonempty");
    let violations: Vec<Real> = samples
        .iter()
        .filter(|(_, f)| *f < lower || *f > upper)
        .map(|(x, _)| x.clone())
        .collect();
    let tiny = Float::with_val(w.prec, Float::parse("1e-8").expect("literal"));
    Ok(RangeReport {
        n,
        contained: violations.is_empty(),
        small_x_value: ctx.finish(prob15_f(n, &tiny, w)?),
        lower,
        upper,
        samples,
        observed_min,
        observed_max,
        violations,
    })
}

// ----------------------------------------------------------------------- rk

#[derive(Debug, Clone)]
pub struct RkReport {
    pub lambda: Real,
    pub h: Real,
    pub y0: Real,
    /// `λh`.
    pub z: Real,
    /// One classical four-stage step.
    pub y1: Real,
    /// `y0 e^{λh}`.
    pub exact: Real,
    /// `y0 e^{λh} - y1`.
    pub step_error: Real,
    /// `y0 R_4(λh)`.
    pub identity: Real,
    /// `|step_error - identity| / |identity|` (0 when both vanish).
    pub rel_deviation: Real,
    /// `step_error / (y0 z⁵)`, tends to `1/120` as `h → 0`; absent at `z = 0`.
    pub scaled_error: Option<Real>,
}

/// One RK4 step on `y' = λy`. The step is taken at twice the context
/// precision so that the subtraction `y0 e^{λh} - y1` keeps its digits; the
/// identity side uses the positive series (or `|R_4(-x)|` with its sign).
pub fn rk_error_demo(
    lambda: &Real,
    h: &Real,
    y0: &Real,
    ctx: &PrecisionContext,
) -> Result<RkReport> {
    if !h.is_finite() || *h <= 0u32 {
        return Err(Error::usage("rk: h must be positive"));
    }
    if !lambda.is_finite() || !y0.is_finite() {
        return Err(Error::usage("rk: lambda and y0 must be finite"));
    }
    let w = ctx.work().widened(ctx.bits());
    let p = w.prec;
    let (l, hh, y) = (
        Float::with_val(p, lambda),
        Float::with_val(p, h),
        Float::with_val(p, y0),
    );
    let half = Float::with_val(p, &hh / 2u32);
    let k1 = Float::with_val(p, &l * &y);
    let k2 = Float::with_val(p, &y + Float::with_val(p, &half * &k1)) * &l;
    let k3 = Float::with_val(p, &y + Float::with_val(p, &half * &k2)) * &l;
    let k4 = Float::with_val(p, &y + Float::with_val(p, &hh * &k3)) * &l;
    let sum = Float::with_val(p, &k1 + &k4) + Float::with_val(p, &k2 + &k3) * 2u32;
    let y1 = Float::with_val(p, &y + Float::with_val(p, &hh * &sum) / 6u32);
    let z = Float::with_val(p, &l * &hh);
    let exact = Float::with_val(p, z.exp_ref()) * &y;
    let step_error = Float::with_val(p, &exact - &y1);
    let r4 = if z >= 0u32 {
        r_tail_at(4, &z, w)?
    } else {
        let v = r_neg_at(4, &Float::with_val(p, -&z), w)?;
        if r_neg_sign(4) < 0 {
            -v
        } else {
            v
        }
    };
    let identity = Float::with_val(p, &r4 * &y);
    let diff = Float::with_val(p, &step_error - &identity);
    let rel_deviation = if identity.is_zero() {
        diff.abs()
    } else {
        rel(&diff, &identity)
    };
    let scaled_error = if z.is_zero() || y.is_zero() {
        None
    } else {
        let z5 = Float::with_val(p, (&z).pow(5u32)) * &y;
        Some(ctx.finish(step_error.clone() / z5))
    };
    Ok(RkReport {
        lambda: lambda.clone(),
        h: h.clone(),
        y0: y0.clone(),
        z: ctx.finish(z),
        y1: ctx.finish(y1),
        exact: ctx.finish(exact),
        step_error: ctx.finish(step_error),
        identity: ctx.finish(identity),
        rel_deviation: ctx.finish(rel_deviation),
        scaled_error,
    })
}

#[cfg(test)]
mod tests;
