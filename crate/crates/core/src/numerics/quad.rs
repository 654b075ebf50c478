//! Adaptive Gauss–Legendre quadrature at arbitrary precision.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::context::format_real;
use super::{PrecisionContext, Real, Work};
use crate::error::{Error, Result};

/// Points of the per-panel Gauss–Legendre rule.
const GL_POINTS: usize = 32;
const INITIAL_PANELS: usize = 4;
/// Maximum number of panels before giving up.
const PANEL_BUDGET: usize = 5000;

/// Integral value with an a-posteriori absolute error estimate.
#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: Real,
    pub abs_err: Real,
}

/// `∫_lo^hi g(t) (hi - t)^e dt` for smooth `g` and `e > -1`.
///
/// `integrand` is the smooth factor `g`; it is called at the working
/// precision and must return values at that precision. The endpoint factor is
/// absorbed by a change of variables: `u = (hi - t)^(1+e)` for `-1 < e < 0`
/// and `hi - t = s²` for noninteger `e > 0`. Integer `e` is handled directly.
pub fn quad_integral<F>(
    integrand: F,
    lo: &Real,
    hi: &Real,
    endpoint_exponent: &Real,
    ctx: &PrecisionContext,
) -> Result<QuadResult>
where
    F: Fn(&Real) -> Real + Sync,
{
    let w = ctx.work();
    let (value, err) = quad_at(
        &integrand,
        &ctx.widen(lo),
        &ctx.widen(hi),
        &ctx.widen(endpoint_exponent),
        w,
    )?;
    Ok(QuadResult {
        value: ctx.finish(value),
        abs_err: ctx.finish(err),
    })
}

pub(crate) fn quad_at(
    g: &dyn Fn(&Float) -> Float,
    lo: &Float,
    hi: &Float,
    e: &Float,
    w: Work,
) -> Result<(Float, Float)> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::domain(
            "quad_integral",
            format!(
                "need finite lo < hi, got [{}, {}]",
                lo.to_f64(),
                hi.to_f64()
            ),
        ));
    }
    if !e.is_finite() || *e <= -1i32 {
        return Err(Error::domain(
            "quad_integral",
            format!("endpoint exponent must exceed -1, got {}", e.to_f64()),
        ));
    }
    let p = w.prec;
    let len = Float::with_val(p, hi - lo);

    if e.is_integer() {
        let weight_exp = e.to_i32_saturating().unwrap_or(0);
        let f = |t: &Float| -> Float {
            let mut v = g(t);
            if weight_exp != 0 {
                v *= Float::with_val(p, hi - t).pow(weight_exp);
            }
            v
        };
        adaptive(
            &f,
            &Float::with_val(p, lo),
            &Float::with_val(p, hi),
            w,
            PANEL_BUDGET,
        )
    } else if *e < 0u32 {
        // u = (hi - t)^(1+e):  ∫ = 1/(1+e) ∫_0^{len^(1+e)} g(hi - u^(1/(1+e))) du
        let one_e = Float::with_val(p, e + 1u32);
        let inv = Float::with_val(p, one_e.recip_ref());
        let upper = Float::with_val(p, len.pow(&one_e));
        let f = |u: &Float| -> Float {
            let t = Float::with_val(p, hi - Float::with_val(p, u.pow(&inv)));
            g(&t)
        };
        let (v, err) = adaptive(&f, &Float::new(p), &upper, w, PANEL_BUDGET)?;
        Ok((v * &inv, err * &inv))
    } else {
        // hi - t = s²:  ∫ = 2 ∫_0^{√len} g(hi - s²) s^(2e+1) ds
        let power = Float::with_val(p, e * 2u32) + 1u32;
        let upper = Float::with_val(p, len.sqrt_ref());
        let f = |s: &Float| -> Float {
            let t = Float::with_val(p, hi - Float::with_val(p, s.square_ref()));
            g(&t) * Float::with_val(p, s.pow(&power))
        };
        let (v, err) = adaptive(&f, &Float::new(p), &upper, w, PANEL_BUDGET)?;
        Ok((v * 2u32, err * 2u32))
    }
}

struct Panel {
    lo: Float,
    hi: Float,
    /// Sum of the rule over the two halves.
    value: Float,
    left: Float,
    right: Float,
    /// |rule(panel) - value|, a conservative estimate for `value`'s error.
    err: Float,
}

fn adaptive(
    f: &dyn Fn(&Float) -> Float,
    lo: &Float,
    hi: &Float,
    w: Work,
    budget: usize,
) -> Result<(Float, Float)> {
    let p = w.prec;
    let rule = nodes(p);
    let eval = |a: &Float, b: &Float| -> Result<Float> {
        let v = apply_rule(&rule, f, a, b, p);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(
                "quad_integral",
                format!(
                    "integrand is not finite on [{}, {}]",
                    a.to_f64(),
                    b.to_f64()
                ),
            ))
        }
    };
    let make = |a: Float, b: Float, whole: Float| -> Result<Panel> {
        let mid = Float::with_val(p, &a + &b) / 2u32;
        let left = eval(&a, &mid)?;
        let right = eval(&mid, &b)?;
        let value = Float::with_val(p, &left + &right);
        let err = Float::with_val(p, &whole - &value).abs();
        Ok(Panel {
            lo: a,
            hi: b,
            value,
            left,
            right,
            err,
        })
    };

    let width = Float::with_val(p, hi - lo) / INITIAL_PANELS as u32;
    let mut panels = Vec::with_capacity(64);
    for i in 0..INITIAL_PANELS {
        let a = Float::with_val(p, lo + Float::with_val(p, &width * i as u32));
        let b = if i + 1 == INITIAL_PANELS {
            hi.clone()
        } else {
            Float::with_val(p, lo + Float::with_val(p, &width * (i + 1) as u32))
        };
        let whole = eval(&a, &b)?;
        panels.push(make(a, b, whole)?);
    }

    loop {
        let total = panels.iter().fold(Float::new(p), |acc, q| acc + &q.value);
        let err = panels.iter().fold(Float::new(p), |acc, q| acc + &q.err);
        // Rounding floor: a few ulps per panel.
        let floor = Float::with_val(p, total.abs_ref())
            * Float::with_val(p, Float::i_exp(1, -(p as i32) + 8))
            * panels.len() as u32;
        if err <= Float::with_val(p, total.abs_ref()) * w.tol || err <= floor {
            return Ok((total, err));
        }
        if panels.len() >= budget {
            return Err(Error::NoConvergence {
                op: "quad_integral",
                estimate: format_real(&total, 20),
                detail: format!(
                    "{} panels, estimated error {}",
                    panels.len(),
                    format_real(&err, 6)
                ),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.err.partial_cmp(&b.1.err).expect("finite errors"))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let q = panels.swap_remove(worst);
        let mid = Float::with_val(p, &q.lo + &q.hi) / 2u32;
        panels.push(make(q.lo, mid.clone(), q.left)?);
        panels.push(make(mid, q.hi, q.right)?);
    }
}

/// Nodes in (0, 1) and weights of the positive half of the symmetric rule on
/// [-1, 1].
struct Rule {
    nodes: Vec<Float>,
    weights: Vec<Float>,
}

fn apply_rule(rule: &Rule, f: &dyn Fn(&Float) -> Float, a: &Float, b: &Float, p: u32) -> Float {
    let half = Float::with_val(p, b - a) / 2u32;
    let center = Float::with_val(p, a + b) / 2u32;
    let mut sum = Float::new(p);
    for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
        let dx = Float::with_val(p, &half * x);
        let pair = f(&Float::with_val(p, &center + &dx)) + f(&Float::with_val(p, &center - &dx));
        sum += pair * wt;
    }
    sum * half
}

fn nodes(prec: u32) -> Arc<Rule> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Rule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("node cache poisoned").get(&prec) {
        return Arc::clone(r);
    }
    let rule = Arc::new(legendre_rule(prec));
    cache
        .lock()
        .expect("node cache poisoned")
        .entry(prec)
        .or_insert(rule)
        .clone()
}

/// Newton iteration on `P_n` from the usual cosine initial guesses.
fn legendre_rule(prec: u32) -> Rule {
    let p = prec + 16;
    let n = GL_POINTS;
    let pi = Float::with_val(p, Constant::Pi);
    let mut nodes = Vec::with_capacity(n / 2);
    let mut weights = Vec::with_capacity(n / 2);
    for i in 0..n / 2 {
        let guess = Float::with_val(p, &pi * (i as f64 + 0.75)) / (n as f64 + 0.5);
        let mut x = guess.cos();
        let mut dp;
        loop {
            let (pn, d) = legendre_eval(n, &x, p);
            dp = d;
            let step = Float::with_val(p, &pn / &dp);
            x -= &step;
            if step.is_zero() || step.get_exp().unwrap_or(i32::MIN) < -(p as i32) + 4 {
                let (_, d) = legendre_eval(n, &x, p);
                dp = d;
                break;
            }
        }
        // w = 2 / ((1 - x²) P_n'(x)²)
        let one_minus = Float::with_val(p, 1u32 - Float::with_val(p, x.square_ref()));
        let wt = Float::with_val(p, 2u32) / (one_minus * dp.square());
        nodes.push(Float::with_val(prec, x));
        weights.push(Float::with_val(prec, wt));
    }
    Rule { nodes, weights }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_eval(n: usize, x: &Float, p: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(p, 1u32);
    let mut p1 = x.clone();
    for k in 2..=n {
        let a = Float::with_val(p, x * &p1) * (2 * k - 1) as u32;
        let b = Float::with_val(p, &p0 * (k - 1) as u32);
        let p2 = (a - b) / k as u32;
        p0 = p1;
        p1 = p2;
    }
    // P_n' = n (x P_n - P_{n-1}) / (x² - 1)
    let num = (Float::with_val(p, x * &p1) - &p0) * n as u32;
    let den = Float::with_val(p, x.square_ref()) - 1u32;
    (p1, num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &Float, b: &Float) -> f64 {
        (Float::with_val(a.prec(), a - b) / b).abs().to_f64()
    }

    #[test]
    fn weights_sum_to_two() {
        let r = legendre_rule(256);
        let s = r.weights.iter().fold(Float::new(256), |acc, w| acc + w) * 2u32;
        assert!((s - 2u32).abs() < 1e-70);
    }

    #[test]
    fn exp_on_unit_interval() {
        let ctx = PrecisionContext::new(256).unwrap();
        let q = quad_integral(
            |t| t.clone().exp(),
            &ctx.real(0.0),
            &ctx.real(1.0),
            &ctx.real(0.0),
            &ctx,
        )
        .unwrap();
        let expect = ctx.real(1.0).exp() - 1u32;
        assert!(rel(&q.value, &expect) < 1e-70);
        assert!(q.abs_err < 1e-60);
    }

    #[test]
    fn inverse_square_root_endpoint() {
        let ctx = PrecisionContext::new(256).unwrap();
        let q = quad_integral(
            |t| Float::with_val(t.prec(), 1u32),
            &ctx.real(0.0),
            &ctx.real(1.0),
            &ctx.real(-0.5),
            &ctx,
        )
        .unwrap();
        assert!(rel(&q.value, &ctx.real(2.0)) < 1e-70);
    }

    #[test]
    fn awkward_negative_exponent() {
        // ∫_0^1 (1-t)^(-0.3) dt = 1/0.7
        let ctx = PrecisionContext::new(128).unwrap();
        let q = quad_integral(
            |t| Float::with_val(t.prec(), 1u32),
            &ctx.real(0.0),
            &ctx.real(1.0),
            &ctx.parse("-0.3").unwrap(),
            &ctx,
        )
        .unwrap();
        let expect = Float::with_val(128, 10u32) / 7u32;
        assert!(rel(&q.value, &expect) < 1e-30);
    }

    #[test]
    fn positive_fractional_exponent() {
        // ∫_0^1 (1-t)^2.5 dt = 1/3.5
        let ctx = PrecisionContext::new(256).unwrap();
        let q = quad_integral(
            |t| Float::with_val(t.prec(), 1u32),
            &ctx.real(0.0),
            &ctx.real(1.0),
            &ctx.real(2.5),
            &ctx,
        )
        .unwrap();
        let expect = Float::with_val(256, 2u32) / 7u32;
        assert!(rel(&q.value, &expect) < 1e-70);
    }

    #[test]
    fn lower_incomplete_gamma_oracle() {
        // γ(3, 1) = 2 - 5/e
        let ctx = PrecisionContext::new(256).unwrap();
        let q = quad_integral(
            |t| {
                Float::with_val(t.prec(), t.square_ref())
                    * Float::with_val(t.prec(), -t.clone()).exp()
            },
            &ctx.real(0.0),
            &ctx.real(1.0),
            &ctx.real(0.0),
            &ctx,
        )
        .unwrap();
        assert!(ctx.format(&q.value).starts_with("0.160602794142788"));
        let g = super::super::lower_incomplete_gamma(&ctx.real(3.0), &ctx.real(1.0), &ctx).unwrap();
        assert!(rel(&q.value, &g) < 1e-70);
    }

    #[test]
    fn rejects_bad_interval_and_exponent() {
        let ctx = PrecisionContext::new(64).unwrap();
        let one = |t: &Float| Float::with_val(t.prec(), 1u32);
        assert!(quad_integral(one, &ctx.real(1.0), &ctx.real(0.0), &ctx.real(0.0), &ctx).is_err());
        assert!(quad_integral(one, &ctx.real(0.0), &ctx.real(1.0), &ctx.real(-1.0), &ctx).is_err());
    }

    #[test]
    fn budget_exhaustion_carries_estimate() {
        let w = Work {
            prec: 96,
            tol: 1e-25,
        };
        let third = Float::with_val(96, 1u32) / 3u32;
        let f = move |t: &Float| Float::with_val(96, t - &third).abs();
        let err = adaptive(&f, &w.real(0.0), &w.real(1.0), w, 8).unwrap_err();
        assert!(matches!(
            err,
            Error::NoConvergence {
                op: "quad_integral",
                ..
            }
        ));
        assert!(err.to_string().contains("best estimate 0.27"));
    }
}
