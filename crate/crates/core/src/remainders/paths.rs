//! Independent evaluation paths for every remainder variant.

use rug::ops::Pow;
use rug::Float;

use super::{
    factorial, power_over_factorial, r_frac_at, r_neg_at, r_obreshkov_at, r_tail_at, RemainderSpec,
};
use crate::error::{Error, Result};
use crate::numerics::{gamma_at, lower_incomplete_gamma_at, quad_at, PrecisionContext, Real, Work};

/// One path's value, at the context precision.
#[derive(Debug, Clone)]
pub struct PathValue {
    pub path: &'static str,
    pub value: Real,
}

/// Every applicable evaluation of `spec` at `x`.
///
/// | spec | paths |
/// |---|---|
/// | `IntegerTail` | tail series, Kummer form, `e^x` minus partial sum (boosted precision), integral form, Laplace form `x^{n+1}/(n+1)! (1 + x e^x ∫_0^1 t^{n+1} e^{-xt} dt)` |
/// | `Fractional` | Kummer form, Riemann–Liouville integral, `e^x γ(a+1, x) / Γ(a+1)` |
/// | `NegativeArgument` | positive series, integral form, alternating partial sum (boosted precision) |
/// | `Obreshkov` | Beta-integral series, integral form, closed form with `e^x` (boosted precision) |
pub fn evaluate_paths(
    spec: &RemainderSpec,
    x: &Real,
    ctx: &PrecisionContext,
) -> Result<Vec<PathValue>> {
    spec.validate()?;
    let w = ctx.work();
    let xw = ctx.widen(x);
    let raw = paths_at(spec, &xw, w)?;
    Ok(raw
        .into_iter()
        .map(|(path, v)| PathValue {
            path,
            value: ctx.finish(v),
        })
        .collect())
}

/// Maximum relative deviation `|u - v| / max(|u|, |v|)` over all pairs of
/// paths. Healthy evaluations stay below `100 · target_rel_err`.
pub fn cross_check(spec: &RemainderSpec, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    spec.validate()?;
    let w = ctx.work();
    let raw = paths_at(spec, &ctx.widen(x), w)?;
    Ok(ctx.finish(max_pairwise(&raw, w.prec)))
}

fn max_pairwise(values: &[(&'static str, Float)], p: u32) -> Float {
    let mut worst = Float::new(p);
    for (i, (_, u)) in values.iter().enumerate() {
        for (_, v) in &values[i + 1..] {
            let scale = Float::with_val(p, u.abs_ref()).max(&Float::with_val(p, v.abs_ref()));
            if scale.is_zero() {
                continue;
            }
            let d = Float::with_val(p, u - v).abs() / scale;
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

fn tag(path: &'static str) -> impl Fn(Error) -> Error {
    move |e| Error::Path {
        path,
        source: Box::new(e),
    }
}

pub(crate) fn paths_at(
    spec: &RemainderSpec,
    x: &Float,
    w: Work,
) -> Result<Vec<(&'static str, Float)>> {
    let p = w.prec;
    if x.is_zero() {
        let zero = Float::new(p);
        return Ok(vec![("zero", zero.clone()), ("zero", zero)]);
    }
    let mut out = Vec::with_capacity(5);
    match spec {
        RemainderSpec::IntegerTail { n } => {
            let n = *n;
            out.push((
                "tail_series",
                r_tail_at(n, x, w).map_err(tag("tail_series"))?,
            ));
            out.push((
                "kummer",
                r_frac_at(&Float::with_val(p, n), x, w).map_err(tag("kummer"))?,
            ));
            out.push((
                "subtraction",
                subtraction(n, x, w).map_err(tag("subtraction"))?,
            ));
            out.push((
                "integral",
                integral_form(n, 0, x, false, w).map_err(tag("integral"))?,
            ));
            out.push(("laplace", laplace_form(n, x, w).map_err(tag("laplace"))?));
        }
        RemainderSpec::Fractional { a } => {
            let a = Float::with_val(p, a);
            out.push(("kummer", r_frac_at(&a, x, w).map_err(tag("kummer"))?));
            out.push((
                "integral",
                frac_integral(&a, x, w).map_err(tag("integral"))?,
            ));
            out.push((
                "incgamma",
                frac_incgamma(&a, x, w).map_err(tag("incgamma"))?,
            ));
        }
        RemainderSpec::NegativeArgument { n } => {
            let n = *n;
            out.push((
                "positive_series",
                r_neg_at(n, x, w).map_err(tag("positive_series"))?,
            ));
            out.push((
                "integral",
                integral_form(n, 0, x, true, w).map_err(tag("integral"))?,
            ));
            out.push((
                "alternating",
                alternating(n, x, w).map_err(tag("alternating"))?,
            ));
        }
        RemainderSpec::Obreshkov { n, m } => {
            let (n, m) = (*n, *m);
            out.push(("series", r_obreshkov_at(n, m, x, w).map_err(tag("series"))?));
            let mut q = integral_form(n, m, x, false, w).map_err(tag("integral"))?;
            if m % 2 == 1 {
                q = -q;
            }
            out.push(("integral", q));
            out.push((
                "closed_form",
                obreshkov_closed(n, m, x, w).map_err(tag("closed_form"))?,
            ));
        }
    }
    Ok(out)
}

/// Extra bits needed to absorb cancellation of size `2^loss`.
fn boosted(w: Work, loss_bits: f64) -> Work {
    let extra = if loss_bits.is_finite() && loss_bits > 0.0 {
        loss_bits.ceil() as u32
    } else {
        0
    };
    w.widened(extra + 32)
}

fn log2_factorial(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).log2()).sum()
}

/// `e^x - Σ_{k≤n} x^k/k!` at enough extra precision for the subtraction.
fn subtraction(n: u32, x: &Float, w: Work) -> Result<Float> {
    let xf = x.to_f64();
    // result ≥ x^{n+1}/(n+1)!, minuend ≤ e^x
    let loss = xf * std::f64::consts::LOG2_E + log2_factorial(n + 1) - f64::from(n + 1) * xf.log2();
    let wb = boosted(w, loss);
    let q = wb.prec;
    let xb = Float::with_val(q, x);
    let mut partial = Float::with_val(q, 1u32);
    let mut term = Float::with_val(q, 1u32);
    for k in 1..=n {
        term *= &xb;
        term /= k;
        partial += &term;
    }
    Ok(Float::with_val(w.prec, xb.exp() - partial))
}

/// `|e^{-x} - Σ_{k≤n} (-x)^k/k!|` at boosted precision.
fn alternating(n: u32, x: &Float, w: Work) -> Result<Float> {
    let xf = x.to_f64();
    // result ≥ e^{-x} x^{n+1}/(n+1)!, terms ≤ e^x
    let loss =
        2.0 * xf * std::f64::consts::LOG2_E + log2_factorial(n + 1) - f64::from(n + 1) * xf.log2();
    let wb = boosted(w, loss);
    let q = wb.prec;
    let mx = Float::with_val(q, -x);
    let mut partial = Float::with_val(q, 1u32);
    let mut term = Float::with_val(q, 1u32);
    for k in 1..=n {
        term *= &mx;
        term /= k;
        partial += &term;
    }
    Ok(Float::with_val(w.prec, mx.exp() - partial).abs())
}

/// `1/(n+m)! ∫_0^x (x-t)^n t^m e^{±t} dt` by quadrature.
fn integral_form(n: u32, m: u32, x: &Float, negative: bool, w: Work) -> Result<Float> {
    let p = w.prec;
    let g = move |t: &Float| -> Float {
        let e = if negative {
            Float::with_val(p, -t).exp()
        } else {
            Float::with_val(p, t.exp_ref())
        };
        if m == 0 {
            e
        } else {
            e * Float::with_val(p, t.pow(m))
        }
    };
    let (v, _) = quad_at(&g, &Float::new(p), x, &Float::with_val(p, n), w)?;
    Ok(v / Float::with_val(p, factorial(n + m)))
}

/// `x^{n+1}/(n+1)! · (1 + x e^x ∫_0^1 t^{n+1} e^{-xt} dt)`.
fn laplace_form(n: u32, x: &Float, w: Work) -> Result<Float> {
    let p = w.prec;
    let g = move |t: &Float| -> Float {
        let e = Float::with_val(p, -(Float::with_val(p, x * t))).exp();
        e * Float::with_val(p, t.pow(n + 1))
    };
    let (v, _) = quad_at(
        &g,
        &Float::new(p),
        &Float::with_val(p, 1u32),
        &Float::new(p),
        w,
    )?;
    let inner = v * x * Float::with_val(p, x.exp_ref()) + 1u32;
    Ok(power_over_factorial(x, n + 1, p) * inner)
}

/// `1/Γ(a+1) ∫_0^x (x-t)^a e^t dt` by quadrature.
fn frac_integral(a: &Float, x: &Float, w: Work) -> Result<Float> {
    let p = w.prec;
    let g = move |t: &Float| Float::with_val(p, t.exp_ref());
    let (v, _) = quad_at(&g, &Float::new(p), x, a, w)?;
    Ok(v / gamma_at(&Float::with_val(p, a + 1u32), p)?)
}

/// `e^x γ(a+1, x) / Γ(a+1)`.
fn frac_incgamma(a: &Float, x: &Float, w: Work) -> Result<Float> {
    let p = w.prec;
    let v = Float::with_val(p, a + 1u32);
    let g = lower_incomplete_gamma_at(&v, x, w)?;
    Ok(g * Float::with_val(p, x.exp_ref()) / gamma_at(&v, p)?)
}

/// `(Σ_{j≤m} (-1)^j C(m,j)/C(n+m,j) x^j/j!) e^x - Σ_{j≤n} C(n,j)/C(n+m,j) x^j/j!`
/// at boosted precision.
fn obreshkov_closed(n: u32, m: u32, x: &Float, w: Work) -> Result<Float> {
    use rug::{Integer, Rational};
    let xf = x.to_f64();
    // |result| ≥ first series term n! m! x^{n+m+1} / ((n+m)! (n+m+1)!),
    // the two sums are bounded by e^x (1+x)^m and e^x.
    let first_log2 =
        log2_factorial(n) + log2_factorial(m) - log2_factorial(n + m) - log2_factorial(n + m + 1)
            + f64::from(n + m + 1) * xf.log2();
    let loss = xf * std::f64::consts::LOG2_E + f64::from(m) * (1.0 + xf).log2() + 1.0 - first_log2;
    let wb = boosted(w, loss);
    let q = wb.prec;
    let xb = Float::with_val(q, x);
    let coeff = |top: u32, j: u32| -> Rational {
        // C(top, j) / (C(n+m, j) j!)
        let num = Integer::from(Integer::binomial_u(top, j));
        let den = Integer::from(Integer::binomial_u(n + m, j)) * factorial(j);
        Rational::from((num, den))
    };
    let mut left = Float::new(q);
    for j in 0..=m {
        let t = Float::with_val(q, Float::with_val(q, &xb).pow(j)) * coeff(m, j);
        if j % 2 == 0 {
            left += t;
        } else {
            left -= t;
        }
    }
    let mut right = Float::new(q);
    for j in 0..=n {
        right += Float::with_val(q, Float::with_val(q, &xb).pow(j)) * coeff(n, j);
    }
    Ok(Float::with_val(
        w.prec,
        left * Float::with_val(q, xb.exp_ref()) - right,
    ))
}
