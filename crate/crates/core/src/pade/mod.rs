//! Padé approximants of `exp` in exact rational arithmetic, the Aitken
//! transform of the Taylor partial sums, Cesàro means and the switch
//! function `Δ(x) = x - (n+1)`.

mod poly;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real, Work};
use crate::remainders::{factorial, r_obreshkov};

/// `[n/m]` approximant `num(x)/den(x)` with `den(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalApproximant {
    pub n: u32,
    pub m: u32,
    /// Ascending powers.
    pub num_coeffs: Vec<Rational>,
    /// Ascending powers, `den_coeffs[0] == 1`.
    pub den_coeffs: Vec<Rational>,
}

/// The `[n/m]` Padé approximant of `e^x`:
/// `p_j = n!(n+m-j)! / ((n+m)! j! (n-j)!)`,
/// `q_j = (-1)^j m!(n+m-j)! / ((n+m)! j! (m-j)!)`.
pub fn pade_exp(n: u32, m: u32) -> RationalApproximant {
    let nm = factorial(n + m);
    let coeff = |top: u32, j: u32| -> Rational {
        let num = factorial(top) * factorial(n + m - j);
        let den = (&nm * factorial(j)) * factorial(top - j);
        Rational::from((num, den))
    };
    let num_coeffs = (0..=n).map(|j| coeff(n, j)).collect();
    let den_coeffs = (0..=m)
        .map(|j| {
            let c = coeff(m, j);
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    RationalApproximant {
        n,
        m,
        num_coeffs,
        den_coeffs,
    }
}

impl RationalApproximant {
    /// First `count` Taylor coefficients of `num/den`, by exact series
    /// division.
    pub fn taylor_coeffs(&self, count: usize) -> Vec<Rational> {
        let mut c: Vec<Rational> = Vec::with_capacity(count);
        for k in 0..count {
            let mut v = self.num_coeffs.get(k).cloned().unwrap_or_default();
            for j in 1..=k.min(self.m as usize) {
                v -= Rational::from(&self.den_coeffs[j] * &c[k - j]);
            }
            c.push(v / &self.den_coeffs[0]);
        }
        c
    }

    /// Whether the expansion agrees with `Σ x^k/k!` through degree `n+m`,
    /// with no rounding anywhere.
    pub fn order_condition_holds(&self) -> bool {
        let count = (self.n + self.m + 1) as usize;
        self.taylor_coeffs(count)
            .iter()
            .enumerate()
            .all(|(k, c)| *c == Rational::from((1, factorial(k as u32))))
    }

    pub fn eval_exact(&self, x: &Rational) -> Option<Rational> {
        let d = poly::eval(&self.den_coeffs, x);
        if d == 0 {
            return None;
        }
        Some(poly::eval(&self.num_coeffs, x) / d)
    }

    /// Real roots of the denominator in `(lo, hi]`, as isolating intervals
    /// narrower than `width`.
    pub fn denominator_roots(
        &self,
        lo: &Rational,
        hi: &Rational,
        width: &Rational,
    ) -> Vec<(Rational, Rational)> {
        if self.m == 0 {
            return Vec::new();
        }
        let chain = poly::sturm_chain(&self.den_coeffs);
        poly::isolate_roots(&chain, lo, hi, width)
    }

    /// Smallest positive real root of the denominator, if any, to within
    /// `width`.
    pub fn first_positive_pole(&self, width: &Rational) -> Option<Rational> {
        if self.m == 0 {
            return None;
        }
        let bound = poly::root_bound(&self.den_coeffs);
        self.denominator_roots(&Rational::new(), &bound, width)
            .into_iter()
            .next()
            .map(|(a, b)| (a + b) / 2u32)
    }

    /// Pole guard: a denominator root within relative distance `radius` of
    /// `x` (absolute when `x = 0`).
    fn pole_near(&self, x: &Rational, radius: f64) -> Option<Rational> {
        if self.m == 0 {
            return None;
        }
        let r = Rational::from_f64(radius).expect("finite radius");
        let scale = if *x == 0 {
            Rational::from(1)
        } else {
            Rational::from(x.abs_ref())
        };
        let delta = scale * r;
        let lo = Rational::from(x - &delta);
        let hi = Rational::from(x + &delta);
        let chain = poly::sturm_chain(&self.den_coeffs);
        let at_lo = poly::eval(&self.den_coeffs, &lo) == 0;
        if at_lo || poly::count_roots(&chain, &lo, &hi) > 0 {
            let width = Rational::from(&delta / 1024u32);
            let roots = poly::isolate_roots(&chain, &Rational::from(&lo - &width), &hi, &width);
            return roots
                .into_iter()
                .next()
                .map(|(a, b)| (a + b) / 2u32)
                .or(Some(lo));
        }
        None
    }
}

fn to_rational(x: &Float, op: &'static str) -> Result<Rational> {
    x.to_rational()
        .ok_or_else(|| Error::domain(op, "argument must be finite"))
}

/// `num(x)/den(x)`, evaluated exactly and rounded once. Points within
/// `10 · target_rel_err` relative distance of a real denominator root are
/// rejected.
pub fn eval_approximant(
    appr: &RationalApproximant,
    x: &Real,
    ctx: &PrecisionContext,
) -> Result<Real> {
    let xr = to_rational(&ctx.adopt(x), "eval_approximant")?;
    if let Some(root) = appr.pole_near(&xr, 10.0 * ctx.target_rel_err()) {
        let digits = ctx.decimal_digits().min(30);
        return Err(Error::Pole {
            at: ctx.format(x),
            root: crate::numerics::format_real(&Float::with_val(ctx.bits(), &root), digits),
        });
    }
    let v = appr.eval_exact(&xr).ok_or_else(|| Error::Pole {
        at: ctx.format(x),
        root: ctx.format(x),
    })?;
    Ok(Float::with_val(ctx.bits(), &v))
}

pub(crate) fn eval_approximant_at(appr: &RationalApproximant, x: &Float, w: Work) -> Result<Float> {
    let xr = to_rational(x, "eval_approximant")?;
    if let Some(root) = appr.pole_near(&xr, 10.0 * w.tol) {
        return Err(Error::Pole {
            at: crate::numerics::format_real(x, 30),
            root: crate::numerics::format_real(&Float::with_val(w.prec, &root), 30),
        });
    }
    let v = appr.eval_exact(&xr).ok_or_else(|| Error::Pole {
        at: crate::numerics::format_real(x, 30),
        root: crate::numerics::format_real(x, 30),
    })?;
    Ok(Float::with_val(w.prec, &v))
}

/// `t_n(x) = Σ_{k≤n} x^k/k!` in exact arithmetic.
fn taylor_exact(n: u32, x: &Rational) -> Rational {
    let mut sum = Rational::from(1);
    let mut term = Rational::from(1);
    for k in 1..=n {
        term *= x;
        term /= k;
        sum += &term;
    }
    sum
}

/// Taylor partial sum of `exp` of degree `n`.
pub fn taylor_partial(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let xr = to_rational(&ctx.adopt(x), "taylor_partial")?;
    Ok(Float::with_val(ctx.bits(), &taylor_exact(n, &xr)))
}

/// Aitken transform of `t_{n-1}, t_n, t_{n+1}`:
/// `(t_{n-1} t_{n+1} - t_n²) / (t_{n+1} + t_{n-1} - 2 t_n)`, exact.
pub fn aitken_row(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if n < 1 {
        return Err(Error::domain("aitken_row", "n must be at least 1"));
    }
    let xr = to_rational(&ctx.adopt(x), "aitken_row")?;
    aitken_exact(n, &xr).map(|v| Float::with_val(ctx.bits(), &v))
}

fn aitken_exact(n: u32, x: &Rational) -> Result<Rational> {
    let a = taylor_exact(n - 1, x);
    let b = taylor_exact(n, x);
    let c = taylor_exact(n + 1, x);
    let den = Rational::from(&a + &c) - Rational::from(&b * 2u32);
    if den == 0 {
        return Err(Error::Degenerate {
            op: "aitken_row",
            reason: format!(
                "t_{{n+1}} + t_{{n-1}} - 2 t_n vanishes (x = 0 or x = n+1 = {})",
                n + 1
            ),
        });
    }
    let num = Rational::from(&a * &c) - b.square();
    Ok(num / den)
}

/// `Δ(x) = x - (n+1)`; carries 64 extra bits so the subtraction is exact for
/// any argument of moderate exponent.
pub fn delta_fn(n: u32, x: &Real) -> Real {
    Float::with_val(x.prec() + 64, x - (n + 1))
}

/// Cesàro mean `Σ_{j≤n} (1 - j/(n+1)) x^j/j!`.
pub fn cesaro_mean(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let xr = to_rational(&ctx.adopt(x), "cesaro_mean")?;
    Ok(Float::with_val(ctx.bits(), &cesaro_exact(n, &xr, false)))
}

/// `textual = true` gives the other reading `Σ (1 - j x/(n+1)) x^j/j!`.
fn cesaro_exact(n: u32, x: &Rational, textual: bool) -> Rational {
    let mut sum = Rational::new();
    let mut term = Rational::from(1);
    for j in 0..=n {
        if j > 0 {
            term *= x;
            term /= j;
        }
        let mut w = Rational::from((j, n + 1));
        if textual {
            w *= x;
        }
        sum += &term * (Rational::from(1) - w);
    }
    sum
}

/// Residuals of `(1 - x/(n+1)) e^x - γ_n(x) - R_{n,1}(x)` under both readings
/// of the Cesàro weight.
#[derive(Debug, Clone)]
pub struct CesaroProbe {
    pub n: u32,
    pub x: Real,
    /// Weight `1 - j/(n+1)`.
    pub classical_residual: Real,
    /// Weight `1 - j x/(n+1)`.
    pub textual_residual: Real,
    /// Reading with the smaller relative residual.
    pub closes: &'static str,
}

pub fn cesaro_identity_probe(n: u32, x: &Real, ctx: &PrecisionContext) -> Result<CesaroProbe> {
    let xr = to_rational(&ctx.adopt(x), "cesaro_identity_probe")?;
    let target = r_obreshkov(n, 1, x, ctx)?;
    let xf = x.to_f64().abs();
    // (1 - x/(n+1)) e^x and γ_n are O(e^x (1+x)); R_{n,1} is O(x^{n+2}/(n+2)!).
    let loss = xf * std::f64::consts::LOG2_E
        + (1.0 + xf).log2()
        + (2..=n + 2).map(|i| f64::from(i).log2()).sum::<f64>()
        - f64::from(n + 2) * xf.max(1e-300).log2();
    let p = ctx.bits() + 64 + if loss > 0.0 { loss.ceil() as u32 } else { 0 };
    let xb = Float::with_val(p, &xr);
    let lead = Float::with_val(p, 1u32) - Float::with_val(p, &xb / (n + 1));
    let lead = lead * Float::with_val(p, xb.exp_ref());
    let scale = if target.is_zero() {
        Float::with_val(p, 1u32)
    } else {
        Float::with_val(p, target.abs_ref())
    };
    let residual = |textual: bool| -> Real {
        let g = Float::with_val(p, &cesaro_exact(n, &xr, textual));
        let r = Float::with_val(p, &lead - &g) - &target;
        Float::with_val(ctx.bits(), r / &scale)
    };
    let classical_residual = residual(false);
    let textual_residual = residual(true);
    let closes = if classical_residual.clone().abs() <= textual_residual.clone().abs() {
        "classical"
    } else {
        "textual"
    };
    Ok(CesaroProbe {
        n,
        x: x.clone(),
        classical_residual,
        textual_residual,
        closes,
    })
}

#[cfg(test)]
mod tests;
