use std::sync::OnceLock;

use rug::float::Constant;
use rug::{Float, Integer, Rational};

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Number of Bernoulli numbers `B_2, B_4, …` kept for the Stirling series.
const BERNOULLI_PAIRS: usize = 120;

/// Largest integer argument routed through the exact factorial.
const FACTORIAL_LIMIT: u32 = 20_000;

/// `Γ(v)` for `v > 0`.
///
/// Positive integers go through the exact factorial `(v-1)!`. Everything
/// else uses the Stirling series for `ln Γ` after raising the argument to at
/// least half the working precision (in bits) with the recurrence
/// `Γ(v) = Γ(v+N) / (v (v+1) … (v+N-1))`.
pub fn gamma_fn(v: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let w = ctx.work();
    let v = ctx.widen(v);
    gamma_at(&v, w.prec).map(|g| ctx.finish(g))
}

pub(crate) fn gamma_at(v: &Float, prec: u32) -> Result<Float> {
    if !v.is_finite() || *v <= 0u32 {
        return Err(Error::domain(
            "gamma_fn",
            format!("argument must be positive and finite, got {}", v.to_f64()),
        ));
    }
    if v.is_integer() && *v <= FACTORIAL_LIMIT {
        let n = v.to_u32_saturating().expect("bounded integer") - 1;
        return Ok(Float::with_val(prec, Integer::from(Integer::factorial(n))));
    }

    let z_min = (prec / 2).max(16);
    let v_f = v.to_f64();
    let shift = if v_f < z_min as f64 {
        (z_min as f64 - v_f).ceil() as u32
    } else {
        0
    };
    let z_f = v_f + shift as f64;
    // ln Γ(z) has magnitude about z ln z; exp() turns its absolute error into
    // relative error, so carry that many extra bits.
    let extra = (z_f * z_f.ln()).max(2.0).log2().ceil() as u32;
    let p = prec + 16 + extra;

    let v = Float::with_val(p, v);
    let mut product = Float::with_val(p, 1u32);
    for i in 0..shift {
        product *= Float::with_val(p, &v + i);
    }
    let z = Float::with_val(p, &v + shift);
    let ln_g = stirling_ln_gamma(&z, p)?;
    Ok(Float::with_val(prec, ln_g.exp() / product))
}

/// `ln Γ(z)` by the Stirling series; requires `z ≥ p/2` so that the terms are
/// still decreasing when they drop below `2^-p`.
fn stirling_ln_gamma(z: &Float, p: u32) -> Result<Float> {
    let ln_z = Float::with_val(p, z.ln_ref());
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let mut sum = Float::with_val(p, z - 0.5f64) * &ln_z - z + two_pi.ln() / 2u32;

    let z_sq = Float::with_val(p, z.square_ref());
    let mut z_pow = z.clone(); // z^(2k-1)
    let eps = Float::with_val(p, Float::i_exp(1, -(p as i32)));
    for (idx, b2k) in bernoulli_even().iter().enumerate() {
        let k = idx as u32 + 1;
        let denom = Float::with_val(p, &z_pow * (2 * k * (2 * k - 1)));
        let term = Float::with_val(p, b2k) / denom;
        sum += &term;
        if Float::with_val(p, term.abs_ref()) < Float::with_val(p, sum.abs_ref()) * &eps {
            return Ok(sum);
        }
        z_pow *= &z_sq;
    }
    Err(Error::NoConvergence {
        op: "gamma_fn",
        estimate: super::context::format_real(&sum, 20),
        detail: format!("Stirling series exhausted {BERNOULLI_PAIRS} Bernoulli numbers"),
    })
}

/// `B_2, B_4, …, B_{2·BERNOULLI_PAIRS}` as exact rationals.
fn bernoulli_even() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let m_max = 2 * BERNOULLI_PAIRS;
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut b: Vec<Rational> = Vec::with_capacity(m_max + 1);
        b.push(Rational::from(1));
        b.push(Rational::from((-1, 2)));
        for m in 2..=m_max {
            if m % 2 == 1 {
                b.push(Rational::new());
                continue;
            }
            let mut acc = Rational::new();
            let mut binom = Integer::from(1); // C(m+1, 0)
            for (j, bj) in b.iter().enumerate() {
                if *bj.numer() != 0 {
                    acc += Rational::from(bj * &binom);
                }
                binom *= (m + 1 - j) as u32;
                binom /= (j + 1) as u32;
            }
            b.push(-acc / Rational::from(m as u32 + 1));
        }
        b.into_iter().skip(2).step_by(2).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn bernoulli_prefix() {
        let b = bernoulli_even();
        assert_eq!(b[0], Rational::from((1, 6)));
        assert_eq!(b[1], Rational::from((-1, 30)));
        assert_eq!(b[2], Rational::from((1, 42)));
        assert_eq!(b[5], Rational::from((-691, 2730)));
    }

    #[test]
    fn integer_arguments_are_factorials() {
        let c = ctx(256);
        assert_eq!(gamma_fn(&c.real(5.0), &c).unwrap(), 24u32);
        assert_eq!(gamma_fn(&c.real(1.0), &c).unwrap(), 1u32);
        assert_eq!(gamma_fn(&c.real(11.0), &c).unwrap(), 3_628_800u32);
    }

    #[test]
    fn half_is_sqrt_pi() {
        let c = ctx(256);
        let sqrt_pi = Float::with_val(512, Constant::Pi).sqrt();
        let g = gamma_fn(&c.real(0.5), &c).unwrap();
        let rel = Float::with_val(512, &g - &sqrt_pi) / &sqrt_pi;
        assert!(rel.abs() < c.target_rel_err());
        assert!(c.format(&g).starts_with("1.77245385090551602"));
    }

    #[test]
    fn rejects_nonpositive_arguments() {
        let c = ctx(64);
        for v in [0.0, -1.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                gamma_fn(&c.real(v), &c),
                Err(Error::Domain { .. })
            ));
        }
    }
}
