//! Sharp constants of the catalog, exactly (rationals, integer arguments)
//! and in floating point (gamma function, any admissible arguments).

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::gamma_at;
use crate::remainders::factorial;

fn ratio(num: Integer, den: Integer) -> Rational {
    Rational::from((num, den))
}

/// `C_n = (n+1)/(n+2)`.
pub fn alzer_exact(n: u32) -> Rational {
    Rational::from((n + 1, n + 2))
}

/// `C_{n,k} = [(n+1)!]² / ((n+k+1)! (n-k+1)!)`, `k ≤ n`.
pub fn c_nk_exact(n: u32, k: u32) -> Result<Rational> {
    if k > n {
        return Err(Error::usage(format!(
            "C_{{n,k}} needs k <= n, got n={n}, k={k}"
        )));
    }
    let f = factorial(n + 1);
    Ok(ratio(
        f.clone() * f,
        factorial(n + k + 1) * factorial(n - k + 1),
    ))
}

/// `d_{n,k} = (n+1+k)(n+1-k)/(n+1)²`, `k ≤ n`.
pub fn d_nk_exact(n: u32, k: u32) -> Result<Rational> {
    if k > n {
        return Err(Error::usage(format!(
            "d_{{n,k}} needs k <= n, got n={n}, k={k}"
        )));
    }
    let n1 = Integer::from(n + 1);
    Ok(ratio(
        Integer::from(n + 1 + k) * (n + 1 - k),
        n1.clone() * n1,
    ))
}

/// `C(p,a,β) = Γ(p+a+2) Γ(p+β+2) / (Γ(p+2) Γ(p+a+β+2))` at integers.
pub fn chebyshev_exact(p: u32, a: u32, beta: u32) -> Rational {
    ratio(
        factorial(p + a + 1) * factorial(p + beta + 1),
        factorial(p + 1) * factorial(p + a + beta + 1),
    )
}

/// `C(ν,a,θ)^q` for `θ = r/q` in lowest terms, where `aθ` must be an
/// integer so the value is rational:
/// `Γ(ν+2)^{q-r} Γ(ν+a+2)^r / Γ(ν+aθ+2)^q`.
pub fn interp_power_exact(nu: u32, a: u32, theta: &Rational) -> Result<(Rational, u32)> {
    if *theta < 0 || *theta > 1 {
        return Err(Error::usage("theta must lie in [0, 1]"));
    }
    let shift = Rational::from(theta * a);
    if *shift.denom() != 1 {
        return Err(Error::usage(
            "a*theta must be an integer for an exact constant",
        ));
    }
    let shift = shift.numer().to_u32().expect("shift fits u32");
    let q = theta
        .denom()
        .to_u32()
        .ok_or_else(|| Error::usage("theta denominator too large"))?;
    let r = theta.numer().to_u32().expect("0 <= theta <= 1");
    let num = factorial(nu + 1).pow(q - r) * factorial(nu + a + 1).pow(r);
    let den = factorial(nu + shift + 1).pow(q);
    Ok((ratio(num, den), q))
}

/// `C₁(ν,a,p) = Γ(ν+2)^{p-1} Γ(ν+a+2) / Γ(ν+a/p+2)^p` for integers with
/// `p | a`.
pub fn cor25_exact(nu: u32, a: u32, p: u32) -> Result<Rational> {
    if p == 0 || a % p != 0 {
        return Err(Error::usage("exact C1 needs p >= 1 dividing a"));
    }
    let num = factorial(nu + 1).pow(p - 1) * factorial(nu + a + 1);
    let den = factorial(nu + a / p + 1).pow(p);
    Ok(ratio(num, den))
}

/// `(n+k+1)! / ((n+2)^{k-1} (n+2)!)`, `k ≥ 1`.
pub fn cor26_exact(n: u32, k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::usage("COR_26 needs k >= 1"));
    }
    let den = Integer::from(n + 2).pow(k - 1) * factorial(n + 2);
    Ok(ratio(factorial(n + k + 1), den))
}

/// `C₂(n,a,β) = (Γ(n+2)/Γ(n+β+2))^a (Γ(n+a+2)/Γ(n+2))^β` at integers.
pub fn cor27_exact(n: u32, a: u32, beta: u32) -> Rational {
    let first = ratio(factorial(n + 1), factorial(n + beta + 1)).pow(a as i32);
    let second = ratio(factorial(n + a + 1), factorial(n + 1)).pow(beta as i32);
    first * second
}

fn gamma(v: Float, p: u32) -> Result<Float> {
    gamma_at(&v, p)
}

fn shifted(base: &Float, add: f64, p: u32) -> Float {
    Float::with_val(p, base + add)
}

/// Floating `C_{n,k}`.
pub(crate) fn c_nk(n: u32, k: u32, p: u32) -> Result<Float> {
    Ok(Float::with_val(p, &c_nk_exact(n, k)?))
}

pub(crate) fn d_nk(n: u32, k: u32, p: u32) -> Result<Float> {
    Ok(Float::with_val(p, &d_nk_exact(n, k)?))
}

pub(crate) fn chebyshev(pp: &Float, a: &Float, beta: &Float, p: u32) -> Result<Float> {
    let g1 = gamma(Float::with_val(p, pp + a) + 2u32, p)?;
    let g2 = gamma(Float::with_val(p, pp + beta) + 2u32, p)?;
    let g3 = gamma(shifted(pp, 2.0, p), p)?;
    let g4 = gamma(Float::with_val(p, pp + a) + beta + 2u32, p)?;
    Ok(g1 * g2 / g3 / g4)
}

pub(crate) fn interp(nu: &Float, a: &Float, theta: &Float, p: u32) -> Result<Float> {
    let g0 = gamma(shifted(nu, 2.0, p), p)?;
    let ga = gamma(Float::with_val(p, nu + a) + 2u32, p)?;
    let gt = gamma(
        Float::with_val(p, Float::with_val(p, a * theta) + nu) + 2u32,
        p,
    )?;
    let one_minus = Float::with_val(p, 1u32 - theta);
    Ok(g0.pow(one_minus) * ga.pow(theta) / gt)
}

pub(crate) fn cor25(nu: &Float, a: &Float, pw: &Float, p: u32) -> Result<Float> {
    let g0 = gamma(shifted(nu, 2.0, p), p)?;
    let ga = gamma(Float::with_val(p, nu + a) + 2u32, p)?;
    let gs = gamma(
        Float::with_val(p, Float::with_val(p, a / pw) + nu) + 2u32,
        p,
    )?;
    Ok(g0.pow(Float::with_val(p, pw - 1u32)) * ga / gs.pow(pw))
}

pub(crate) fn cor26(n: u32, k: u32, p: u32) -> Result<Float> {
    Ok(Float::with_val(p, &cor26_exact(n, k)?))
}

pub(crate) fn cor27(n: u32, a: &Float, beta: &Float, p: u32) -> Result<Float> {
    let nf = Float::with_val(p, n);
    let g0 = gamma(shifted(&nf, 2.0, p), p)?;
    let gb = gamma(Float::with_val(p, &nf + beta) + 2u32, p)?;
    let ga = gamma(Float::with_val(p, &nf + a) + 2u32, p)?;
    let first = Float::with_val(p, &g0 / &gb).pow(a);
    let second = Float::with_val(p, &ga / &g0).pow(beta);
    Ok(first * second)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn spot_values() {
        assert_eq!(c_nk_exact(2, 2).unwrap(), q(3, 10));
        assert_eq!(d_nk_exact(2, 1).unwrap(), q(8, 9));
        assert_eq!(c_nk_exact(5, 0).unwrap(), 1);
        assert!(c_nk_exact(2, 3).is_err());
    }

    #[test]
    fn floating_matches_exact() {
        let p = 200;
        let f = |v: f64| Float::with_val(p, v);
        let tol = Float::with_val(p, 2f64.powi(-180));
        let close = |a: Float, b: &Rational| {
            let b = Float::with_val(p, b);
            Float::with_val(p, &a - &b).abs() <= Float::with_val(p, &tol * &b)
        };
        assert!(close(
            chebyshev(&f(2.0), &f(1.0), &f(3.0), p).unwrap(),
            &chebyshev_exact(2, 1, 3)
        ));
        let (c2, qq) = interp_power_exact(1, 4, &q(1, 2)).unwrap();
        assert_eq!(qq, 2);
        let c = interp(&f(1.0), &f(4.0), &f(0.5), p).unwrap();
        assert!(close(c.square(), &c2));
        assert!(close(
            cor25(&f(1.0), &f(6.0), &f(3.0), p).unwrap(),
            &cor25_exact(1, 6, 3).unwrap()
        ));
        assert!(close(
            cor27(2, &f(3.0), &f(1.0), p).unwrap(),
            &cor27_exact(2, 3, 1)
        ));
    }
}
