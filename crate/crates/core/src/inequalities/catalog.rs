//! Per-check evaluation. Every check reduces to one or more parts
//! `lhs ≥ rhs`, with `lhs` the side the inequality says is larger.

use rug::ops::Pow;
use rug::Float;

use super::constants as k;
use super::{CheckKind, Direction, Params, TestFunction};
use crate::error::{Error, Result};
use crate::numerics::{gamma_at, kummer_at, lower_incomplete_gamma_at, quad_at, Work};
use crate::pade::{eval_approximant_at, pade_exp};
use crate::remainders::{factorial, q_value_at, r_frac_at, r_neg_at, r_tail_at};

/// `lhs ≥ rhs`, with an optional magnitude of the terms that cancelled while
/// forming either side.
pub(crate) struct Part {
    pub lhs: Float,
    pub rhs: Float,
    pub scale: Option<Float>,
}

impl Part {
    fn ge(lhs: Float, rhs: Float) -> Self {
        Part {
            lhs,
            rhs,
            scale: None,
        }
    }

    fn ge_scaled(lhs: Float, rhs: Float, scale: Float) -> Self {
        Part {
            lhs,
            rhs,
            scale: Some(scale),
        }
    }
}

pub(crate) struct Outcome {
    pub parts: Vec<Part>,
    /// The constant-free quotient whose limit makes the constant sharp.
    pub quotient: Option<Float>,
    pub limit_zero: Option<Float>,
    pub limit_inf: Option<Float>,
}

impl Outcome {
    fn new(parts: Vec<Part>) -> Self {
        Outcome {
            parts,
            quotient: None,
            limit_zero: None,
            limit_inf: None,
        }
    }

    fn quotient(mut self, q: Float) -> Self {
        self.quotient = Some(q);
        self
    }

    fn zero(mut self, v: Float) -> Self {
        self.limit_zero = Some(v);
        self
    }

    fn inf(mut self, v: Float) -> Self {
        self.limit_inf = Some(v);
        self
    }

    pub fn limit(&self, dir: Direction) -> Option<&Float> {
        match dir {
            Direction::ToZero => self.limit_zero.as_ref(),
            Direction::ToInfinity => self.limit_inf.as_ref(),
        }
    }
}

/// Parameters at working precision, with presence already validated.
pub(crate) struct Args {
    pub n: u32,
    pub k: u32,
    pub nu: Float,
    pub a: Float,
    pub beta: Float,
    pub p: Float,
    pub theta: Float,
    pub theta2: Float,
    pub x: Float,
    pub y: Float,
    pub f: TestFunction,
}

impl Args {
    pub fn from_params(params: &Params, prec: u32) -> Self {
        let real = |v: &Option<Float>| {
            Float::with_val(prec, v.as_ref().map_or(Float::new(prec), Float::clone))
        };
        Args {
            n: params.n.unwrap_or(0),
            k: params.k.unwrap_or(0),
            nu: real(&params.nu),
            a: real(&params.a),
            beta: real(&params.beta),
            p: real(&params.p),
            theta: real(&params.theta),
            theta2: real(&params.theta2),
            x: real(&params.x),
            y: real(&params.y),
            f: params.f.unwrap_or(TestFunction::Exp),
        }
    }
}

struct Eval {
    w: Work,
}

impl Eval {
    fn p(&self) -> u32 {
        self.w.prec
    }

    fn f(&self, v: impl Into<f64>) -> Float {
        Float::with_val(self.p(), v.into())
    }

    fn c<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.p(), v)
    }

    fn rn(&self, n: u32, x: &Float) -> Result<Float> {
        r_tail_at(n, x, self.w)
    }

    fn ra(&self, a: &Float, x: &Float) -> Result<Float> {
        r_frac_at(a, x, self.w)
    }

    fn ra_shift(&self, a: &Float, shift: f64, x: &Float) -> Result<Float> {
        self.ra(&self.c(a + shift), x)
    }

    fn gamma(&self, v: Float) -> Result<Float> {
        gamma_at(&v, self.p())
    }
}

fn mul(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec().max(b.prec()), a * b)
}

fn div(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec().max(b.prec()), a / b)
}

pub(crate) fn evaluate(kind: CheckKind, a: &Args, w: Work) -> Result<Outcome> {
    let e = Eval { w };
    let p = w.prec;
    let x = &a.x;
    let one = e.f(1.0);
    use CheckKind::*;
    Ok(match kind {
        Alzer | Sandwich49 | Reverse43 | NegAlzer => {
            let n = a.n;
            let (lo, mid, hi) = if kind == NegAlzer {
                (
                    r_neg_at(n - 1, x, w)?,
                    r_neg_at(n, x, w)?,
                    r_neg_at(n + 1, x, w)?,
                )
            } else {
                (e.rn(n - 1, x)?, e.rn(n, x)?, e.rn(n + 1, x)?)
            };
            let prod = mul(&lo, &hi);
            let sq = e.c(mid.square_ref());
            let cn = e.c(&k::alzer_exact(n));
            let q = div(&prod, &sq);
            let out = match kind {
                Alzer | NegAlzer => Outcome::new(vec![Part::ge(prod, mul(&cn, &sq))]),
                Reverse43 => Outcome::new(vec![Part::ge(sq, prod)]),
                _ => Outcome::new(vec![
                    Part::ge(q.clone(), cn.clone()),
                    Part::ge(one.clone(), q.clone()),
                ]),
            };
            let out = out.quotient(q).zero(cn);
            if kind == NegAlzer {
                out
            } else {
                out.inf(one)
            }
        }
        GautschiK => {
            // (-1)^k Δ^k Q_n = Σ_j (-1)^j C(k,j) Q_{n+j}, split by sign
            let (mut even, mut odd) = (e.f(0.0), e.f(0.0));
            for j in 0..=a.k {
                let qv = q_value_at(a.n + j, x, w)?;
                let term = qv * rug::Integer::from(rug::Integer::binomial_u(a.k, j));
                if j % 2 == 0 {
                    even += term;
                } else {
                    odd += term;
                }
            }
            Outcome::new(vec![Part::ge(even, odd)])
        }
        GenK | FracintForm => {
            let (n, kk) = (a.n, a.k);
            let (lo, mid, hi) = if kind == GenK {
                (e.rn(n - kk, x)?, e.rn(n, x)?, e.rn(n + kk, x)?)
            } else {
                (
                    e.ra(&e.f(n - kk), x)?,
                    e.ra(&e.f(n), x)?,
                    e.ra(&e.f(n + kk), x)?,
                )
            };
            let c = k::c_nk(n, kk, p)?;
            let prod = mul(&lo, &hi);
            let sq = e.c(mid.square_ref());
            if kind == GenK {
                let q = div(&prod, &sq);
                Outcome::new(vec![Part::ge(prod, mul(&c, &sq))])
                    .quotient(q)
                    .zero(c)
            } else {
                let q = div(&sq, &prod);
                Outcome::new(vec![Part::ge(div(&prod, &c), sq)])
                    .quotient(q)
                    .zero(div(&one, &c))
            }
        }
        KummerForm => {
            let b = |off: i64| e.f((i64::from(a.n) + 2 + off) as f64);
            let lo = kummer_at(&b(-i64::from(a.k)), x, w)?;
            let hi = kummer_at(&b(i64::from(a.k)), x, w)?;
            let mid = kummer_at(&b(0), x, w)?;
            let prod = mul(&lo, &hi);
            let sq = e.c(mid.square_ref());
            let q = div(&prod, &sq);
            Outcome::new(vec![Part::ge(prod, sq)]).quotient(q).zero(one)
        }
        IncgammaForm => {
            let g = |v: u32| lower_incomplete_gamma_at(&e.f(v), x, w);
            let (n, kk) = (a.n, a.k);
            let prod = mul(&g(n + kk + 1)?, &g(n + 1 - kk)?);
            let sq = e.c(g(n + 1)?.square_ref());
            let d = k::d_nk(n, kk, p)?;
            let q = div(&sq, &prod);
            Outcome::new(vec![Part::ge(mul(&d, &prod), sq)])
                .quotient(q)
                .zero(d)
        }
        ChebyshevGen => {
            let pp = &a.p;
            let r0 = e.ra(pp, x)?;
            let rab = e.ra(&e.c(e.c(pp + &a.a) + &a.beta), x)?;
            let ra = e.ra(&e.c(pp + &a.a), x)?;
            let rb = e.ra(&e.c(pp + &a.beta), x)?;
            let c = k::chebyshev(pp, &a.a, &a.beta, p)?;
            let lhs = mul(&r0, &rab);
            let base = mul(&ra, &rb);
            let q = div(&lhs, &base);
            Outcome::new(vec![Part::ge(lhs, mul(&c, &base))])
                .quotient(q)
                .zero(c)
        }
        Interp => {
            let (nu, s, th) = (&a.nu, &a.a, &a.theta);
            let mid = e.ra(&e.c(e.c(s * th) + nu), x)?;
            let base = interp_base(&e, nu, s, th, x)?;
            let c = k::interp(nu, s, th, p)?;
            let q = div(&mid, &base);
            Outcome::new(vec![Part::ge(mul(&c, &base), mid)])
                .quotient(q)
                .zero(c)
        }
        Cor25 => {
            let (nu, s, pw) = (&a.nu, &a.a, &a.p);
            let mid = e.ra(&e.c(e.c(s / pw) + nu), x)?.pow(pw);
            let base = mul(&e.ra(&e.c(nu + s), x)?, &e.ra(nu, x)?.pow(e.c(pw - 1u32)));
            let c = k::cor25(nu, s, pw, p)?;
            let q = div(&mid, &base);
            Outcome::new(vec![Part::ge(mul(&c, &base), mid)])
                .quotient(q)
                .zero(c)
        }
        Cor26 => {
            let (n, kk) = (a.n, a.k);
            let mid = e.rn(n + 1, x)?.pow(kk);
            let base = mul(&e.rn(n + kk, x)?, &e.rn(n, x)?.pow(kk - 1));
            let c = k::cor26(n, kk, p)?;
            let q = div(&mid, &base);
            Outcome::new(vec![Part::ge(mul(&c, &base), mid)])
                .quotient(q)
                .zero(c)
        }
        Cor27 => {
            let n = e.f(a.n);
            let (s, b) = (&a.a, &a.beta);
            let mid = e.ra(&e.c(&n + b), x)?.pow(s);
            let base = mul(
                &e.ra(&n, x)?.pow(e.c(s - b)),
                &e.ra(&e.c(&n + s), x)?.pow(b),
            );
            let c = k::cor27(a.n, s, b, p)?;
            let q = div(&mid, &base);
            Outcome::new(vec![Part::ge(mul(&c, &base), mid)])
                .quotient(q)
                .zero(c)
        }
        Prod28 => {
            let (nu, s) = (&a.nu, &a.a);
            let beta = e.c(&a.theta + &a.theta2);
            let mid = mul(
                &e.ra(&e.c(e.c(s * &a.theta) + nu), x)?,
                &e.ra(&e.c(e.c(s * &a.theta2) + nu), x)?,
            );
            let base = mul(
                &e.ra(nu, x)?.pow(e.c(2u32 - &beta)),
                &e.ra(&e.c(nu + s), x)?.pow(&beta),
            );
            let c = mul(
                &k::interp(nu, s, &a.theta, p)?,
                &k::interp(nu, s, &a.theta2, p)?,
            );
            let q = div(&mid, &base);
            Outcome::new(vec![Part::ge(mul(&c, &base), mid)])
                .quotient(q)
                .zero(c)
        }
        Refined31 => {
            let s = &a.a;
            let r_lo = e.ra_shift(s, -1.0, x)?;
            let r0 = e.ra(s, x)?;
            let r_hi = e.ra_shift(s, 1.0, x)?;
            let s2 = e.c(s + 2u32);
            let sq0 = e.c(r0.square_ref());
            let prod = mul(&r_hi, &r_lo);
            let weighted = div(&mul(&e.c(s + 1u32), &sq0), &s2);
            let lhs = e.c(&prod - &weighted);
            let first = div(&sq0, &s2);
            let second = div(&mul(&s2, &e.c(r_hi.square_ref())), &e.c(x.square_ref()));
            let rhs = e.c(&first - &second);
            let scale = e.c(prod.max_ref(&sq0)).max(&second);
            Outcome::new(vec![
                Part::ge_scaled(lhs, rhs, scale.clone()),
                Part::ge(first, second),
            ])
        }
        Ratio32 => {
            let s = &a.a;
            let rhs = div(&mul(&e.c(s + 2u32), &e.ra_shift(s, 1.0, x)?), x);
            Outcome::new(vec![Part::ge(e.ra(s, x)?, rhs)])
        }
        Fracmono34 => {
            let lo = frac_integral(&e, a.f, &a.a, x)?;
            let hi = frac_integral(&e, a.f, &e.c(&a.a + 1u32), x)?;
            let rhs = div(&mul(&e.c(&a.a + 1u32), &hi), x);
            Outcome::new(vec![Part::ge(lo, rhs)])
        }
        TwoSided35 => {
            let nu = &a.nu;
            let r0 = e.ra(nu, x)?;
            let rm = e.ra_shift(nu, -1.0, x)?;
            let c = div(&e.c(nu + 1u32), x);
            let lower = mul(&c, &r0);
            let upper = mul(&e.c(&c + 1u32), &r0);
            Outcome::new(vec![Part::ge(rm.clone(), lower), Part::ge(upper, rm)])
        }
        Strength36 => {
            let nu = &a.nu;
            let r0 = e.ra(nu, x)?;
            let r1 = e.ra_shift(nu, -1.0, x)?;
            let r2 = e.ra_shift(nu, -2.0, x)?;
            let t1 = div(&mul(nu, &r1), x);
            let lhs = e.c(&r2 - &t1);
            let t2 = div(&mul(&e.c(nu + 1u32), &r0), x);
            let inner = e.c(&r1 - &t2);
            let rhs = div(&mul(&e.c(nu + 2u32), &inner), x);
            let scale = div(&mul(&e.c(nu + 2u32), &r1), x).max(&r2);
            Outcome::new(vec![Part::ge_scaled(lhs, rhs, scale), Part::ge(r1, t2)])
        }
        Kim37 => {
            let nu = &a.nu;
            let y = &a.y;
            let lhs = e.ra(nu, &e.c(x + y))?;
            let inv = e.c(e.c(x.recip_ref()) + e.c(y.recip_ref()));
            let g = e.gamma(e.c(nu + 2u32))?;
            let rhs = g * inv.pow(e.c(nu + 1u32)) * mul(&e.ra(nu, x)?, &e.ra(nu, y)?);
            Outcome::new(vec![Part::ge(lhs, rhs)])
        }
        Kim38 => {
            let (nu, y, pw) = (&a.nu, &a.y, &a.p);
            let qexp = div(pw, &e.c(pw - 1u32));
            let xpy = e.c(e.c(pw * y) + x);
            let denom = mul(
                &xpy.clone().pow(&e.c(pw.recip_ref())),
                &x.clone().pow(&e.c(qexp.recip_ref())),
            );
            let factor = div(&e.c(x + y), &denom).pow(e.c(nu + 1u32));
            let lhs = factor
                * e.ra(nu, &xpy)?.pow(e.c(pw.recip_ref()))
                * e.ra(nu, x)?.pow(e.c(qexp.recip_ref()));
            Outcome::new(vec![Part::ge(lhs, e.ra(nu, &e.c(x + y))?)])
        }
        Kim39 => {
            let nu = &a.nu;
            let lhs = e.ra(nu, &e.c(x * 2u32))?;
            let g = e.gamma(e.c(nu + 2u32))?;
            let scale = div(&e.f(2.0), x).pow(e.c(nu + 1u32));
            let rhs = g * scale * e.c(e.ra(nu, x)?.square_ref());
            let q = div(&lhs, &rhs);
            Outcome::new(vec![Part::ge(lhs, rhs)]).quotient(q).zero(one)
        }
        Kim40 => {
            let (nu, y) = (&a.nu, &a.y);
            let s = e.c(x + y);
            let factor = div(&e.c(s.square_ref()), &e.c(e.c(x * y) * 4u32)).pow(e.c(nu + 1u32));
            let lhs = factor * mul(&e.ra(nu, &e.c(x * 2u32))?, &e.ra(nu, &e.c(y * 2u32))?);
            let rhs = e.c(e.ra(nu, &s)?.square_ref());
            Outcome::new(vec![Part::ge(lhs, rhs)])
        }
        Linear44 => {
            let n = a.n;
            let lhs = div(&x.clone().pow(n + 1), &e.c(&factorial(n)));
            let rhs = mul(&e.c(e.f(n + 1) - x), &e.rn(n, x)?);
            Outcome::new(vec![Part::ge(lhs, rhs)])
        }
        PadeRow45 => {
            let n = a.n;
            let delta = e.c(x - (n + 1));
            if delta.is_zero() {
                return Err(Error::usage(format!(
                    "PADE_ROW_45: x = n+1 = {} is the pole of [n/1]",
                    n + 1
                )));
            }
            let approx = eval_approximant_at(&pade_exp(n, 1), x, w)?;
            let ex = e.c(x.exp_ref());
            if delta < 0u32 {
                Outcome::new(vec![Part::ge(approx, ex)])
            } else {
                Outcome::new(vec![Part::ge(ex, approx)])
            }
        }
        Prob15Bounds => {
            let n = a.n;
            let r = [
                e.rn(n - 2, x)?,
                e.rn(n - 1, x)?,
                e.rn(n, x)?,
                e.rn(n + 1, x)?,
            ];
            let f1 = div(&mul(&r[0], &r[2]), &e.c(r[1].square_ref()));
            let f2 = div(&e.c(r[2].square_ref()), &mul(&r[1], &r[3]));
            let fv = e.c(&f1 + &f2);
            let lower = div(&e.f(2 * n + 1), &e.f(n + 1));
            let upper = div(&e.f(2 * n + 3), &e.f(n + 1));
            let two = e.f(2.0);
            Outcome::new(vec![
                Part::ge(fv.clone(), lower),
                Part::ge(upper, fv.clone()),
            ])
            .quotient(fv)
            .zero(two.clone())
            .inf(two)
        }
    })
}

/// `R_ν^{1-θ} R_{ν+a}^θ`.
fn interp_base(e: &Eval, nu: &Float, s: &Float, th: &Float, x: &Float) -> Result<Float> {
    let left = e.ra(nu, x)?.pow(e.c(1u32 - th));
    let right = e.ra(&e.c(nu + s), x)?.pow(th);
    Ok(left * right)
}

/// `I^a_{0+}(f)(x) = 1/Γ(a) ∫_0^x (x-t)^{a-1} f(t) dt` by quadrature.
fn frac_integral(e: &Eval, f: TestFunction, order: &Float, x: &Float) -> Result<Float> {
    let p = e.p();
    let w = e.w;
    let zero = Float::new(p);
    let ex = e.c(order - 1u32);
    let g_inv = e.gamma(order.clone())?;
    let value = match f {
        TestFunction::Exp => {
            let g = |t: &Float| Float::with_val(p, t.exp_ref());
            quad_at(&g, &zero, x, &ex, w)?.0
        }
        TestFunction::Arctan => {
            let g = |t: &Float| Float::with_val(p, t.atan_ref());
            quad_at(&g, &zero, x, &ex, w)?.0
        }
        TestFunction::MinOne => {
            if *x <= 1u32 {
                let g = |t: &Float| t.clone();
                quad_at(&g, &zero, x, &ex, w)?.0
            } else {
                // ∫_0^1 (x-t)^{a-1} t dt + (x-1)^a / a
                let xc = x.clone();
                let g =
                    move |t: &Float| Float::with_val(p, Float::with_val(p, &xc - t).pow(&ex)) * t;
                let head = quad_at(&g, &zero, &Float::with_val(p, 1u32), &Float::new(p), w)?.0;
                let tail = Float::with_val(p, Float::with_val(p, x - 1u32).pow(order)) / order;
                head + tail
            }
        }
    };
    Ok(value / g_inv)
}
