//! Named, margin-reporting checks for every inequality on the remainder
//! family, exact sharp constants, grid sweeps and limit probes.
//!
//! Each check is oriented so that `margin = lhs - rhs > 0` means the
//! inequality holds. Two-sided checks report their tighter side.

mod catalog;
pub mod constants;
mod grid;
mod sharpness;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real};

pub use grid::{Axis, ParamGrid, DIMENSIONS};
pub use sharpness::{sharpness_probe, SharpnessReport};

/// Catalog of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Alzer,
    GautschiK,
    GenK,
    KummerForm,
    IncgammaForm,
    FracintForm,
    ChebyshevGen,
    Interp,
    Cor25,
    Cor26,
    Cor27,
    Prod28,
    Refined31,
    Ratio32,
    Fracmono34,
    TwoSided35,
    Strength36,
    Kim37,
    Kim38,
    Kim39,
    Kim40,
    NegAlzer,
    Reverse43,
    Linear44,
    PadeRow45,
    Sandwich49,
    Prob15Bounds,
}

impl CheckKind {
    pub const ALL: [CheckKind; 27] = [
        CheckKind::Alzer,
        CheckKind::GautschiK,
        CheckKind::GenK,
        CheckKind::KummerForm,
        CheckKind::IncgammaForm,
        CheckKind::FracintForm,
        CheckKind::ChebyshevGen,
        CheckKind::Interp,
        CheckKind::Cor25,
        CheckKind::Cor26,
        CheckKind::Cor27,
        CheckKind::Prod28,
        CheckKind::Refined31,
        CheckKind::Ratio32,
        CheckKind::Fracmono34,
        CheckKind::TwoSided35,
        CheckKind::Strength36,
        CheckKind::Kim37,
        CheckKind::Kim38,
        CheckKind::Kim39,
        CheckKind::Kim40,
        CheckKind::NegAlzer,
        CheckKind::Reverse43,
        CheckKind::Linear44,
        CheckKind::PadeRow45,
        CheckKind::Sandwich49,
        CheckKind::Prob15Bounds,
    ];

    pub fn name(self) -> &'static str {
        use CheckKind::*;
        match self {
            Alzer => "ALZER",
            GautschiK => "GAUTSCHI_K",
            GenK => "GEN_K",
            KummerForm => "KUMMER_FORM",
            IncgammaForm => "INCGAMMA_FORM",
            FracintForm => "FRACINT_FORM",
            ChebyshevGen => "CHEBYSHEV_GEN",
            Interp => "INTERP",
            Cor25 => "COR_25",
            Cor26 => "COR_26",
            Cor27 => "COR_27",
            Prod28 => "PROD_28",
            Refined31 => "REFINED_31",
            Ratio32 => "RATIO_32",
            Fracmono34 => "FRACMONO_34",
            TwoSided35 => "TWO_SIDED_35",
            Strength36 => "STRENGTH_36",
            Kim37 => "KIM_37",
            Kim38 => "KIM_38",
            Kim39 => "KIM_39",
            Kim40 => "KIM_40",
            NegAlzer => "NEG_ALZER",
            Reverse43 => "REVERSE_43",
            Linear44 => "LINEAR_44",
            PadeRow45 => "PADE_ROW_45",
            Sandwich49 => "SANDWICH_49",
            Prob15Bounds => "PROB15_BOUNDS",
        }
    }

    /// The inequality in plain notation.
    pub fn statement(self) -> &'static str {
        use CheckKind::*;
        match self {
            Alzer => "R_{n-1} R_{n+1} > (n+1)/(n+2) R_n^2",
            GautschiK => "(-1)^k Δ^k Q_n > 0",
            GenK => "R_{n-k} R_{n+k} > C_{n,k} R_n^2",
            KummerForm => "1F1(1;n+2-k;x) 1F1(1;n+2+k;x) > 1F1(1;n+2;x)^2",
            IncgammaForm => "γ(n+1,x)^2 < d_{n,k} γ(n+k+1,x) γ(n+1-k,x)",
            FracintForm => "[I^{n+1} e^x]^2 < I^{n+1+k} e^x I^{n+1-k} e^x / C_{n,k}",
            ChebyshevGen => "R_p R_{p+a+β} ≥ C(p,a,β) R_{p+a} R_{p+β}",
            Interp => "R_{ν+aθ} ≤ C(ν,a,θ) R_ν^{1-θ} R_{ν+a}^θ",
            Cor25 => "R_{ν+a/p}^p ≤ C1(ν,a,p) R_{ν+a} R_ν^{p-1}",
            Cor26 => "R_{n+1}^k ≤ (n+k+1)!/((n+2)^{k-1} (n+2)!) R_{n+k} R_n^{k-1}",
            Cor27 => "R_{n+β}^a ≤ C2(n,a,β) R_n^{a-β} R_{n+a}^β",
            Prod28 => "R_{ν+aθ1} R_{ν+aθ2} ≤ C(ν,a,θ1) C(ν,a,θ2) R_ν^{2-θ1-θ2} R_{ν+a}^{θ1+θ2}",
            Refined31 => {
                "R_{a+1}R_{a-1} - (a+1)/(a+2) R_a^2 ≥ R_a^2/(a+2) - (a+2)/x^2 R_{a+1}^2 ≥ 0"
            }
            Ratio32 => "R_a ≥ (a+2)/x R_{a+1}",
            Fracmono34 => "I^a f ≥ (a+1)/x I^{a+1} f",
            TwoSided35 => "(ν+1)/x R_ν ≤ R_{ν-1} ≤ (1+(ν+1)/x) R_ν",
            Strength36 => "R_{ν-2} - ν/x R_{ν-1} ≥ (ν+2)/x (R_{ν-1} - (ν+1)/x R_ν) ≥ 0",
            Kim37 => "R_ν(x+y) ≥ Γ(ν+2) (1/x+1/y)^{ν+1} R_ν(x) R_ν(y)",
            Kim38 => "R_ν(x+y) ≤ [(x+y)/((x+py)^{1/p} x^{1/q})]^{ν+1} R_ν(x+py)^{1/p} R_ν(x)^{1/q}",
            Kim39 => "R_ν(2x) ≥ Γ(ν+2) 2^{ν+1}/x^{ν+1} R_ν(x)^2",
            Kim40 => "R_ν(x+y)^2 ≤ [(x+y)^2/(4xy)]^{ν+1} R_ν(2x) R_ν(2y)",
            NegAlzer => "|R_{n-1}(-x)| |R_{n+1}(-x)| > (n+1)/(n+2) |R_n(-x)|^2",
            Reverse43 => "R_n^2 > R_{n-1} R_{n+1}",
            Linear44 => "(n+1-x) R_n < x^{n+1}/n!",
            PadeRow45 => "e^x < [n/1](x) for x < n+1, reversed for x > n+1",
            Sandwich49 => "(n+1)/(n+2) < R_{n-1}R_{n+1}/R_n^2 < 1",
            Prob15Bounds => {
                "(2n+1)/(n+1) ≤ R_{n-2}R_n/R_{n-1}^2 + R_n^2/(R_{n-1}R_{n+1}) ≤ (2n+3)/(n+1)"
            }
        }
    }

    /// Parameters the check takes, in report order (`x` last, then `y`).
    pub fn dims(self) -> &'static [&'static str] {
        use CheckKind::*;
        match self {
            Alzer | NegAlzer | Reverse43 | Linear44 | PadeRow45 | Sandwich49 | Prob15Bounds => {
                &["n", "x"]
            }
            GautschiK | GenK | KummerForm | IncgammaForm | FracintForm | Cor26 => &["n", "k", "x"],
            ChebyshevGen => &["p", "a", "beta", "x"],
            Interp => &["nu", "a", "theta", "x"],
            Cor25 => &["nu", "a", "p", "x"],
            Cor27 => &["n", "a", "beta", "x"],
            Prod28 => &["nu", "a", "theta", "theta2", "x"],
            Refined31 | Ratio32 | Fracmono34 => &["a", "x"],
            TwoSided35 | Strength36 | Kim39 => &["nu", "x"],
            Kim37 | Kim40 => &["nu", "x", "y"],
            Kim38 => &["nu", "p", "x", "y"],
        }
    }

    /// Axis used for `dim` when a grid does not mention it.
    pub fn default_axis(self, dim: &str) -> Axis {
        use CheckKind::*;
        let list = |v: &[&str]| Axis::List(v.iter().map(|s| s.to_string()).collect());
        let orders = || list(&["-0.5", "0.5", "1.5", "3.7"]);
        let shifts = || list(&["0.5", "1", "2"]);
        let kim = matches!(self, Kim37 | Kim38 | Kim39 | Kim40);
        match dim {
            "n" => Axis::Range { lo: 1, hi: 8 },
            "k" => match self {
                GautschiK => Axis::Range { lo: 0, hi: 2 },
                Cor26 => Axis::Range { lo: 2, hi: 4 },
                _ => Axis::Range { lo: 0, hi: 8 },
            },
            "nu" => orders(),
            "a" => match self {
                Refined31 | Ratio32 | Fracmono34 => orders(),
                _ => shifts(),
            },
            "beta" => shifts(),
            "p" => match self {
                ChebyshevGen => orders(),
                Kim38 => list(&["1.5", "2", "4"]),
                _ => list(&["1.5", "2", "3"]),
            },
            "theta" | "theta2" => list(&["0.25", "0.5", "0.75"]),
            "x" if kim => shifts(),
            "y" => shifts(),
            _ => Axis::Log {
                lo: "1e-3".into(),
                hi: "30".into(),
                count: 25,
            },
        }
    }

    /// Admissible parameter ranges. Violations are usage errors.
    pub fn validate(self, params: &Params) -> Result<()> {
        use CheckKind::*;
        let name = self.name();
        let bad = |why: String| Err(Error::usage(format!("{name}: {why}")));
        for dim in self.dims() {
            if !params.has(dim) {
                return bad(format!("missing parameter `{dim}`"));
            }
        }
        let x = params.x.as_ref().expect("checked");
        if !x.is_finite() || *x <= 0u32 {
            return bad("x must be positive".into());
        }
        if let Some(y) = &params.y {
            if self.dims().contains(&"y") && (!y.is_finite() || *y <= 0u32) {
                return bad("y must be positive".into());
            }
        }
        let n = params.n.unwrap_or(0);
        let k = params.k.unwrap_or(0);
        let gt =
            |v: &Option<Real>, bound: f64| v.as_ref().is_some_and(|v| v.is_finite() && *v > bound);
        let ge =
            |v: &Option<Real>, bound: f64| v.as_ref().is_some_and(|v| v.is_finite() && *v >= bound);
        match self {
            Alzer | NegAlzer | Reverse43 | Sandwich49 | GautschiK if n < 1 => {
                bad("n must be at least 1".into())
            }
            Prob15Bounds if n < 2 => bad("n must be at least 2".into()),
            GenK | KummerForm | IncgammaForm | FracintForm if k > n => {
                bad("k must not exceed n".into())
            }
            Cor26 if k < 1 => bad("k must be at least 1".into()),
            ChebyshevGen
                if !(gt(&params.p, -1.0) && ge(&params.a, 0.0) && ge(&params.beta, 0.0)) =>
            {
                bad("needs p > -1, a ≥ 0, β ≥ 0".into())
            }
            Interp => {
                let th_ok = params
                    .theta
                    .as_ref()
                    .is_some_and(|t| *t >= 0u32 && *t <= 1u32);
                if gt(&params.nu, -1.0) && ge(&params.a, 0.0) && th_ok {
                    Ok(())
                } else {
                    bad("needs ν > -1, a ≥ 0, 0 ≤ θ ≤ 1".into())
                }
            }
            Cor25 if !(gt(&params.nu, -1.0) && gt(&params.a, 0.0) && ge(&params.p, 1.0)) => {
                bad("needs ν > -1, a > 0, p ≥ 1".into())
            }
            Cor27 => {
                let (a, b) = (
                    params.a.as_ref().expect("checked"),
                    params.beta.as_ref().expect("checked"),
                );
                if ge(&params.beta, 0.0) && a.is_finite() && a >= b {
                    Ok(())
                } else {
                    bad("needs a ≥ β ≥ 0".into())
                }
            }
            Prod28 => {
                let unit = |t: &Option<Real>| t.as_ref().is_some_and(|t| *t >= 0u32 && *t <= 1u32);
                if gt(&params.nu, -1.0)
                    && ge(&params.a, 0.0)
                    && unit(&params.theta)
                    && unit(&params.theta2)
                {
                    Ok(())
                } else {
                    bad("needs ν > -1, a ≥ 0, θ1, θ2 ∈ [0, 1]".into())
                }
            }
            Refined31 | Fracmono34 if !gt(&params.a, 0.0) => bad("a must be positive".into()),
            Ratio32 if !gt(&params.a, -1.0) => bad("a must exceed -1".into()),
            TwoSided35 if !gt(&params.nu, 0.0) => bad("ν must be positive".into()),
            Strength36 if !gt(&params.nu, 1.0) => bad("ν must exceed 1".into()),
            Kim37 | Kim39 | Kim40 if !gt(&params.nu, -1.0) => bad("ν must exceed -1".into()),
            Kim38 if !(gt(&params.nu, -1.0) && gt(&params.p, 1.0)) => {
                bad("needs ν > -1, p > 1".into())
            }
            PadeRow45 if *x == n + 1 => bad(format!("x = n+1 = {} is the pole of [n/1]", n + 1)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        CheckKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == upper)
            .ok_or_else(|| Error::usage(format!("unknown check `{s}`")))
    }
}

/// Positive, increasing, bounded integrands for the fractional-integral
/// check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TestFunction {
    Exp,
    Arctan,
    /// `min(t, 1)`.
    MinOne,
}

impl TestFunction {
    pub const ALL: [TestFunction; 3] = [
        TestFunction::Exp,
        TestFunction::Arctan,
        TestFunction::MinOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::Exp => "exp",
            TestFunction::Arctan => "arctan",
            TestFunction::MinOne => "min1",
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TestFunction::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::usage(format!("unknown test function `{s}` (exp, arctan, min1)")))
    }
}

/// Parameter values of one check instance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub nu: Option<Real>,
    pub a: Option<Real>,
    pub beta: Option<Real>,
    pub p: Option<Real>,
    pub theta: Option<Real>,
    pub theta2: Option<Real>,
    pub x: Option<Real>,
    pub y: Option<Real>,
    pub f: Option<TestFunction>,
}

/// A parameter value for reporting.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(u32),
    Real(Real),
    Name(&'static str),
}

impl Params {
    fn has(&self, dim: &str) -> bool {
        match dim {
            "n" => self.n.is_some(),
            "k" => self.k.is_some(),
            _ => self.real_slot(dim).is_some_and(|v| v.is_some()),
        }
    }

    fn real_slot(&self, dim: &str) -> Option<&Option<Real>> {
        Some(match dim {
            "nu" => &self.nu,
            "a" => &self.a,
            "beta" => &self.beta,
            "p" => &self.p,
            "theta" => &self.theta,
            "theta2" => &self.theta2,
            "x" => &self.x,
            "y" => &self.y,
            _ => return None,
        })
    }

    /// Set `dim` from a real value; integer dimensions must be whole and
    /// nonnegative.
    pub fn set(&mut self, dim: &str, v: Real) -> Result<()> {
        let int = || -> Result<u32> {
            if v.is_integer() && v >= 0u32 {
                v.to_u32_saturating()
                    .ok_or_else(|| Error::usage(format!("`{dim}` too large")))
            } else {
                Err(Error::usage(format!(
                    "`{dim}` must be a nonnegative integer, got {}",
                    v.to_f64()
                )))
            }
        };
        match dim {
            "n" => self.n = Some(int()?),
            "k" => self.k = Some(int()?),
            "nu" => self.nu = Some(v),
            "a" => self.a = Some(v),
            "beta" => self.beta = Some(v),
            "p" => self.p = Some(v),
            "theta" => self.theta = Some(v),
            "theta2" => self.theta2 = Some(v),
            "x" => self.x = Some(v),
            "y" => self.y = Some(v),
            _ => return Err(Error::usage(format!("unknown parameter `{dim}`"))),
        }
        Ok(())
    }

    /// Present parameters other than `x`, in fixed order.
    pub fn entries(&self) -> Vec<(&'static str, ParamValue)> {
        let mut out = Vec::new();
        if let Some(n) = self.n {
            out.push(("n", ParamValue::Int(n)));
        }
        if let Some(k) = self.k {
            out.push(("k", ParamValue::Int(k)));
        }
        for dim in ["nu", "a", "beta", "p", "theta", "theta2", "y"] {
            if let Some(Some(v)) = self.real_slot(dim) {
                out.push((dim, ParamValue::Real(v.clone())));
            }
        }
        if let Some(f) = self.f {
            out.push(("f", ParamValue::Name(f.name())));
        }
        out
    }
}

/// A check and its parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckId {
    pub kind: CheckKind,
    pub params: Params,
}

impl CheckId {
    pub fn new(kind: CheckKind, params: Params) -> Self {
        CheckId { kind, params }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Indeterminate => "INDET",
        }
    }
}

/// One evaluated check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: CheckId,
    pub lhs: Real,
    pub rhs: Real,
    /// `lhs - rhs`; positive when the inequality holds.
    pub margin: Real,
    /// Constant-free quotient for checks with a sharp constant, otherwise
    /// `lhs / rhs` when `rhs ≠ 0`.
    pub ratio: Option<Real>,
    pub err_bound: Real,
    pub status: Status,
}

impl CheckResult {
    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Direction of a sharpness limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    ToZero,
    ToInfinity,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "zero" | "0" | "tozero" => Ok(Direction::ToZero),
            "inf" | "infinity" | "toinfinity" => Ok(Direction::ToInfinity),
            _ => Err(Error::usage(format!("unknown direction `{s}` (zero, inf)"))),
        }
    }
}

fn err_bound(
    lhs: &Float,
    rhs: &Float,
    scale: Option<&Float>,
    ctx: &PrecisionContext,
    p: u32,
) -> Float {
    let mut m = Float::with_val(p, lhs.abs_ref()).max(&Float::with_val(p, rhs.abs_ref()));
    if let Some(s) = scale {
        m = m.max(&Float::with_val(p, s.abs_ref()));
    }
    m * (100.0 * ctx.target_rel_err())
}

/// Evaluate one check at the precision of `ctx`.
///
/// `err_bound = 100 · target_rel_err · max(|lhs|, |rhs|, s)` where `s` is the
/// largest term that cancelled in forming a side. `PASS` needs
/// `margin > err_bound`, `FAIL` needs `margin < -err_bound`.
pub fn evaluate_check(id: &CheckId, ctx: &PrecisionContext) -> Result<CheckResult> {
    id.kind.validate(&id.params)?;
    let w = ctx.work();
    let params = widen_params(&id.params, ctx);
    let args = catalog::Args::from_params(&params, w.prec);
    let outcome = catalog::evaluate(id.kind, &args, w)?;
    let mut best: Option<(Float, &catalog::Part, Float)> = None;
    for part in &outcome.parts {
        let margin = Float::with_val(w.prec, &part.lhs - &part.rhs);
        let bound = err_bound(&part.lhs, &part.rhs, part.scale.as_ref(), ctx, w.prec);
        let score = if bound.is_zero() {
            margin.clone()
        } else {
            Float::with_val(w.prec, &margin / &bound)
        };
        if best.as_ref().map_or(true, |(s, _, _)| score < *s) {
            best = Some((score, part, bound));
        }
    }
    let (_, part, bound) = best.expect("every check has a part");
    let margin = Float::with_val(w.prec, &part.lhs - &part.rhs);
    let status = if margin > bound {
        Status::Pass
    } else if margin < -Float::with_val(w.prec, &bound) {
        Status::Fail
    } else {
        Status::Indeterminate
    };
    let ratio = match &outcome.quotient {
        Some(q) => Some(q.clone()),
        None if !part.rhs.is_zero() => Some(Float::with_val(w.prec, &part.lhs / &part.rhs)),
        None => None,
    };
    Ok(CheckResult {
        id: id.clone(),
        lhs: ctx.finish(part.lhs.clone()),
        rhs: ctx.finish(part.rhs.clone()),
        margin: ctx.finish(margin),
        ratio: ratio.map(|r| ctx.finish(r)),
        err_bound: ctx.finish(bound),
        status,
    })
}

fn widen_params(p: &Params, ctx: &PrecisionContext) -> Params {
    let w = |v: &Option<Real>| v.as_ref().map(|v| ctx.widen(v));
    Params {
        n: p.n,
        k: p.k,
        nu: w(&p.nu),
        a: w(&p.a),
        beta: w(&p.beta),
        p: w(&p.p),
        theta: w(&p.theta),
        theta2: w(&p.theta2),
        x: w(&p.x),
        y: w(&p.y),
        f: p.f,
    }
}

/// A grid point that could not be evaluated.
#[derive(Debug, Clone)]
pub struct PointError {
    pub id: CheckId,
    pub error: Error,
}

pub type SweepRow = std::result::Result<CheckResult, PointError>;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub errors: usize,
}

impl SweepSummary {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.indeterminate + self.errors
    }
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
}

/// Every admissible instance of `kind` on `grid`, in grid order (first
/// dimension slowest). Points outside the check's parameter ranges are
/// skipped.
pub fn grid_points(
    kind: CheckKind,
    grid: &ParamGrid,
    ctx: &PrecisionContext,
) -> Result<Vec<CheckId>> {
    let mut axes: Vec<(&str, Vec<Real>)> = Vec::new();
    for dim in kind.dims() {
        let axis = grid
            .axis(dim)
            .cloned()
            .unwrap_or_else(|| kind.default_axis(dim));
        axes.push((dim, axis.values(ctx)?));
    }
    let functions: Vec<Option<TestFunction>> = if kind == CheckKind::Fracmono34 {
        TestFunction::ALL.iter().copied().map(Some).collect()
    } else {
        vec![None]
    };
    let mut out = Vec::new();
    let total: usize = axes.iter().map(|(_, v)| v.len()).product();
    for f in &functions {
        for idx in 0..total {
            let mut rest = idx;
            let mut params = Params {
                f: *f,
                ..Params::default()
            };
            let mut slots = vec![0usize; axes.len()];
            for (i, (_, vals)) in axes.iter().enumerate().rev() {
                slots[i] = rest % vals.len();
                rest /= vals.len();
            }
            for (i, (dim, vals)) in axes.iter().enumerate() {
                params.set(dim, vals[slots[i]].clone())?;
            }
            if kind.validate(&params).is_ok() {
                out.push(CheckId::new(kind, params));
            }
        }
    }
    Ok(out)
}

/// Evaluate `kinds` over `grid`. Results come back ordered by
/// (check, grid index) regardless of how points are scheduled; a point that
/// fails to evaluate is recorded and the sweep goes on.
pub fn sweep(kinds: &[CheckKind], grid: &ParamGrid, ctx: &PrecisionContext) -> Result<SweepReport> {
    if kinds.is_empty() {
        return Err(Error::usage("no checks selected"));
    }
    let mut points = Vec::new();
    for kind in kinds {
        points.extend(grid_points(*kind, grid, ctx)?);
    }
    if points.is_empty() {
        return Err(Error::usage(format!(
            "grid `{grid}` has no admissible points"
        )));
    }
    let rows: Vec<SweepRow> = points
        .into_par_iter()
        .map(|id| evaluate_check(&id, ctx).map_err(|error| PointError { id, error }))
        .collect();
    let mut summary = SweepSummary::default();
    for row in &rows {
        match row {
            Ok(r) => match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Indeterminate => summary.indeterminate += 1,
            },
            Err(_) => summary.errors += 1,
        }
    }
    Ok(SweepReport { rows, summary })
}
