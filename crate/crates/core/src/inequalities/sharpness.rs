//! Numerical limits of the constant-free quotients, to confirm a constant is
//! sharp.

use rug::Float;

use super::{catalog, widen_params, CheckId, Direction};
use crate::error::{Error, Result};
use crate::numerics::{last_three_agree, richardson_diagonal, PrecisionContext, Real};

/// Agreement demanded of the last three extrapolants (or raw samples).
pub const SHARPNESS_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct SharpnessReport {
    pub id: CheckId,
    pub direction: Direction,
    /// `(x, quotient(x))`.
    pub samples: Vec<(Real, Real)>,
    /// Diagonal of the Richardson table.
    pub extrapolants: Vec<Real>,
    pub estimate: Real,
    /// The sharp constant the quotient should approach.
    pub expected: Real,
    /// `"richardson"` or `"plateau"`.
    pub method: &'static str,
}

impl SharpnessReport {
    pub fn abs_error(&self) -> Real {
        Float::with_val(self.estimate.prec(), &self.estimate - &self.expected).abs()
    }
}

fn sample_points(dir: Direction) -> Vec<String> {
    match dir {
        Direction::ToZero => (2..=8).map(|e| format!("1e-{e}")).collect(),
        Direction::ToInfinity => (1..=4).map(|e| format!("1e{e}")).collect(),
    }
}

/// Sample the check's quotient at `x = 10^-2, ..., 10^-8` (towards 0) or
/// `x = 10, ..., 10^4` (towards infinity, in `h = 1/x`) and extrapolate with
/// Richardson's table for step ratio 10. The `x` of `id` is ignored.
pub fn sharpness_probe(
    id: &CheckId,
    direction: Direction,
    ctx: &PrecisionContext,
) -> Result<SharpnessReport> {
    let w = ctx.work();
    let mut samples = Vec::new();
    let mut expected = None;
    for xs in sample_points(direction) {
        let mut params = id.params.clone();
        params.x = Some(ctx.parse(&xs)?);
        id.kind.validate(&params)?;
        let args = catalog::Args::from_params(&widen_params(&params, ctx), w.prec);
        let out = catalog::evaluate(id.kind, &args, w)?;
        let (Some(q), Some(lim)) = (out.quotient.clone(), out.limit(direction).cloned()) else {
            let dir = match direction {
                Direction::ToZero => "x -> 0",
                Direction::ToInfinity => "x -> infinity",
            };
            return Err(Error::usage(format!(
                "{} has no sharp constant as {dir}",
                id.kind
            )));
        };
        expected.get_or_insert(lim);
        samples.push((args.x, q));
    }
    let expected = expected.expect("at least one sample");
    let raw: Vec<Float> = samples.iter().map(|(_, q)| q.clone()).collect();

    let diagonal = richardson_diagonal(&raw, 10.0, w.prec);

    let (estimate, method) = if last_three_agree(&diagonal, SHARPNESS_TOL) {
        (diagonal.last().expect("nonempty").clone(), "richardson")
    } else if last_three_agree(&raw, SHARPNESS_TOL) {
        (raw.last().expect("nonempty").clone(), "plateau")
    } else {
        return Err(Error::Sharpness {
            reason: format!("{} quotient did not settle", id.kind),
            samples: raw
                .iter()
                .map(|v| ctx.format(&ctx.finish(v.clone())))
                .collect(),
        });
    };
    Ok(SharpnessReport {
        id: id.clone(),
        direction,
        samples: samples
            .into_iter()
            .map(|(x, q)| (ctx.finish(x), ctx.finish(q)))
            .collect(),
        extrapolants: diagonal.into_iter().map(|v| ctx.finish(v)).collect(),
        estimate: ctx.finish(estimate),
        expected: ctx.finish(expected),
        method,
    })
}
