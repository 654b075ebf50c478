use rug::float::Round;
use rug::Float;

use crate::error::{Error, Result};

/// Extended-precision real. Every value produced by this crate carries the
/// precision of the [`PrecisionContext`] it was computed under.
pub type Real = Float;

/// Extra mantissa bits carried internally on top of the requested precision.
pub(crate) const GUARD_BITS: u32 = 32;

/// Working precision and truncation threshold for every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    bits: u32,
    target_rel_err: f64,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 53;
    /// Upper limit keeping `2^(1-bits)` representable as an `f64`.
    pub const MAX_BITS: u32 = 1000;
    pub const DEFAULT_BITS: u32 = 256;

    /// Context with the default target `2^(16 - bits)`.
    pub fn new(bits: u32) -> Result<Self> {
        Self::check_bits(bits)?;
        Self::with_target(bits, default_target(bits))
    }

    pub fn with_target(bits: u32, target_rel_err: f64) -> Result<Self> {
        Self::check_bits(bits)?;
        let floor = 2f64.powi(1 - bits as i32);
        if !(target_rel_err.is_finite() && target_rel_err >= floor && target_rel_err < 1.0) {
            return Err(Error::usage(format!(
                "target_rel_err must lie in [2^(1-bits), 1) = [{floor:e}, 1), got {target_rel_err:e}"
            )));
        }
        Ok(PrecisionContext {
            bits,
            target_rel_err,
        })
    }

    fn check_bits(bits: u32) -> Result<()> {
        if !(Self::MIN_BITS..=Self::MAX_BITS).contains(&bits) {
            return Err(Error::usage(format!(
                "precision must be between {} and {} bits, got {bits}",
                Self::MIN_BITS,
                Self::MAX_BITS
            )));
        }
        Ok(())
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn target_rel_err(&self) -> f64 {
        self.target_rel_err
    }

    /// The same context at twice the precision, default target rescaled.
    pub fn doubled(&self) -> Result<Self> {
        Self::new(self.bits * 2)
    }

    /// `bits + extra` with the target tightened by the same factor.
    pub fn boosted(&self, extra: u32) -> Result<Self> {
        let bits = self.bits + extra;
        Self::with_target(
            bits,
            (self.target_rel_err * 2f64.powi(-(extra as i32))).max(2f64.powi(1 - bits as i32)),
        )
    }

    /// Number of significant decimal digits used when printing.
    pub fn decimal_digits(&self) -> usize {
        (self.bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    pub fn real(&self, v: f64) -> Real {
        Float::with_val(self.bits, v)
    }

    pub fn int(&self, v: i64) -> Real {
        Float::with_val(self.bits, v)
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::usage(format!("cannot parse `{s}` as a real number: {e}")))?;
        let v = Float::with_val(self.bits, parsed);
        if !v.is_finite() {
            return Err(Error::usage(format!("`{s}` is not a finite real number")));
        }
        Ok(v)
    }

    /// Decimal rendering at [`decimal_digits`](Self::decimal_digits) digits.
    pub fn format(&self, v: &Real) -> String {
        format_real(v, self.decimal_digits())
    }

    /// Nominal error bound `target · |v|` for a value computed under this
    /// context.
    pub fn err_bound(&self, v: &Real) -> Real {
        Float::with_val(self.bits, v.abs_ref()) * self.target_rel_err
    }

    /// Bring an operand into this context. Operands at a different precision
    /// are rounded to the coarser of the two and a warning is logged.
    pub fn adopt(&self, v: &Real) -> Real {
        let prec = v.prec();
        if prec == self.bits {
            return v.clone();
        }
        log::warn!(
            "operand at {prec} bits used in a {}-bit context; rounding to {} bits",
            self.bits,
            prec.min(self.bits)
        );
        let mut out = v.clone();
        if prec > self.bits {
            out.set_prec_round(self.bits, Round::Nearest);
        }
        out.set_prec(self.bits);
        out
    }

    pub(crate) fn work(&self) -> Work {
        Work {
            prec: self.bits + GUARD_BITS,
            tol: self.target_rel_err,
        }
    }

    /// Round an internally computed value back to the context precision.
    pub(crate) fn finish(&self, v: Float) -> Real {
        Float::with_val(self.bits, v)
    }

    /// Operand at working precision (exact widening after adoption).
    pub(crate) fn widen(&self, v: &Real) -> Float {
        Float::with_val(self.bits + GUARD_BITS, self.adopt(v))
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: Self::DEFAULT_BITS,
            target_rel_err: default_target(Self::DEFAULT_BITS),
        }
    }
}

fn default_target(bits: u32) -> f64 {
    2f64.powi(16 - bits as i32)
}

/// Internal evaluation settings: mantissa bits and relative truncation
/// tolerance.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Work {
    pub prec: u32,
    pub tol: f64,
}

impl Work {
    #[cfg(test)]
    pub fn real(&self, v: f64) -> Float {
        Float::with_val(self.prec, v)
    }

    /// The same tolerance with `extra` more bits of mantissa.
    pub fn widened(&self, extra: u32) -> Work {
        Work {
            prec: self.prec + extra,
            tol: self.tol,
        }
    }
}

/// Render `v` with `digits` significant digits, trailing zeros removed.
/// Plain notation for moderate exponents, scientific otherwise.
pub fn format_real(v: &Float, digits: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    if v.is_nan() {
        return "NaN".to_string();
    }
    if v.is_infinite() {
        return if v.is_sign_negative() { "-inf" } else { "inf" }.to_string();
    }
    let (negative, mantissa, exp) = v.to_sign_string_exp(10, Some(digits));
    let exp = exp.expect("finite nonzero value has an exponent");
    let mantissa = mantissa.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    // v = 0.mantissa × 10^exp
    let sci = exp - 1;
    if (-5..21).contains(&sci) {
        let len = mantissa.len() as i32;
        if exp <= 0 {
            format!("{sign}0.{}{mantissa}", "0".repeat((-exp) as usize))
        } else if exp >= len {
            format!("{sign}{mantissa}{}", "0".repeat((exp - len) as usize))
        } else {
            let (int, frac) = mantissa.split_at(exp as usize);
            format!("{sign}{int}.{frac}")
        }
    } else {
        let (lead, rest) = mantissa.split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{sci}")
        } else {
            format!("{sign}{lead}.{rest}e{sci}")
        }
    }
}
