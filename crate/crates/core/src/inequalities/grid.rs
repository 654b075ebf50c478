//! Declarative parameter grids: `n=1..8;x=log(1e-3,30,25)`.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{PrecisionContext, Real};

/// Parameter names a grid may mention.
pub const DIMENSIONS: [&str; 10] = [
    "n", "k", "nu", "a", "beta", "p", "theta", "theta2", "x", "y",
];

/// One axis of a grid.
#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    /// `lo..hi`, inclusive.
    Range { lo: i64, hi: i64 },
    /// `lin(lo,hi,count)`, equally spaced, endpoints included.
    Lin {
        lo: String,
        hi: String,
        count: usize,
    },
    /// `log(lo,hi,count)`, geometrically spaced, endpoints included.
    Log {
        lo: String,
        hi: String,
        count: usize,
    },
    /// `list(v1,v2,...)`.
    List(Vec<String>),
}

impl Axis {
    pub fn len(&self) -> usize {
        match self {
            Axis::Range { lo, hi } => {
                if hi < lo {
                    0
                } else {
                    (hi - lo + 1) as usize
                }
            }
            Axis::Lin { count, .. } | Axis::Log { count, .. } => *count,
            Axis::List(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The axis values at the precision of `ctx`.
    pub fn values(&self, ctx: &PrecisionContext) -> Result<Vec<Real>> {
        let p = ctx.bits();
        let parse = |s: &str| ctx.parse(s);
        let spaced = |lo: &str, hi: &str, count: usize, log: bool| -> Result<Vec<Real>> {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if log && (lo <= 0u32 || hi <= 0u32) {
                return Err(Error::usage("log spacing needs positive endpoints"));
            }
            let mut out = Vec::with_capacity(count);
            for i in 0..count {
                let v = if i == 0 {
                    lo.clone()
                } else if i + 1 == count {
                    hi.clone()
                } else {
                    let t = Float::with_val(p, i) / (count - 1) as u32;
                    if log {
                        let span =
                            Float::with_val(p, hi.ln_ref()) - Float::with_val(p, lo.ln_ref());
                        (span * t + Float::with_val(p, lo.ln_ref())).exp()
                    } else {
                        Float::with_val(p, &hi - &lo) * t + &lo
                    }
                };
                out.push(v);
            }
            Ok(out)
        };
        match self {
            Axis::Range { lo, hi } => Ok((*lo..=*hi).map(|v| Float::with_val(p, v)).collect()),
            Axis::Lin { lo, hi, count } => spaced(lo, hi, *count, false),
            Axis::Log { lo, hi, count } => spaced(lo, hi, *count, true),
            Axis::List(v) => v.iter().map(|s| parse(s)).collect(),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Range { lo, hi } => write!(f, "{lo}..{hi}"),
            Axis::Lin { lo, hi, count } => write!(f, "lin({lo},{hi},{count})"),
            Axis::Log { lo, hi, count } => write!(f, "log({lo},{hi},{count})"),
            Axis::List(v) => write!(f, "list({})", v.join(",")),
        }
    }
}

fn parse_axis(name: &str, text: &str) -> Result<Axis> {
    let bad = |why: &str| Error::usage(format!("grid axis `{name}={text}`: {why}"));
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = lo
            .trim()
            .parse::<i64>()
            .map_err(|_| bad("range bounds must be integers"))?;
        let hi = hi
            .trim()
            .parse::<i64>()
            .map_err(|_| bad("range bounds must be integers"))?;
        if hi < lo {
            return Err(bad("empty range"));
        }
        return Ok(Axis::Range { lo, hi });
    }
    let (head, args) = text
        .strip_suffix(')')
        .and_then(|t| t.split_once('('))
        .ok_or_else(|| bad("expected lo..hi, lin(lo,hi,count), log(lo,hi,count) or list(v,...)"))?;
    let args: Vec<String> = args.split(',').map(|s| s.trim().to_string()).collect();
    if args
        .iter()
        .any(|a| a.is_empty() || a.parse::<f64>().is_err())
    {
        return Err(bad("arguments must be decimal numbers"));
    }
    match head.trim() {
        "lin" | "log" => {
            if args.len() != 3 {
                return Err(bad("expected three arguments"));
            }
            let count = args[2]
                .parse::<usize>()
                .map_err(|_| bad("count must be a nonnegative integer"))?;
            if count == 0 {
                return Err(bad("count must be positive"));
            }
            let (lo, hi) = (args[0].clone(), args[1].clone());
            if head.trim() == "log" {
                let (l, h): (f64, f64) = (lo.parse().unwrap_or(0.0), hi.parse().unwrap_or(0.0));
                if l <= 0.0 || h <= 0.0 {
                    return Err(bad("log spacing needs positive endpoints"));
                }
                Ok(Axis::Log { lo, hi, count })
            } else {
                Ok(Axis::Lin { lo, hi, count })
            }
        }
        "list" => Ok(Axis::List(args)),
        other => Err(bad(&format!("unknown spacing `{other}`"))),
    }
}

/// Named axes; a sweep runs over their cross product. Parameters a check
/// needs but the grid omits fall back to that check's default axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParamGrid {
    axes: Vec<(String, Axis)>,
}

impl ParamGrid {
    /// The grid used when none is given: `n=1..8;x=log(1e-3,30,25)`, every
    /// other axis at its per-check default.
    pub fn default_grid() -> Self {
        "n=1..8;x=log(1e-3,30,25)"
            .parse()
            .expect("default grid parses")
    }

    pub fn axis(&self, name: &str) -> Option<&Axis> {
        self.axes.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    pub fn axes(&self) -> &[(String, Axis)] {
        &self.axes
    }

    pub fn with_axis(mut self, name: &str, axis: Axis) -> Result<Self> {
        if !DIMENSIONS.contains(&name) {
            return Err(Error::usage(format!(
                "unknown grid parameter `{name}` (known: {})",
                DIMENSIONS.join(", ")
            )));
        }
        if axis.is_empty() {
            return Err(Error::usage(format!("grid axis `{name}` is empty")));
        }
        if let Some(slot) = self.axes.iter_mut().find(|(n, _)| n == name) {
            slot.1 = axis;
        } else {
            self.axes.push((name.to_string(), axis));
        }
        Ok(self)
    }
}

impl FromStr for ParamGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut grid = ParamGrid::default();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, text) = part
                .split_once('=')
                .ok_or_else(|| Error::usage(format!("grid term `{part}` lacks `=`")))?;
            let name = name.trim();
            if grid.axis(name).is_some() {
                return Err(Error::usage(format!("grid parameter `{name}` given twice")));
            }
            grid = grid.with_axis(name, parse_axis(name, text)?)?;
        }
        if grid.axes.is_empty() {
            return Err(Error::usage("empty grid"));
        }
        Ok(grid)
    }
}

impl fmt::Display for ParamGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.axes.iter().map(|(n, a)| format!("{n}={a}")).collect();
        f.write_str(&parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        let g: ParamGrid = "n=1..8; x=log(1e-3,30,25);theta=list(0.25,0.5);a=lin(0,2,5)"
            .parse()
            .unwrap();
        assert_eq!(g.axis("n"), Some(&Axis::Range { lo: 1, hi: 8 }));
        assert_eq!(g.axis("x").unwrap().len(), 25);
        let ctx = PrecisionContext::new(128).unwrap();
        let xs = g.axis("x").unwrap().values(&ctx).unwrap();
        assert_eq!(xs[0], ctx.parse("1e-3").unwrap());
        assert_eq!(xs[24], 30);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        let a = g.axis("a").unwrap().values(&ctx).unwrap();
        assert_eq!(a[2], 1);
        assert_eq!(
            g.to_string(),
            "n=1..8;x=log(1e-3,30,25);theta=list(0.25,0.5);a=lin(0,2,5)"
        );
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in [
            "",
            "n=3..1",
            "q=1..2",
            "x=log(0,1,3)",
            "x=lin(0,1,0)",
            "x=cubic(1,2,3)",
            "n",
            "n=1..2;n=1..3",
            "x=lin(a,b,2)",
        ] {
            assert!(
                matches!(bad.parse::<ParamGrid>(), Err(Error::Usage(_))),
                "{bad}"
            );
        }
    }
}
