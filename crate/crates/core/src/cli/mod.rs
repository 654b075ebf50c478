//! Command-line front end: `eval`, `check`, `sharpness`, `explore`.
//!
//! Exit codes: 0 success, 1 some check FAILed, 2 usage error, 3 numerical
//! failure (takes precedence over 1).

mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::explorer::{self, Report};
use crate::inequalities::{self, CheckId, CheckKind, Direction, ParamGrid, Params};
use crate::numerics::{self, PrecisionContext, Real};
use crate::{pade, remainders};

pub use output::{check_record_json, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Problems that exist but have no experiment here.
const OUT_OF_SCOPE: [&str; 7] = ["2", "3", "4", "6", "10", "13", "14"];

#[derive(Debug, Parser)]
#[command(
    name = "exptail",
    version,
    about = "Exponential Taylor remainders at configurable precision"
)]
struct Cli {
    /// Mantissa bits (53..=1000).
    #[arg(long, global = true, env = "EXPTAIL_PREC", visible_alias = "bits")]
    prec: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one quantity.
    Eval(EvalArgs),
    /// Run inequality checks over a parameter grid.
    Check(CheckArgs),
    /// Estimate the limit that makes a constant sharp.
    Sharpness(SharpArgs),
    /// Run an open-problem experiment.
    Explore(ExploreArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Rn,
    Ra,
    Rneg,
    Robr,
    Q,
    B,
    Eps,
    G,
    Gammainc,
    Kummer,
    Pade,
    Aitken,
    Cesaro,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    /// Real order (`ra`, `b`, `eps`) or shape (`gammainc`).
    #[arg(long, alias = "nu")]
    a: Option<String>,
    /// Lower parameter of `1F1(1; b; x)`.
    #[arg(long)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Comma-separated check ids, or `all`.
    #[arg(long, default_value = "all")]
    id: String,
    /// `name=lo..hi;name=lin(lo,hi,count);name=log(lo,hi,count);name=list(v,...)`.
    /// Parameters left out use each check's defaults.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    theta2: Option<String>,
    #[arg(long)]
    y: Option<String>,
}

#[derive(Debug, Args)]
struct SharpArgs {
    #[arg(long)]
    id: String,
    /// `zero` or `inf`.
    #[arg(long)]
    dir: String,
    #[command(flatten)]
    point: PointArgs,
}

#[derive(Debug, Args)]
struct ExploreArgs {
    /// 1, 5, 7, 8, 9, 11, 12, 15 or `rk`.
    #[arg(long)]
    problem: String,
    #[arg(long)]
    n: Option<u32>,
    /// Integer range `lo..hi` for problems 8, 11, 12.
    #[arg(long)]
    n_range: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    k_max: Option<u32>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<String>,
    /// x axis: `lin(..)`, `log(..)`, `list(..)`.
    #[arg(long)]
    x: Option<String>,
}

/// Parse `args` (program name first), run, and return the exit code.
/// A sweep report rendered exactly as `check` writes it.
pub fn render_sweep(
    report: &inequalities::SweepReport,
    format: Format,
    ctx: &PrecisionContext,
) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    output::write_sweep(&mut out, format, ctx, report)?;
    Ok(out)
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("exptail: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let ctx = PrecisionContext::new(cli.prec.unwrap_or(PrecisionContext::DEFAULT_BITS))?;
    let mut buf: Vec<u8> = Vec::new();
    let code = match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.format, &ctx, &mut buf)?,
        Command::Check(a) => cmd_check(a, cli.format, &ctx, &mut buf)?,
        Command::Sharpness(a) => cmd_sharpness(a, cli.format, &ctx, &mut buf)?,
        Command::Explore(a) => cmd_explore(a, cli.format, &ctx, &mut buf)?,
    };
    let io_err = |e: io::Error| Error::usage(format!("cannot write output: {e}"));
    match &cli.out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(&buf))
            .map_err(io_err)?,
        None => io::stdout().write_all(&buf).map_err(io_err)?,
    }
    Ok(code)
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::usage(format!("missing --{name}")))
}

fn real(ctx: &PrecisionContext, v: &Option<String>, name: &str) -> Result<Real> {
    ctx.parse(&need(v, name)?)
}

fn real_or(ctx: &PrecisionContext, v: &Option<String>, default: &str) -> Result<Real> {
    ctx.parse(v.as_deref().unwrap_or(default))
}

fn cmd_eval(
    a: &EvalArgs,
    format: Format,
    ctx: &PrecisionContext,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let x = ctx.parse(&a.x)?;
    let n = || need(&a.n, "n");
    let m = || need(&a.m, "m");
    let order = || real(ctx, &a.a, "a");
    let mut params: Vec<(&str, String)> = Vec::new();
    let value = match a.quantity {
        Quantity::Rn => remainders::r_tail(n()?, &x, ctx)?,
        Quantity::Ra => remainders::r_frac(&order()?, &x, ctx)?,
        Quantity::Rneg => remainders::r_neg(n()?, &x, ctx)?,
        Quantity::Robr => remainders::r_obreshkov(n()?, m()?, &x, ctx)?,
        Quantity::Q => remainders::q_value(n()?, &x, ctx)?,
        Quantity::B => remainders::b_value(&order()?, &x, ctx)?,
        Quantity::Eps => remainders::eps_value(&order()?, &x, ctx)?,
        Quantity::G => remainders::g_ratio(n()?, &x, ctx)?,
        Quantity::Gammainc => numerics::lower_incomplete_gamma(&order()?, &x, ctx)?,
        Quantity::Kummer => numerics::kummer_1f1_one(&real(ctx, &a.b, "b")?, &x, ctx)?,
        Quantity::Pade => pade::eval_approximant(&pade::pade_exp(n()?, m()?), &x, ctx)?,
        Quantity::Aitken => pade::aitken_row(n()?, &x, ctx)?,
        Quantity::Cesaro => pade::cesaro_mean(n()?, &x, ctx)?,
    };
    if let Some(n) = a.n {
        params.push(("n", n.to_string()));
    }
    if let Some(m) = a.m {
        params.push(("m", m.to_string()));
    }
    if let Some(v) = &a.a {
        params.push(("a", v.clone()));
    }
    if let Some(v) = &a.b {
        params.push(("b", v.clone()));
    }
    let name = Quantity::to_possible_value(&a.quantity)
        .expect("no skipped variants")
        .get_name()
        .to_string();
    output::write_eval(out, format, ctx, &name, &params, &x, &value)?;
    Ok(EXIT_OK)
}

fn parse_kinds(spec: &str) -> Result<Vec<CheckKind>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(CheckKind::ALL.to_vec());
    }
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn cmd_check(
    a: &CheckArgs,
    format: Format,
    ctx: &PrecisionContext,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let kinds = parse_kinds(&a.id)?;
    let grid = match &a.grid {
        Some(g) => g.parse::<ParamGrid>()?,
        None => ParamGrid::default(),
    };
    let report = inequalities::sweep(&kinds, &grid, ctx)?;
    output::write_sweep(out, format, ctx, &report)?;
    let s = report.summary;
    eprintln!(
        "{} results: {} PASS, {} FAIL, {} INDET, {} ERROR",
        s.total(),
        s.pass,
        s.fail,
        s.indeterminate,
        s.errors
    );
    Ok(if s.errors > 0 {
        EXIT_NUMERICAL
    } else if s.fail > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}

fn point_params(p: &PointArgs, ctx: &PrecisionContext) -> Result<Params> {
    let mut params = Params {
        n: p.n,
        k: p.k,
        ..Params::default()
    };
    for (name, v) in [
        ("nu", &p.nu),
        ("a", &p.a),
        ("beta", &p.beta),
        ("p", &p.p),
        ("theta", &p.theta),
        ("theta2", &p.theta2),
        ("y", &p.y),
    ] {
        if let Some(s) = v {
            params.set(name, ctx.parse(s)?)?;
        }
    }
    Ok(params)
}

fn cmd_sharpness(
    a: &SharpArgs,
    format: Format,
    ctx: &PrecisionContext,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let kind: CheckKind = a.id.parse()?;
    let dir: Direction = a.dir.parse()?;
    let params = point_params(&a.point, ctx)?;
    let report = inequalities::sharpness_probe(&CheckId::new(kind, params), dir, ctx)?;
    output::write_sharpness(out, format, ctx, &report)?;
    Ok(EXIT_OK)
}

fn n_range(spec: &Option<String>, default: (u32, u32)) -> Result<Vec<u32>> {
    let (lo, hi) = match spec {
        None => default,
        Some(s) => {
            let (l, h) = s
                .split_once("..")
                .ok_or_else(|| Error::usage(format!("bad range `{s}`, expected lo..hi")))?;
            let parse = |t: &str| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::usage(format!("bad range `{s}`")))
            };
            (parse(l)?, parse(h)?)
        }
    };
    if hi < lo {
        return Err(Error::usage("empty n range"));
    }
    Ok((lo..=hi).collect())
}

fn x_axis(spec: &Option<String>, default: &str, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    let text = format!("x={}", spec.as_deref().unwrap_or(default));
    let grid: ParamGrid = text.parse()?;
    grid.axis("x").expect("x axis present").values(ctx)
}

const DEFAULT_X: &str = "log(1e-3,30,25)";

fn cmd_explore(
    a: &ExploreArgs,
    format: Format,
    ctx: &PrecisionContext,
    out: &mut Vec<u8>,
) -> Result<i32> {
    let problem = a.problem.trim().to_ascii_lowercase();
    if OUT_OF_SCOPE.contains(&problem.as_str()) {
        return Err(Error::usage(format!(
            "problem {problem}: not implemented (out of scope)"
        )));
    }
    let table = match problem.as_str() {
        "1" => {
            explorer::problem1_monotonicity(a.n.unwrap_or(2), &x_axis(&a.x, DEFAULT_X, ctx)?, ctx)?
                .table()
        }
        "5" => explorer::problem5_pade_cm(
            a.n.unwrap_or(1),
            a.k_max.unwrap_or(4),
            &x_axis(&a.x, "lin(0.1,4,40)", ctx)?,
            ctx,
        )?
        .table(),
        "7" => explorer::problem7_limit(a.n_max.unwrap_or(100), &real_or(ctx, &a.c, "1")?, ctx)?
            .table(),
        "8" => explorer::problem8_gautschi_k(
            &n_range(&a.n_range, (1, 5))?,
            a.k.unwrap_or(3),
            &x_axis(&a.x, "list(0.5,1,5)", ctx)?,
            ctx,
        )?
        .table(),
        "9" => explorer::problem9_limit(
            &real_or(ctx, &a.a, "0.5")?,
            a.m.unwrap_or(0),
            a.n_max.unwrap_or(100),
            ctx,
        )?
        .table(),
        "11" => {
            let ns = n_range(&a.n_range, (1, 5))?;
            explorer::problem11_gdiffs(
                a.k_max.unwrap_or(3),
                ns[0],
                *ns.last().expect("nonempty"),
                &x_axis(&a.x, DEFAULT_X, ctx)?,
                ctx,
            )?
            .table()
        }
        "12" => explorer::problem12_row_monotone(
            &n_range(&a.n_range, (1, 5))?,
            &x_axis(&a.x, DEFAULT_X, ctx)?,
            ctx,
        )?
        .table(),
        "15" => explorer::problem15_range(a.n.unwrap_or(3), &x_axis(&a.x, DEFAULT_X, ctx)?, ctx)?
            .table(),
        "rk" => explorer::rk_error_demo(
            &real_or(ctx, &a.lambda, "1")?,
            &real_or(ctx, &a.h, "0.1")?,
            &real_or(ctx, &a.y0, "1")?,
            ctx,
        )?
        .table(),
        other => {
            return Err(Error::usage(format!(
                "unknown problem `{other}` (available: {})",
                explorer::PROBLEMS.join(", ")
            )))
        }
    };
    output::write_table(out, format, ctx, &table)?;
    Ok(EXIT_OK)
}
