//! Acceptance criteria 1 to 9. Each test writes one `criterion N: PASS|FAIL`
//! line straight to stderr so the verdict is visible without `--nocapture`.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use exptail::explorer::rk_error_demo;
use exptail::inequalities::constants::{
    alzer_exact, c_nk_exact, chebyshev_exact, d_nk_exact, interp_power_exact,
};
use exptail::inequalities::{
    evaluate_check, sharpness_probe, sweep, Axis, CheckId, CheckKind, CheckResult, Direction,
    ParamGrid, Params, Status,
};
use exptail::numerics::gamma_fn;
use exptail::pade::{aitken_row, eval_approximant, pade_exp};
use exptail::remainders::{cross_check, r_frac, RemainderSpec};
use exptail::{PrecisionContext, Real};
use rug::ops::Pow;
use rug::{Float, Rational};

const BITS: u32 = 256;

const C1_MAX_N: u32 = 12;
const C1_RUNTIME: Duration = Duration::from_secs(1);
const C2_RUNTIME: Duration = Duration::from_secs(60);
const C3_ZERO_TOL: f64 = 1e-6;
const C3_INF_TOL: f64 = 1e-3;
const C3_INF_X: &str = "1e4";
const C4_GRID: &str = "n=1..8;x=log(1e-3,50,200)";
const C5_INTEGER_TOL: f64 = 1e-25;
const C5_OTHER_TOL: f64 = 1e-20;
const C6_LADDER_FACTOR: f64 = 10.0;
const C6_ORDER_LO: f64 = 3.5;
const C6_ORDER_HI: f64 = 4.5;
const C7_MAX_ORDER: u32 = 10;
const C7_AITKEN_TOL: f64 = 1e-25;
const C8_TOL: f64 = 1e-10;
const C8_LAMBDA_H: [&str; 5] = ["-2", "-0.5", "0.1", "1", "2"];

fn ctx() -> PrecisionContext {
    PrecisionContext::new(BITS).unwrap()
}

fn verdict(n: u32, ok: bool, detail: &str) {
    let label = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {label} ({detail})");
}

fn real(c: &PrecisionContext, s: &str) -> Real {
    c.parse(s).unwrap()
}

fn log_points(c: &PrecisionContext, lo: &str, hi: &str, count: usize) -> Vec<Real> {
    let axis = Axis::Log {
        lo: lo.into(),
        hi: hi.into(),
        count,
    };
    axis.values(c).unwrap()
}

fn rel(a: &Real, b: &Real) -> f64 {
    let d = Float::with_val(BITS, a - b).abs();
    let s = Float::with_val(BITS, b.abs_ref());
    if s.is_zero() {
        d.to_f64()
    } else {
        (d / s).to_f64()
    }
}

fn params(c: &PrecisionContext, kv: &[(&str, &str)]) -> Params {
    let mut p = Params::default();
    for (k, v) in kv {
        p.set(k, real(c, v)).unwrap();
    }
    p
}

#[test]
fn criterion_1_exact_constants() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let half = Rational::from((1, 2));
    for n in 1..=C1_MAX_N {
        if c_nk_exact(n, 1).unwrap() != alzer_exact(n) {
            bad.push(format!("C_{{{n},1}} != C_{n}"));
        }
        if chebyshev_exact(n - 1, 1, 1) != alzer_exact(n) {
            bad.push(format!("C({},1,1) != C_{n}", n - 1));
        }
        if c_nk_exact(n, 0).unwrap() != 1 {
            bad.push(format!("C_{{{n},0}} != 1"));
        }
        for k in 0..=n {
            let c = c_nk_exact(n, k).unwrap();
            let want_d = Rational::from(1) - Rational::from((k, n + 1)).square();
            if d_nk_exact(n, k).unwrap() != want_d {
                bad.push(format!("d_{{{n},{k}}}"));
            }
            if chebyshev_exact(n - k, k, k) != c {
                bad.push(format!("C({},{k},{k}) != C_{{{n},{k}}}", n - k));
            }
            if k > 0 {
                let (pow, q) = interp_power_exact(n - k, 2 * k, &half).unwrap();
                if q != 2 || pow * &c != 1 {
                    bad.push(format!("C({},{},1/2)^2 C_{{{n},{k}}} != 1", n - k, 2 * k));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < C1_RUNTIME;
    verdict(
        1,
        ok,
        &format!("{} mismatches, {:.3} s", bad.len(), elapsed.as_secs_f64()),
    );
    assert!(ok, "{bad:?} in {elapsed:?}");
}

#[test]
fn criterion_2_full_sweep() {
    let c = ctx();
    let start = Instant::now();
    let rep = sweep(&CheckKind::ALL, &ParamGrid::default(), &c).unwrap();
    let elapsed = start.elapsed();
    let mut failing: Vec<String> = Vec::new();
    for row in &rep.rows {
        let name = match row {
            Ok(r) if r.status == Status::Fail => r.id.kind.name(),
            Err(e) => e.id.kind.name(),
            _ => continue,
        };
        if !failing.iter().any(|f| f == name) {
            failing.push(name.to_string());
        }
    }
    let s = &rep.summary;
    let ok = s.fail == 0 && s.errors == 0 && elapsed < C2_RUNTIME;
    verdict(
        2,
        ok,
        &format!(
            "{} PASS, {} FAIL, {} INDET, {} ERROR in {:.1} s; failing: [{}]",
            s.pass,
            s.fail,
            s.indeterminate,
            s.errors,
            elapsed.as_secs_f64(),
            failing.join(", ")
        ),
    );
    assert!(ok, "failing checks: {failing:?}, summary {s:?}");
}

#[test]
fn criterion_3_sharpness() {
    let c = ctx();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for n in 1..=6u32 {
        let id = CheckId::new(
            CheckKind::Alzer,
            params(&c, &[("n", &n.to_string()), ("x", "1")]),
        );
        let r = sharpness_probe(&id, Direction::ToZero, &c).unwrap();
        let want = (n + 1) as f64 / (n + 2) as f64;
        let d = (r.estimate.to_f64() - want).abs();
        worst = worst.max(d);
        if d > C3_ZERO_TOL {
            bad.push(format!("ALZER n={n}: {d:e}"));
        }
    }
    for n in 1..=6u32 {
        let id = CheckId::new(
            CheckKind::Reverse43,
            params(&c, &[("n", &n.to_string()), ("x", C3_INF_X)]),
        );
        let r: CheckResult = evaluate_check(&id, &c).unwrap();
        let d = (r.ratio.unwrap().to_f64() - 1.0).abs();
        if d > C3_INF_TOL {
            bad.push(format!("REVERSE_43 n={n}: {d:e} {:?}", r.status));
        }
    }
    let id = CheckId::new(
        CheckKind::ChebyshevGen,
        params(&c, &[("p", "0.5"), ("a", "1"), ("beta", "2"), ("x", "1")]),
    );
    let r = sharpness_probe(&id, Direction::ToZero, &c).unwrap();
    let d = (r.estimate.to_f64() - 5.0 / 9.0).abs();
    if d > C3_ZERO_TOL {
        bad.push(format!("CHEBYSHEV_GEN (0.5,1,2): {d:e}"));
    }
    let ok = bad.is_empty();
    verdict(
        3,
        ok,
        &format!("worst ALZER deviation {worst:.2e}, CHEBYSHEV_GEN deviation {d:.2e}"),
    );
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_4_sandwich() {
    let c = ctx();
    let grid: ParamGrid = C4_GRID.parse().unwrap();
    let rep = sweep(&[CheckKind::Sandwich49], &grid, &c).unwrap();
    let s = &rep.summary;
    let ok = s.total() == 1600 && s.pass == 1600;
    verdict(4, ok, &format!("{} of {} strict", s.pass, s.total()));
    assert!(ok, "{s:?}");
}

#[test]
fn criterion_5_cross_check() {
    let c = ctx();
    let mut xs = log_points(&c, "1e-3", "30", 25);
    xs.push(c.real(0.0));
    let mut worst_int: f64 = 0.0;
    let mut worst_other: f64 = 0.0;
    for n in 0..=10u32 {
        for x in &xs {
            let d = cross_check(&RemainderSpec::IntegerTail { n }, x, &c)
                .unwrap()
                .to_f64();
            worst_int = worst_int.max(d);
        }
    }
    for a in ["-0.5", "0.5", "1.5", "3.7"] {
        let spec = RemainderSpec::fractional(real(&c, a)).unwrap();
        for x in &xs {
            worst_other = worst_other.max(cross_check(&spec, x, &c).unwrap().to_f64());
        }
    }
    for n in 0..=4u32 {
        for m in 0..=3u32 {
            for x in &xs {
                let d = cross_check(&RemainderSpec::Obreshkov { n, m }, x, &c)
                    .unwrap()
                    .to_f64();
                worst_other = worst_other.max(d);
            }
        }
    }
    let ok = worst_int <= C5_INTEGER_TOL && worst_other <= C5_OTHER_TOL;
    verdict(
        5,
        ok,
        &format!("integer {worst_int:.2e}, fractional/Obreshkov {worst_other:.2e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_6_structural_identities() {
    let c = ctx();
    let tol = C6_LADDER_FACTOR * c.target_rel_err();
    let mut worst_ladder: f64 = 0.0;
    for a in ["-0.9", "-0.5", "0", "0.5", "1.5", "3.7", "7.9"] {
        let a = real(&c, a);
        let a1 = Float::with_val(BITS, &a + 1u32);
        let a2 = Float::with_val(BITS, &a + 2u32);
        let g = gamma_fn(&a2, &c).unwrap();
        for x in ["0.001", "0.5", "1", "5", "12.5", "20"] {
            let x = real(&c, x);
            let lhs = r_frac(&a, &x, &c).unwrap();
            let power = Float::with_val(BITS, x.clone().pow(&a1)) / &g;
            let rhs = power + r_frac(&a1, &x, &c).unwrap();
            worst_ladder = worst_ladder.max(rel(&rhs, &lhs));
        }
    }
    let mut orders = Vec::new();
    for nu in ["0.5", "1.5", "3.7"] {
        let nu = real(&c, nu);
        let lower = Float::with_val(BITS, &nu - 1u32);
        for x in ["0.5", "2", "10"] {
            let x = real(&c, x);
            let exact = r_frac(&lower, &x, &c).unwrap();
            let err = |h: f64| {
                let h = c.real(h);
                let up = r_frac(&nu, &Float::with_val(BITS, &x + &h), &c).unwrap();
                let down = r_frac(&nu, &Float::with_val(BITS, &x - &h), &c).unwrap();
                let d = Float::with_val(BITS, up - down) / (Float::with_val(BITS, &h) * 2u32);
                Float::with_val(BITS, d - &exact).abs().to_f64()
            };
            let (e0, e1, e2) = (err(1e-2), err(5e-3), err(2.5e-3));
            orders.push(e0 / e1);
            orders.push(e1 / e2);
        }
    }
    let order_ok = orders
        .iter()
        .all(|r| (C6_ORDER_LO..=C6_ORDER_HI).contains(r));
    let lo = orders.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = orders.iter().cloned().fold(0.0, f64::max);
    let ok = worst_ladder <= tol && order_ok;
    verdict(
        6,
        ok,
        &format!(
            "ladder {worst_ladder:.2e} vs {tol:.2e}, step-halving ratios in [{lo:.3}, {hi:.3}]"
        ),
    );
    assert!(ok, "{orders:?}");
}

#[test]
fn criterion_7_pade() {
    let c = ctx();
    let mut bad = Vec::new();
    for n in 0..=C7_MAX_ORDER {
        for m in 0..=C7_MAX_ORDER - n {
            if !pade_exp(n, m).order_condition_holds() {
                bad.push(format!("[{n}/{m}] order condition"));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for n in 1..=6u32 {
        let row = pade_exp(n, 1);
        for x in ["0.1", "0.5", "1", "2.5", "4.75", "9.3", "13"] {
            let x = real(&c, x);
            let a = aitken_row(n, &x, &c).unwrap();
            let p = eval_approximant(&row, &x, &c).unwrap();
            worst = worst.max(rel(&a, &p));
        }
    }
    if worst > C7_AITKEN_TOL {
        bad.push(format!("aitken deviation {worst:e}"));
    }
    for n in 1..=8u32 {
        let row = pade_exp(n, 1);
        for (factor, below) in [(0.5, true), (1.5, false)] {
            let x = c.real(factor * (n + 1) as f64);
            let ex = Float::with_val(BITS, x.exp_ref());
            let p = eval_approximant(&row, &x, &c).unwrap();
            if (ex < p) != below {
                bad.push(format!("direction at n={n}, x={factor}(n+1)"));
            }
        }
    }
    let ok = bad.is_empty();
    verdict(
        7,
        ok,
        &format!("aitken deviation {worst:.2e}, {} issues", bad.len()),
    );
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_8_rk_identity() {
    let c = ctx();
    let h = real(&c, "0.5");
    let mut worst: f64 = 0.0;
    for lh in C8_LAMBDA_H {
        let lambda = Float::with_val(BITS, real(&c, lh) * 2u32);
        let r = rk_error_demo(&lambda, &h, &real(&c, "1.5"), &c).unwrap();
        worst = worst.max(r.rel_deviation.to_f64());
    }
    let ok = worst <= C8_TOL;
    verdict(8, ok, &format!("max relative deviation {worst:.2e}"));
    assert!(ok);
}

#[test]
fn criterion_9_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_exptail"))
            .args([
                "--prec",
                &BITS.to_string(),
                "--format",
                "json",
                "check",
                "--id",
                "all",
            ])
            .env_remove("EXPTAIL_PREC")
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let ok = !a.stdout.is_empty() && a.stdout == b.stdout && a.status.code() == b.status.code();
    verdict(9, ok, &format!("{} bytes per run", a.stdout.len()));
    assert!(ok);
}
