use super::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(256).unwrap()
}

fn xs(c: &PrecisionContext, v: &[&str]) -> Vec<Real> {
    v.iter().map(|s| c.parse(s).unwrap()).collect()
}

fn log_grid(c: &PrecisionContext, lo: f64, hi: f64, count: usize) -> Vec<Real> {
    (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            c.real((lo.ln() + t * (hi.ln() - lo.ln())).exp())
        })
        .collect()
}

#[test]
fn problem1_positive_margins() {
    let c = ctx();
    let grid = log_grid(&c, 0.01, 10.0, 30);
    let r = problem1_monotonicity(2, &grid, &c).unwrap();
    assert!(r.min_rel_margin > 0u32);
    assert_eq!(r.sign_changes, 0);
    assert!(r.f_increasing);
    // both sides share the leading term at the origin
    let tiny = problem1_monotonicity(2, &xs(&c, &["1e-6"]), &c).unwrap();
    let m = tiny.points[0].rel_margin.to_f64();
    assert!(m > 0.0 && m < 1e-5, "{m}");
    assert!(matches!(
        problem1_monotonicity(1, &grid, &c),
        Err(Error::Usage(_))
    ));
}

#[test]
fn problem5_mobius_derivatives() {
    let c = ctx();
    let grid = xs(&c, &["0.25", "1", "1.75", "2.5"]);
    let r = problem5_pade_cm(1, 4, &grid, &c).unwrap();
    assert_eq!(r.first_pole.as_ref().unwrap().to_f64(), 2.0);
    assert_eq!(r.excluded.len(), 1);
    assert!(r.all_positive);
    // d^k/dx^k (2+x)/(2-x) = 4 k! / (2-x)^{k+1} for k >= 1
    let p = &r.points[1];
    let mut fact = 1.0;
    for k in 1..=4 {
        fact *= k as f64;
        let want = 4.0 * fact;
        let got = p.derivatives[k].to_f64();
        assert!((got - want).abs() < 1e-20 * want, "k={k}: {got}");
    }
    let r0 = problem5_pade_cm(2, 0, &grid, &c).unwrap();
    assert!(r0.first_pole.is_none());
    assert!(r0.points.iter().all(|p| p.pattern == "+"));
}

#[test]
fn problem7_sequence() {
    let c = ctx();
    let r = problem7_limit(100, &c.real(1.0), &c).unwrap();
    assert_eq!(r.sequence.len(), 10);
    assert_eq!(r.sequence[0].0, 10);
    let ratio = r.last_term_ratio.unwrap().to_f64();
    assert!((ratio - 1.0).abs() < 0.05, "{ratio}");
    assert!(r.heading.contains("never defines"));
    let small = problem7_limit(50, &c.real(0.01), &c).unwrap();
    assert!(small
        .sequence
        .iter()
        .all(|(_, _, v)| v.is_finite() && *v > 0u32));
    assert!(matches!(
        problem7_limit(9, &c.real(1.0), &c),
        Err(Error::Usage(_))
    ));
}

#[test]
fn problem8_third_order() {
    let c = ctx();
    let grid = xs(&c, &["0.5", "1", "5"]);
    let r = problem8_gautschi_k(&[1, 2, 3, 4, 5], 3, &grid, &c).unwrap();
    assert_eq!(r.points.len(), 15);
    for (n, ratio, constant) in &r.small_x {
        let d = (ratio.to_f64() - constant.to_f64()).abs();
        assert!(d < 1e-6, "n={n}: {d}");
    }
    // k = 2 agrees with the catalog check
    let two = problem8_gautschi_k(&[2], 2, &grid, &c).unwrap();
    for p in &two.points {
        assert_eq!(p.status, Status::Pass);
        let mut params = Params {
            n: Some(2),
            k: Some(2),
            ..Params::default()
        };
        params.x = Some(p.x.clone());
        let direct = evaluate_check(&CheckId::new(CheckKind::GautschiK, params), &c).unwrap();
        let d = Float::with_val(256, &direct.margin - &p.signed_diff).abs();
        assert!(d <= Float::with_val(256, &p.scale * (100.0 * c.target_rel_err())));
    }
}

#[test]
fn problem9_sequence() {
    let c = ctx();
    let r = problem9_limit(&c.real(0.5), 0, 60, &c).unwrap();
    assert_eq!(r.sequence.len(), 6);
    // m = 0 is R_n(n/2), which grows like (e/2)^n
    assert!(r.sequence.windows(2).all(|w| w[1].2 > w[0].2));
    let growth = r.last_term_ratio.unwrap().to_f64();
    let e_half = (std::f64::consts::E / 2.0).powi(10);
    assert!(growth > 0.8 * e_half && growth < e_half, "{growth}");
    assert!(r.estimate.is_none());
    assert!(matches!(
        problem9_limit(&c.real(0.5), 0, 5, &c),
        Err(Error::Usage(_))
    ));
}

#[test]
fn problem11_crosschecks() {
    let c = ctx();
    let grid = xs(&c, &["0.01", "0.7", "4", "20"]);
    let r = problem11_gdiffs(3, 1, 5, &grid, &c).unwrap();
    assert!(
        r.crosschecks_agree,
        "{} {}",
        r.k1_deviation.to_f64(),
        r.k2_deviation.to_f64()
    );
    assert_eq!(r.rows.len(), 4 * 3 * 5);
    let k1: Vec<_> = r.rows.iter().filter(|row| row.k == 1).collect();
    assert!(k1.iter().all(|row| row.forward > 0u32));
}

#[test]
fn problem11_linear_surrogate() {
    let c = ctx();
    let lin = DiffTable::new((0..6).map(|n| c.real(3.0 * n as f64 + 1.0)).collect());
    let d2 = finite_diff(&lin, 2).unwrap();
    assert!(d2.values.iter().all(|v| v.is_zero()));
}

#[test]
fn problem12_rows() {
    let c = ctx();
    let grid = xs(&c, &["1e-3", "1", "1.9999", "2", "2.5"]);
    let r = problem12_row_monotone(&[1, 2], &grid, &c).unwrap();
    let first = r.points.iter().find(|p| p.n == 1 && p.x == 1).unwrap();
    assert_eq!(first.lower_row, 3);
    assert_eq!(first.upper_row, 2.75);
    assert_eq!(first.margin, 0.25);
    // x >= n+1 excluded for n = 1
    assert!(r.excluded.iter().any(|(n, x, _)| *n == 1 && *x == 2));
    let near_zero = r.points.iter().find(|p| p.n == 1 && p.x < 0.01).unwrap();
    assert!(near_zero.margin.to_f64().abs() < 1e-8);
}

#[test]
fn problem15_containment() {
    let c = ctx();
    let grid = log_grid(&c, 1e-3, 30.0, 25);
    let r = problem15_range(3, &grid, &c).unwrap();
    assert!(r.contained);
    assert_eq!(r.lower, 1.75);
    assert_eq!(r.upper, 2.25);
    assert!((r.small_x_value.to_f64() - 2.0).abs() < 1e-6);
}

#[test]
fn rk_identity() {
    let c = ctx();
    let r = rk_error_demo(&c.real(1.0), &c.parse("0.1").unwrap(), &c.real(1.0), &c).unwrap();
    assert!(r.rel_deviation < 1e-12);
    let e = r.step_error.to_f64();
    assert!((e - 8.474_21e-8).abs() < 1e-12, "{e}");
    for (lambda, h) in [
        ("-2", "1"),
        ("-1", "0.5"),
        ("1", "0.1"),
        ("2", "0.5"),
        ("4", "0.5"),
    ] {
        let r = rk_error_demo(
            &c.parse(lambda).unwrap(),
            &c.parse(h).unwrap(),
            &c.real(1.5),
            &c,
        )
        .unwrap();
        assert!(r.rel_deviation < 1e-10, "{lambda} {h}");
    }
    let r = rk_error_demo(&c.real(1.0), &c.parse("1e-4").unwrap(), &c.real(1.0), &c).unwrap();
    assert!((r.scaled_error.unwrap().to_f64() - 1.0 / 120.0).abs() < 1e-6);
    let zero = rk_error_demo(&c.real(0.0), &c.real(0.3), &c.real(1.0), &c).unwrap();
    assert!(zero.step_error.is_zero());
    assert!(matches!(
        rk_error_demo(&c.real(1.0), &c.real(0.0), &c.real(1.0), &c),
        Err(Error::Usage(_))
    ));
}

#[test]
fn tables_render() {
    let c = ctx();
    let r = problem15_range(3, &xs(&c, &["1"]), &c).unwrap().table();
    assert_eq!(r.problem, "15");
    assert_eq!(r.summary_value("contained"), Some(&Cell::Bool(true)));
    assert_eq!(r.rows.len(), 1);
    assert_eq!(r.rows[0].len(), r.columns.len());
}
