use super::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(256).unwrap()
}

fn close(a: &Float, b: &str, tol: f64) -> bool {
    let b = Float::with_val(a.prec(), Float::parse(b).unwrap());
    let d = Float::with_val(a.prec(), a - &b).abs();
    d <= Float::with_val(a.prec(), b.abs_ref()) * tol
}

// Reference digits from 60-digit evaluations of the defining formulas.
const R4_01: &str = "8.47423142914783744931569133348912138614041853854595300484247e-8";
const Q_1_1: &str = "0.362253912355890775851086116727246028274067331564290296656075";
const G_1_1: &str = "2.39221119117733281437655287847981652837397838531528712359132";
const RFRAC_05_1: &str = "1.16231908520772565705337822374060214524898633187770919753326";
const RNEG_2_3: &str = "2.45021293163213605702065758434993822336830040781157678443237";
const ROBR_1_1_1: &str = "-0.140859085770477382319856264323668751121376453150020212516516";
const EPS_1_1: &str = "0.290616692785362422107533414561845025782068738690734665057132";
const B_05_2: &str = "7.25432080015084911828549111328262050542889067368071286646734";

#[test]
fn r_tail_closed_forms() {
    let c = ctx();
    let r0 = r_tail(0, &c.real(1.0), &c).unwrap();
    let e1 = Float::with_val(256, 1u32).exp() - 1u32;
    assert!(Float::with_val(256, &r0 - &e1).abs() < 1e-70);
    assert!(r_tail(5, &c.real(0.0), &c).unwrap().is_zero());
    assert!(close(
        &r_tail(4, &c.parse("0.1").unwrap(), &c).unwrap(),
        R4_01,
        1e-45
    ));
}

#[test]
fn r_tail_large_argument_has_no_cancellation() {
    let c = ctx();
    let x = c.real(300.0);
    let r = r_tail(2, &x, &c).unwrap();
    let hi = PrecisionContext::new(1000).unwrap();
    let expect = hi.real(300.0).exp() - 1u32 - 300u32 - 45_000u32;
    assert!(
        Float::with_val(1000, Float::with_val(1000, &r - &expect) / &expect).abs()
            < c.target_rel_err()
    );
}

#[test]
fn r_frac_cases() {
    let c = ctx();
    let a = r_frac(&c.real(3.0), &c.real(2.0), &c).unwrap();
    let b = r_tail(3, &c.real(2.0), &c).unwrap();
    assert!(Float::with_val(256, Float::with_val(256, &a - &b) / &b).abs() < 1e-70);
    assert!(r_frac(&c.real(0.5), &c.real(0.0), &c).unwrap().is_zero());
    assert!(close(
        &r_frac(&c.real(0.5), &c.real(1.0), &c).unwrap(),
        RFRAC_05_1,
        1e-55
    ));
    assert!(matches!(
        r_frac(&c.real(-1.0), &c.real(1.0), &c),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn r_frac_matches_quadrature_at_half_order() {
    let c = ctx();
    let spec = RemainderSpec::fractional(c.real(0.5)).unwrap();
    let paths = evaluate_paths(&spec, &c.real(1.0), &c).unwrap();
    let series = &paths.iter().find(|p| p.path == "kummer").unwrap().value;
    let quad = &paths.iter().find(|p| p.path == "integral").unwrap().value;
    assert!(Float::with_val(256, Float::with_val(256, series - quad) / series).abs() < 1e-25);
}

#[test]
fn r_neg_cases() {
    let c = ctx();
    let v = r_neg(0, &c.real(1.0), &c).unwrap();
    let expect = 1u32 - Float::with_val(256, -1i32).exp();
    assert!(Float::with_val(256, &v - &expect).abs() < 1e-70);
    assert!(c.format(&v).starts_with("0.632120558"));
    assert!(r_neg(3, &c.real(0.0), &c).unwrap().is_zero());
    assert!(close(&r_neg(2, &c.real(3.0), &c).unwrap(), RNEG_2_3, 1e-55));
    let paths =
        evaluate_paths(&RemainderSpec::NegativeArgument { n: 2 }, &c.real(3.0), &c).unwrap();
    assert_eq!(paths.len(), 3);
    for p in &paths {
        assert!(close(&p.value, RNEG_2_3, 1e-25), "{} disagrees", p.path);
    }
    assert_eq!(r_neg_sign(2), -1);
    assert_eq!(r_neg_sign(3), 1);
}

#[test]
fn obreshkov_cases() {
    let c = ctx();
    let a = r_obreshkov(2, 0, &c.real(1.0), &c).unwrap();
    let b = r_tail(2, &c.real(1.0), &c).unwrap();
    assert!(Float::with_val(256, Float::with_val(256, &a - &b) / &b).abs() < 1e-70);
    assert!(r_obreshkov(2, 3, &c.real(0.0), &c).unwrap().is_zero());
    assert!(close(
        &r_obreshkov(1, 1, &c.real(1.0), &c).unwrap(),
        ROBR_1_1_1,
        1e-55
    ));
}

#[test]
fn obreshkov_series_matches_quadrature_before_use() {
    let c = ctx();
    for (n, m) in [(0, 1), (1, 1), (2, 3), (4, 2), (3, 0)] {
        for x in [0.01, 1.0, 7.5] {
            let spec = RemainderSpec::Obreshkov { n, m };
            let paths = evaluate_paths(&spec, &c.real(x), &c).unwrap();
            let series = &paths[0].value;
            let quad = &paths.iter().find(|p| p.path == "integral").unwrap().value;
            let rel = Float::with_val(256, Float::with_val(256, series - quad) / series).abs();
            assert!(rel < 1e-25, "n={n} m={m} x={x}: {rel}");
            assert_eq!(series.is_sign_negative(), m % 2 == 1);
        }
    }
}

#[test]
fn q_value_cases() {
    let c = ctx();
    assert!(close(&q_value(1, &c.real(1.0), &c).unwrap(), Q_1_1, 1e-55));
    let q = q_value(2, &c.real(0.001), &c).unwrap();
    assert!(Float::with_val(256, &q - 0.25f64).abs() < 1e-3);
    // Shrinking x moves Q_2 toward 1/4
    let q2 = q_value(2, &c.real(1e-5), &c).unwrap();
    assert!(Float::with_val(256, &q2 - 0.25f64).abs() < Float::with_val(256, &q - 0.25f64).abs());
    for n in 1..=8 {
        for x in [1e-4, 0.3, 2.0, 25.0] {
            let q = q_value(n, &c.real(x), &c).unwrap();
            assert!(q > 0u32 && q < 1u32, "Q_{n}({x}) = {q}");
        }
    }
    assert!(matches!(
        q_value(1, &c.real(0.0), &c),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn b_value_cases() {
    let c = ctx();
    let b = b_value(&c.real(0.0), &c.real(1.0), &c).unwrap();
    let e1 = Float::with_val(256, 1u32).exp() - 1u32;
    assert!(Float::with_val(256, &b - &e1).abs() < 1e-70);
    assert!(close(
        &b_value(&c.real(0.5), &c.real(2.0), &c).unwrap(),
        B_05_2,
        1e-55
    ));
    for n in 1..=7 {
        for x in [0.01, 1.0, 10.0] {
            let x = c.real(x);
            let lo = b_value(&c.real(f64::from(n - 1)), &x, &c).unwrap();
            let mid = b_value(&c.real(f64::from(n)), &x, &c).unwrap();
            let hi = b_value(&c.real(f64::from(n + 1)), &x, &c).unwrap();
            assert!(mid.clone().square() <= lo * hi);
        }
    }
}

#[test]
fn eps_value_cases() {
    let c = ctx();
    // R_ν/R_{ν+1} = (ν+2)/x + 1/(ν+3) + O(x), so the x → 0 end of the
    // range is 1/(ν+3) rather than 0.
    for nu in [0.0, 1.0, 2.5] {
        let small = eps_value(&c.real(nu), &c.real(1e-6), &c).unwrap();
        let limit = 1.0 / (nu + 3.0);
        assert!(
            small > limit && small.to_f64() - limit < 1e-5,
            "nu={nu}: {small}"
        );
    }
    assert!(close(
        &eps_value(&c.real(1.0), &c.real(1.0), &c).unwrap(),
        EPS_1_1,
        1e-55
    ));
    let big = eps_value(&c.real(1.0), &c.real(100.0), &c).unwrap();
    assert!(big > 0.95);
    let bigger = eps_value(&c.real(1.0), &c.real(1000.0), &c).unwrap();
    assert!(bigger > big && bigger < 1u32);
    assert!(matches!(
        eps_value(&c.real(1.0), &c.real(0.0), &c),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn eps_nondecreasing_in_x() {
    let c = ctx();
    for nu in [-0.5, 0.0, 0.5, 1.5, 3.7] {
        let mut prev = Float::new(256);
        for i in 0..40 {
            let x = c.real(10f64.powf(-3.0 + 0.125 * f64::from(i)));
            let e = eps_value(&c.real(nu), &x, &c).unwrap();
            assert!(e >= prev && e <= 1u32, "nu={nu} i={i}");
            prev = e;
        }
    }
}

#[test]
fn g_ratio_cases() {
    let c = ctx();
    assert!(close(&g_ratio(1, &c.real(1.0), &c).unwrap(), G_1_1, 1e-55));
    let g = g_ratio(3, &c.real(0.001), &c).unwrap();
    assert!(Float::with_val(256, Float::with_val(256, &g - 4000u32) / 4000u32).abs() < 0.005);
    for n in 1..=8 {
        for x in [1e-3, 1.0, 30.0] {
            assert!(g_ratio(n, &c.real(x), &c).unwrap() > 1u32);
        }
    }
    assert!(g_ratio(1, &c.real(-1.0), &c).is_err());
}

#[test]
fn finite_differences() {
    let c = ctx();
    let t = DiffTable::new(vec![c.real(1.0), c.real(2.0), c.real(4.0)]);
    let d1 = finite_diff(&t, 1).unwrap();
    assert_eq!(d1.values, vec![c.real(1.0), c.real(2.0)]);
    assert_eq!(d1.k, 1);
    let ap = DiffTable::new((0..6).map(|i| c.real(3.0 + 2.5 * f64::from(i))).collect());
    assert!(finite_diff(&ap, 2)
        .unwrap()
        .values
        .iter()
        .all(|v| v.is_zero()));
    assert!(matches!(finite_diff(&t, 3), Err(Error::Usage(_))));

    let qs = DiffTable::new(
        (1..=3)
            .map(|n| q_value(n, &c.real(1.0), &c).unwrap())
            .collect(),
    );
    let d2 = finite_diff(&qs, 2).unwrap();
    assert!(d2.values[0] > 0u32);
}

#[test]
fn pascal_differences_agree_with_iteration() {
    let c = ctx();
    let seq = DiffTable::new(
        (0..9)
            .map(|i| c.real(f64::from(i)).exp() / (i + 1) as u32)
            .collect(),
    );
    for k in 1..=6 {
        let direct = finite_diff(&seq, k).unwrap();
        let stepped = finite_diff(&finite_diff(&seq, k - 1).unwrap(), 1).unwrap();
        assert_eq!(direct.k, stepped.k);
        for (a, b) in direct.values.iter().zip(&stepped.values) {
            assert!(
                Float::with_val(256, a - b).abs()
                    <= Float::with_val(256, a.abs_ref()) * 1e-70 + 1e-70
            );
        }
    }
}

#[test]
fn cross_check_integer_and_fractional() {
    let c = ctx();
    let d = cross_check(&RemainderSpec::IntegerTail { n: 5 }, &c.real(3.0), &c).unwrap();
    assert!(d <= 1e-25);
    assert!(
        cross_check(&RemainderSpec::IntegerTail { n: 5 }, &c.real(0.0), &c)
            .unwrap()
            .is_zero()
    );
    let spec = RemainderSpec::fractional(c.real(0.5)).unwrap();
    assert!(cross_check(&spec, &c.real(10.0), &c).unwrap() <= 1e-20);
}

#[test]
fn spec_validation() {
    let c = ctx();
    assert!(RemainderSpec::fractional(c.real(-1.0)).is_err());
    let bad = RemainderSpec::Fractional { a: c.real(-2.0) };
    assert!(bad.validate().is_err());
    assert!(cross_check(&bad, &c.real(1.0), &c).is_err());
    let good = RemainderSpec::IntegerTail { n: 2 };
    let v = good.eval(&c.real(1.0), &c).unwrap();
    assert_eq!(v, r_tail(2, &c.real(1.0), &c).unwrap());
}
