use super::*;
use crate::remainders::r_tail;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128).unwrap()
}

fn q(a: i64, b: i64) -> Rational {
    Rational::from((a, b))
}

fn close(a: &Real, b: &Real, tol: f64) -> bool {
    let d = Float::with_val(a.prec(), a - b).abs();
    let s = Float::with_val(a.prec(), a.abs_ref()).max(&Float::with_val(a.prec(), b.abs_ref()));
    d <= s * tol || a == b
}

#[test]
fn low_order_approximants() {
    let a = pade_exp(1, 1);
    assert_eq!(a.num_coeffs, vec![q(1, 1), q(1, 2)]);
    assert_eq!(a.den_coeffs, vec![q(1, 1), q(-1, 2)]);
    let a = pade_exp(0, 1);
    assert_eq!(a.num_coeffs, vec![q(1, 1)]);
    assert_eq!(a.den_coeffs, vec![q(1, 1), q(-1, 1)]);
    // (x^2 + 4x + 6)/(6 - 2x)
    let a = pade_exp(2, 1);
    assert_eq!(a.num_coeffs, vec![q(1, 1), q(2, 3), q(1, 6)]);
    assert_eq!(a.den_coeffs, vec![q(1, 1), q(-1, 3)]);
}

#[test]
fn order_condition_is_exact() {
    for n in 0..=10 {
        for m in 0..=10 - n {
            let a = pade_exp(n, m);
            assert!(a.order_condition_holds(), "[{n}/{m}]");
            assert_eq!(a.den_coeffs[0], 1);
            assert_eq!(a.num_coeffs.len(), n as usize + 1);
            assert_eq!(a.den_coeffs.len(), m as usize + 1);
            // the next coefficient differs
            let next = a.taylor_coeffs((n + m + 2) as usize);
            assert_ne!(
                next[(n + m + 1) as usize],
                Rational::from((1, factorial(n + m + 1)))
            );
        }
    }
}

#[test]
fn evaluation() {
    let c = ctx();
    assert_eq!(eval_approximant(&pade_exp(1, 1), &c.int(1), &c).unwrap(), 3);
    assert_eq!(eval_approximant(&pade_exp(1, 1), &c.int(0), &c).unwrap(), 1);
    assert_eq!(
        eval_approximant(&pade_exp(0, 1), &c.real(0.5), &c).unwrap(),
        2
    );
}

#[test]
fn pole_guard() {
    let c = ctx();
    let err = eval_approximant(&pade_exp(1, 1), &c.int(2), &c).unwrap_err();
    assert!(matches!(err, Error::Pole { .. }), "{err}");
    let near = Float::with_val(128, 2u32) + Float::with_val(128, 1e-37);
    assert!(matches!(
        eval_approximant(&pade_exp(1, 1), &near, &c),
        Err(Error::Pole { .. })
    ));
    let off = Float::with_val(128, 2u32) + Float::with_val(128, 1e-20);
    assert!(eval_approximant(&pade_exp(1, 1), &off, &c).is_ok());
    // [2/2] has complex poles only
    assert!(pade_exp(2, 2).first_positive_pole(&q(1, 1 << 20)).is_none());
    let pole = pade_exp(3, 1).first_positive_pole(&q(1, 1 << 20)).unwrap();
    assert!((pole - 4u32).abs() < q(1, 1 << 19));
}

#[test]
fn taylor_partial_sums() {
    let c = ctx();
    assert_eq!(taylor_partial(0, &c.real(3.25), &c).unwrap(), 1);
    assert_eq!(taylor_partial(2, &c.int(1), &c).unwrap(), 2.5);
    for n in [0u32, 3, 7] {
        let x = c.parse("1.7").unwrap();
        let s = Float::with_val(
            128,
            taylor_partial(n, &x, &c).unwrap() + r_tail(n, &x, &c).unwrap(),
        );
        assert!(close(&s, &Float::with_val(128, x.exp_ref()), 1e-32));
    }
}

#[test]
fn aitken_matches_first_row() {
    let c = ctx();
    assert_eq!(aitken_row(1, &c.int(1), &c).unwrap(), 3);
    for n in 1..=6 {
        for x in ["0.3", "1", "2.7"] {
            let x = c.parse(x).unwrap();
            let a = aitken_row(n, &x, &c).unwrap();
            let b = eval_approximant(&pade_exp(n, 1), &x, &c).unwrap();
            assert!(close(&a, &b, 1e-30), "n={n}");
        }
    }
    let near = aitken_row(2, &c.real(1e-9), &c).unwrap();
    assert!(close(&near, &c.real(1.0 + 1e-9), 1e-15));
}

#[test]
fn aitken_degenerate_points() {
    let c = ctx();
    assert!(matches!(
        aitken_row(2, &c.int(0), &c),
        Err(Error::Degenerate { .. })
    ));
    assert!(matches!(
        aitken_row(2, &c.int(3), &c),
        Err(Error::Degenerate { .. })
    ));
    assert!(matches!(
        aitken_row(0, &c.int(1), &c),
        Err(Error::Domain { .. })
    ));
}

#[test]
fn first_row_direction_switch() {
    let c = ctx();
    for n in 0..=8u32 {
        let below = c.real(0.5 * f64::from(n + 1));
        let above = c.real(1.5 * f64::from(n + 1));
        assert!(delta_fn(n, &below) < 0 && delta_fn(n, &above) > 0);
        let e = Float::with_val(128, below.exp_ref());
        assert!(
            e < eval_approximant(&pade_exp(n, 1), &below, &c).unwrap(),
            "n={n}"
        );
        let e = Float::with_val(128, above.exp_ref());
        assert!(
            e > eval_approximant(&pade_exp(n, 1), &above, &c).unwrap(),
            "n={n}"
        );
    }
}

#[test]
fn delta_values() {
    let c = ctx();
    assert_eq!(delta_fn(0, &c.int(1)), 0);
    assert_eq!(delta_fn(3, &c.int(1)), -3);
}

#[test]
fn cesaro_means() {
    let c = ctx();
    assert_eq!(cesaro_mean(0, &c.real(4.5), &c).unwrap(), 1);
    assert_eq!(cesaro_mean(1, &c.int(1), &c).unwrap(), 1.5);
}

#[test]
fn cesaro_probe_prefers_classical_weight() {
    let c = ctx();
    for (n, x) in [(2u32, "1"), (1, "0.5"), (4, "3.2")] {
        let p = cesaro_identity_probe(n, &c.parse(x).unwrap(), &c).unwrap();
        assert_eq!(p.closes, "classical");
        assert!(
            p.classical_residual.clone().abs() < 1e-30,
            "{}",
            p.classical_residual
        );
        // the two weights coincide at x = 1
        if x != "1" {
            assert!(p.textual_residual.clone().abs() > 1e-3);
        }
    }
}
