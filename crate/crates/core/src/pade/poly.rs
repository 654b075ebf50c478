//! Dense polynomials with exact rational coefficients, ascending powers.

use rug::Rational;

pub(crate) fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| *c != 0)
}

pub(crate) fn eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub(crate) fn derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![Rational::new()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| Rational::from(c * k as u32))
        .collect()
}

/// Remainder of `a` divided by `b` (`b` nonzero).
pub(crate) fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut r: Vec<Rational> = a.to_vec();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = Rational::from(&r[dr] / lead);
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= Rational::from(&factor * c);
        }
        r[dr] = Rational::new();
    }
    trim(r)
}

/// Sturm chain `p, p', -rem(p, p'), …`.
pub(crate) fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![trim(p.to_vec())];
    let d = trim(derivative(p));
    if degree(&d).is_none() {
        return chain;
    }
    chain.push(d);
    loop {
        let k = chain.len();
        let r = rem(&chain[k - 2], &chain[k - 1]);
        if degree(&r).is_none() && r[0] == 0 {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
        if degree(chain.last().expect("nonempty")) == Some(0) {
            break;
        }
    }
    chain
}

fn sign_changes(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last = 0i32;
    for p in chain {
        let s = eval(p, x).cmp0() as i32;
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots in `(a, b]`.
pub(crate) fn count_roots(chain: &[Vec<Rational>], a: &Rational, b: &Rational) -> usize {
    sign_changes(chain, a).saturating_sub(sign_changes(chain, b))
}

/// Cauchy bound: every root has modulus below the returned value.
pub(crate) fn root_bound(p: &[Rational]) -> Rational {
    let d = degree(p).expect("nonzero polynomial");
    let lead = Rational::from(p[d].abs_ref());
    let mut m = Rational::new();
    for c in &p[..d] {
        let r = Rational::from(c.abs_ref()) / &lead;
        if r > m {
            m = r;
        }
    }
    m + 1u32
}

/// Isolating intervals of the real roots in `(lo, hi]`, each narrowed by
/// bisection to width at most `width`.
pub(crate) fn isolate_roots(
    chain: &[Vec<Rational>],
    lo: &Rational,
    hi: &Rational,
    width: &Rational,
) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = count_roots(chain, &a, &b);
        if count == 0 {
            continue;
        }
        let span = Rational::from(&b - &a);
        if count == 1 && span <= *width {
            out.push((a, b));
            continue;
        }
        let mid = Rational::from(&a + &b) / 2u32;
        stack.push((mid.clone(), b));
        stack.push((a, mid));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn counts_roots_of_cubic() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let p = vec![r(6), r(-7), r(0), r(1)];
        let chain = sturm_chain(&p);
        assert_eq!(count_roots(&chain, &r(-10), &r(10)), 3);
        assert_eq!(count_roots(&chain, &r(0), &r(10)), 2);
        assert_eq!(count_roots(&chain, &Rational::from((3, 2)), &r(10)), 1);
        let roots = isolate_roots(&chain, &r(-10), &r(10), &Rational::from((1, 1024)));
        assert_eq!(roots.len(), 3);
        assert!(roots[0].0 < -3 && roots[0].1 >= -3);
        assert!(roots[2].0 < 2 && roots[2].1 >= 2);
    }

    #[test]
    fn bound_and_remainder() {
        let p = vec![r(6), r(-7), r(0), r(1)];
        assert_eq!(root_bound(&p), r(8));
        let q = vec![r(-1), r(1)];
        assert_eq!(rem(&p, &q), vec![r(0)]);
        assert_eq!(eval(&p, &r(2)), 0);
    }
}
