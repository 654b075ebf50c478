//! Richardson extrapolation for samples taken on a geometric step sequence.

use rug::Float;

/// Diagonal of the Richardson table for samples `T(h_i)` with
/// `h_{i+1} = h_i / ratio` and an error expansion in integer powers of `h`:
/// `T[i][j] = T[i][j-1] + (T[i][j-1] - T[i-1][j-1]) / (ratio^j - 1)`.
pub(crate) fn richardson_diagonal(samples: &[Float], ratio: f64, prec: u32) -> Vec<Float> {
    let mut prev: Vec<Float> = Vec::new();
    let mut diagonal = Vec::with_capacity(samples.len());
    for (i, t) in samples.iter().enumerate() {
        let mut row = vec![Float::with_val(prec, t)];
        for j in 1..=i {
            let cur = &row[j - 1];
            let diff = Float::with_val(prec, cur - &prev[j - 1]);
            row.push(Float::with_val(
                prec,
                cur + diff / (ratio.powi(j as i32) - 1.0),
            ));
        }
        diagonal.push(row.last().expect("nonempty row").clone());
        prev = row;
    }
    diagonal
}

/// Whether the last three entries agree to within `tol` (absolute).
pub(crate) fn last_three_agree(v: &[Float], tol: f64) -> bool {
    if v.len() < 3 {
        return false;
    }
    let last = &v[v.len() - 3..];
    let hi = last.iter().map(Float::to_f64).fold(f64::MIN, f64::max);
    let lo = last.iter().map(Float::to_f64).fold(f64::MAX, f64::min);
    hi - lo <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn removes_polynomial_error() {
        let p = 128;
        // T(h) = 2 + 3h - h^2 at h = 1, 1/10, 1/100
        let s: Vec<Float> = [1.0, 0.1, 0.01]
            .iter()
            .map(|&h| Float::with_val(p, 2.0 + 3.0 * h - h * h))
            .collect();
        let d = richardson_diagonal(&s, 10.0, p);
        assert!((d[2].to_f64() - 2.0).abs() < 1e-12);
        assert!(!last_three_agree(&s, 1e-6));
        assert!(last_three_agree(
            &[d[2].clone(), d[2].clone(), d[2].clone()],
            0.0
        ));
    }
}
