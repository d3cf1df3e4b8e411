// SPDX-License-Identifier: Apache-2.0

//! Small dense-vector helpers for diagonally weighted inner products.

/// `<x, y>_W = sum_i w_i x_i y_i`.
#[inline]
pub fn wdot(x: &[f64], y: &[f64], w: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    debug_assert_eq!(x.len(), w.len());
    x.iter()
        .zip(y)
        .zip(w)
        .map(|((a, b), c)| a * b * c)
        .sum()
}

/// `||x||_W^2`.
#[inline]
pub fn wnorm_sq(x: &[f64], w: &[f64]) -> f64 {
    x.iter().zip(w).map(|(a, c)| a * a * c).sum()
}

/// `||x - y||_W^2`.
#[inline]
pub fn wdist_sq(x: &[f64], y: &[f64], w: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .zip(w)
        .map(|((a, b), c)| {
            let d = a - b;
            d * d * c
        })
        .sum()
}

#[inline]
pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Indices of `x` sorted by descending value, ties broken by ascending index.
pub fn argsort_desc(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| x[j].total_cmp(&x[i]).then(i.cmp(&j)));
    order
}

/// Gathers `x[idx[k]]` for every `k`.
pub fn gather(x: &[f64], idx: &[usize]) -> Vec<f64> {
    idx.iter().map(|&i| x[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argsort_breaks_ties_by_index() {
        assert_eq!(argsort_desc(&[1.0, 3.0, 1.0, 3.0]), vec![1, 3, 0, 2]);
    }

    #[test]
    fn weighted_products() {
        let w = [2.0, 0.5];
        assert_eq!(wdot(&[1.0, 2.0], &[3.0, 4.0], &w), 2.0 * 3.0 + 0.5 * 8.0);
        assert_eq!(wnorm_sq(&[1.0, 2.0], &w), 4.0);
        assert_eq!(wdist_sq(&[1.0, 2.0], &[0.0, 0.0], &w), 4.0);
    }
}
