//! Largest singular values of dense real and complex matrices.

use alloc::vec;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Float;

/// Above this size the full SVD is replaced by power iteration on `AᴴA`.
pub const SVD_LIMIT: usize = 1024;

pub fn largest_singular_value(a: &DMatrix<f64>) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    if a.nrows().max(a.ncols()) <= SVD_LIMIT {
        a.singular_values().max()
    } else {
        let c = a.map(|v| Complex64::new(v, 0.0));
        power_iteration(&c, 1e-13, 5000)
    }
}

pub fn largest_singular_value_complex(a: &DMatrix<Complex64>) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    if a.nrows().max(a.ncols()) <= SVD_LIMIT {
        a.clone().singular_values().max()
    } else {
        power_iteration(a, 1e-13, 5000)
    }
}

/// Power iteration on `AᴴA` from a deterministic, non-degenerate start vector.
pub fn power_iteration(a: &DMatrix<Complex64>, tol: f64, max_iter: usize) -> f64 {
    let n = a.ncols();
    let mut v: Vec<Complex64> = (0..n)
        .map(|i| {
            let t = i as f64 + 1.0;
            Complex64::new(Float::sin(t * 0.7548776662), Float::cos(t * 0.5698402910))
        })
        .collect();
    normalize(&mut v);
    let mut sigma = 0.0;
    let mut w = vec![Complex64::new(0.0, 0.0); a.nrows()];
    for _ in 0..max_iter {
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = (0..n).map(|j| a[(i, j)] * v[j]).sum();
        }
        let mut u: Vec<Complex64> = (0..n)
            .map(|j| (0..a.nrows()).map(|i| a[(i, j)].conj() * w[i]).sum())
            .collect();
        let s2 = Float::sqrt(u.iter().map(|z| z.norm_sqr()).sum::<f64>());
        let next = Float::sqrt(s2);
        if s2 == 0.0 {
            return 0.0;
        }
        for z in u.iter_mut() {
            *z /= s2;
        }
        v = u;
        if Float::abs(next - sigma) <= tol * next {
            return next;
        }
        sigma = next;
    }
    sigma
}

fn normalize(v: &mut [Complex64]) {
    let s = Float::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    for z in v.iter_mut() {
        *z /= s;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singular_value_of_rank_one() {
        let u = DMatrix::from_column_slice(3, 1, &[1.0, 2.0, 2.0]);
        let v = DMatrix::from_column_slice(1, 2, &[3.0, 4.0]);
        let a = u * v;
        assert!((largest_singular_value(&a) - 15.0).abs() < 1e-12);
    }

    #[test]
    fn power_iteration_agrees_with_svd() {
        let a = DMatrix::from_fn(12, 12, |i, j| {
            Complex64::new(
                1.0 / (1.0 + i as f64 + j as f64),
                (i as f64 - j as f64) * 0.01,
            )
        });
        let s = largest_singular_value_complex(&a);
        let p = power_iteration(&a, 1e-14, 10_000);
        assert!((s - p).abs() < 1e-10, "{s} vs {p}");
    }
}
