//! Real L²-orthonormal spherical harmonics on S¹ and S².
//!
//! Order labels: on S² `m ∈ -k..=k`, with `m > 0` the `√2 cos(mφ)` member and
//! `m < 0` the `√2 sin(|m|φ)` member. On S¹ the degree-`k ≥ 1` pair is
//! `m = k` (cosine) and `m = -k` (sine); degree 0 has the single label `m = 0`.
//! Bases are ordered degree-major, then ascending `m`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};

const SPHERE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HarmonicIndex {
    pub n: usize,
    pub k: u32,
    pub m: i32,
}

impl HarmonicIndex {
    pub fn new(n: usize, k: u32, m: i32) -> Result<Self> {
        let idx = HarmonicIndex { n, k, m };
        idx.validate()?;
        Ok(idx)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.k as i32;
        let ok = match self.n {
            2 => (k == 0 && self.m == 0) || (k > 0 && self.m.abs() == k),
            3 => self.m.abs() <= k,
            n => return Err(Error::UnsupportedDimension(n)),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                n: self.n,
                k: self.k,
                m: self.m,
            })
        }
    }

    /// Position of this index in the degree-major basis.
    pub fn position(&self) -> usize {
        let k = self.k as usize;
        match self.n {
            2 if k == 0 => 0,
            2 => 2 * k - 1 + usize::from(self.m > 0),
            _ => k * k + (self.m + self.k as i32) as usize,
        }
    }
}

/// Eigenvalue of the positive Laplacian on S^{n-1} for degree `k`.
pub fn degree_eigenvalue(n: usize, k: u32) -> f64 {
    let k = k as f64;
    k * (k + n as f64 - 2.0)
}

pub fn laplace_eigenvalue(idx: HarmonicIndex) -> f64 {
    degree_eigenvalue(idx.n, idx.k)
}

/// Number of basis functions of degree exactly `k`.
pub fn degree_multiplicity(n: usize, k: u32) -> usize {
    match (n, k) {
        (2, 0) => 1,
        (2, _) => 2,
        _ => 2 * k as usize + 1,
    }
}

pub fn basis_len(n: usize, k_max: u32) -> usize {
    (0..=k_max).map(|k| degree_multiplicity(n, k)).sum()
}

pub fn basis(n: usize, k_max: u32) -> Result<Vec<HarmonicIndex>> {
    let mut out = Vec::with_capacity(basis_len(n, k_max));
    for k in 0..=k_max {
        match n {
            2 if k == 0 => out.push(HarmonicIndex { n, k, m: 0 }),
            2 => {
                out.push(HarmonicIndex {
                    n,
                    k,
                    m: -(k as i32),
                });
                out.push(HarmonicIndex { n, k, m: k as i32 });
            }
            3 => {
                for m in -(k as i32)..=(k as i32) {
                    out.push(HarmonicIndex { n, k, m });
                }
            }
            _ => return Err(Error::UnsupportedDimension(n)),
        }
    }
    Ok(out)
}

fn check_on_sphere(p: &[f64]) -> Result<()> {
    let norm = Float::sqrt(p.iter().map(|c| c * c).sum::<f64>());
    if Float::abs(norm - 1.0) > SPHERE_TOL {
        return Err(Error::OffSphere { norm });
    }
    Ok(())
}

pub fn eval_basis(idx: HarmonicIndex, p: &[f64]) -> Result<f64> {
    idx.validate()?;
    if p.len() != idx.n {
        return Err(Error::invalid("point dimension does not match the index"));
    }
    check_on_sphere(p)?;
    let all = eval_all_unchecked(idx.n, idx.k, p);
    Ok(all[idx.position()])
}

/// All basis values up to degree `k_max` at a unit vector, in basis order.
pub fn eval_all(n: usize, k_max: u32, p: &[f64]) -> Result<Vec<f64>> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if p.len() != n {
        return Err(Error::invalid("point dimension does not match n"));
    }
    check_on_sphere(p)?;
    Ok(eval_all_unchecked(n, k_max, p))
}

/// Like [`eval_all`] without the unit-norm check; the direction is taken as
/// `p / |p|` (and an arbitrary direction at the origin).
pub fn eval_all_unchecked(n: usize, k_max: u32, p: &[f64]) -> Vec<f64> {
    let kk = k_max as usize;
    let mut out = vec![0.0; basis_len(n, k_max)];
    let rho = Float::hypot(p[0], p[1]);
    let (cphi, sphi) = if rho > 0.0 {
        (p[0] / rho, p[1] / rho)
    } else {
        (1.0, 0.0)
    };
    // cos(mφ), sin(mφ) by angle addition.
    let mut cm = vec![1.0; kk + 1];
    let mut sm = vec![0.0; kk + 1];
    for m in 1..=kk {
        cm[m] = cm[m - 1] * cphi - sm[m - 1] * sphi;
        sm[m] = sm[m - 1] * cphi + cm[m - 1] * sphi;
    }
    if n == 2 {
        out[0] = 1.0 / Float::sqrt(2.0 * PI);
        let c = 1.0 / Float::sqrt(PI);
        for k in 1..=kk {
            out[2 * k - 1] = c * sm[k];
            out[2 * k] = c * cm[k];
        }
        return out;
    }
    let r = Float::sqrt(p.iter().map(|c| c * c).sum::<f64>());
    let (ct, st) = if r > 0.0 {
        (p[2] / r, Float::hypot(p[0], p[1]) / r)
    } else {
        (1.0, 0.0)
    };
    let q = normalized_legendre(kk, ct, st);
    let s2 = Float::sqrt(2.0);
    for k in 0..=kk {
        let base = k * k + k;
        out[base] = q[k][0];
        for m in 1..=k {
            out[base + m] = s2 * q[k][m] * cm[m];
            out[base - m] = s2 * q[k][m] * sm[m];
        }
    }
    out
}

/// `q[l][m]` = orthonormal associated Legendre function with the 1/√(2π)
/// azimuthal factor folded in, so that `q[l][0]` is the zonal harmonic.
fn normalized_legendre(l_max: usize, ct: f64, st: f64) -> Vec<Vec<f64>> {
    let mut q: Vec<Vec<f64>> = (0..=l_max).map(|l| vec![0.0; l + 1]).collect();
    q[0][0] = 1.0 / Float::sqrt(4.0 * PI);
    for m in 1..=l_max {
        let mf = m as f64;
        q[m][m] = Float::sqrt((2.0 * mf + 1.0) / (2.0 * mf)) * st * q[m - 1][m - 1];
    }
    for m in 0..l_max {
        q[m + 1][m] = Float::sqrt(2.0 * m as f64 + 3.0) * ct * q[m][m];
    }
    for m in 0..=l_max {
        let mf = m as f64;
        for l in (m + 2)..=l_max {
            let lf = l as f64;
            let a = Float::sqrt((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf));
            let l1 = lf - 1.0;
            let b = Float::sqrt((l1 * l1 - mf * mf) / (4.0 * l1 * l1 - 1.0));
            q[l][m] = a * (ct * q[l - 1][m] - b * q[l - 2][m]);
        }
    }
    q
}

/// Solid harmonic `|x|^k Y(x/|x|)` for `x` in the ball.
pub fn eval_solid(idx: HarmonicIndex, x: &[f64]) -> Result<f64> {
    idx.validate()?;
    if x.len() != idx.n {
        return Err(Error::invalid("point dimension does not match the index"));
    }
    let r = Float::sqrt(x.iter().map(|c| c * c).sum::<f64>());
    if r == 0.0 {
        return Ok(if idx.k == 0 {
            eval_all_unchecked(idx.n, 0, x)[0]
        } else {
            0.0
        });
    }
    let y = eval_all_unchecked(idx.n, idx.k, x)[idx.position()];
    Ok(Float::powi(r, idx.k as i32) * y)
}

/// Basis values at every node of a sphere rule: `values[node][basis position]`.
pub fn table(n: usize, k_max: u32, nodes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    nodes
        .iter()
        .map(|p| eval_all_unchecked(n, k_max, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_counts_and_positions() {
        for n in [2, 3] {
            let b = basis(n, 5).unwrap();
            assert_eq!(b.len(), basis_len(n, 5));
            for (i, idx) in b.iter().enumerate() {
                assert_eq!(idx.position(), i);
                idx.validate().unwrap();
            }
        }
        assert_eq!(basis_len(3, 4), 25);
        assert_eq!(basis_len(2, 4), 9);
    }

    #[test]
    fn invalid_indices_rejected() {
        assert!(HarmonicIndex::new(3, 1, 2).is_err());
        assert!(HarmonicIndex::new(2, 2, 1).is_err());
        assert!(HarmonicIndex::new(2, 0, 1).is_err());
        assert_eq!(
            HarmonicIndex::new(4, 0, 0).unwrap_err(),
            Error::UnsupportedDimension(4)
        );
    }

    #[test]
    fn low_degree_closed_forms() {
        let p = [0.36, 0.48, 0.8];
        let c0 = 1.0 / (4.0 * PI).sqrt();
        assert!((eval_basis(HarmonicIndex { n: 3, k: 0, m: 0 }, &p).unwrap() - c0).abs() < 1e-15);
        let c1 = (3.0 / (4.0 * PI)).sqrt();
        let cases = [(1, p[0]), (-1, p[1]), (0, p[2])];
        for (m, coord) in cases {
            let v = eval_basis(HarmonicIndex { n: 3, k: 1, m }, &p).unwrap();
            assert!((v - c1 * coord).abs() < 1e-14, "m={m}");
        }
        let t: f64 = 0.7;
        let v = eval_basis(HarmonicIndex { n: 2, k: 1, m: 1 }, &[t.cos(), t.sin()]).unwrap();
        assert!((v - t.cos() / PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn off_sphere_point_is_rejected() {
        let err = eval_basis(HarmonicIndex { n: 3, k: 1, m: 0 }, &[0.0, 0.0, 1.1]).unwrap_err();
        assert!(matches!(err, Error::OffSphere { .. }));
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(laplace_eigenvalue(HarmonicIndex { n: 3, k: 2, m: 0 }), 6.0);
        assert_eq!(laplace_eigenvalue(HarmonicIndex { n: 2, k: 3, m: 3 }), 9.0);
        assert_eq!(laplace_eigenvalue(HarmonicIndex { n: 3, k: 0, m: 0 }), 0.0);
    }

    #[test]
    fn solid_harmonic_is_homogeneous() {
        let idx = HarmonicIndex { n: 3, k: 3, m: -2 };
        let x = [0.2, -0.1, 0.3];
        let y = [0.4, -0.2, 0.6];
        let a = eval_solid(idx, &x).unwrap();
        let b = eval_solid(idx, &y).unwrap();
        assert!((b - 8.0 * a).abs() < 1e-14);
        assert_eq!(eval_solid(idx, &[0.0, 0.0, 0.0]).unwrap(), 0.0);
    }
}
