//! Schrödinger DtN maps `Λ_q` for radial potentials.
//!
//! Separating `u = f(r) Y_k` in `(Δ + q) u = 0` gives
//! `f'' + (n-1)/r f' - k(k+n-2)/r² f = q f`. Writing `f = r^k g` removes the
//! singular term: `g'' + (2k+n-1)/r g' = q g` with `g(0) = 1`, `g'(0) = 0`.
//! A Frobenius series carries `g` off the origin, DOPRI5 carries it to `r = 1`,
//! and the DtN eigenvalue is `μ_k = f'(1)/f(1) = k + g'(1)/g(1)`.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::harmonics::degree_eigenvalue;
use crate::jet::Jet;
use crate::ode::{dopri5, Tolerance};
use crate::potential::{CubicSpline, RadialPotential};
use crate::spectral::SpectralOperator;

pub const DEFAULT_ODE_TOL: f64 = 1e-12;
pub const SERIES_RADIUS: f64 = 1e-3;
pub const SERIES_ORDER: usize = 12;

const DIRICHLET_RATIO: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct RadialSolution {
    pub n: usize,
    pub k: u32,
    pub r: Vec<f64>,
    pub f: Vec<f64>,
    pub df: Vec<f64>,
    pub mu: f64,
}

/// Power-series coefficients of `g` up to `r^SERIES_ORDER`.
fn frobenius_coeffs(q: &RadialPotential, n: usize, k: u32) -> [f64; SERIES_ORDER + 1] {
    let qt: Jet<{ SERIES_ORDER + 1 }> = q.eval_s(Jet::variable(0.0));
    let mut c = [0.0; SERIES_ORDER + 1];
    c[0] = 1.0;
    let shift = 2.0 * k as f64 + n as f64 - 2.0;
    for j in 2..=SERIES_ORDER {
        let s: f64 = (0..=j - 2).map(|i| qt.c[i] * c[j - 2 - i]).sum();
        c[j] = s / (j as f64 * (j as f64 + shift));
    }
    c
}

pub fn solve_radial_mode(
    q: &RadialPotential,
    n: usize,
    k: u32,
    tol: f64,
) -> Result<RadialSolution> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("ODE tolerance must be positive"));
    }
    let c = frobenius_coeffs(q, n, k);
    let d0 = SERIES_RADIUS;
    let g0: f64 = c.iter().rev().fold(0.0, |a, ci| a * d0 + ci);
    let dg0: f64 = (1..=SERIES_ORDER)
        .rev()
        .fold(0.0, |a, j| a * d0 + j as f64 * c[j]);
    let drift = 2.0 * k as f64 + n as f64 - 1.0;
    let traj = dopri5(
        |r, y: &[f64; 2]| [y[1], q.eval(r) * y[0] - drift / r * y[1]],
        d0,
        [g0, dg0],
        1.0,
        Tolerance::new(tol),
    )?;
    let kf = k as f64;
    let mut r = vec![0.0];
    let mut f = vec![if k == 0 { 1.0 } else { 0.0 }];
    let mut df = vec![if k == 1 { 1.0 } else { 0.0 }];
    for (t, y) in traj.t.iter().zip(&traj.y) {
        let rk = Float::powi(*t, k as i32);
        let rk1 = if k == 0 {
            0.0
        } else {
            kf * Float::powi(*t, k as i32 - 1)
        };
        r.push(*t);
        f.push(rk * y[0]);
        df.push(rk1 * y[0] + rk * y[1]);
    }
    let max = f.iter().fold(0.0, |a: f64, v| a.max(Float::abs(*v)));
    let y1 = traj.last();
    if !(Float::abs(y1[0]) >= DIRICHLET_RATIO * max) {
        return Err(Error::DirichletEigenvalue {
            boundary: Float::abs(y1[0]),
            max,
        });
    }
    Ok(RadialSolution {
        n,
        k,
        r,
        f,
        df,
        mu: kf + y1[1] / y1[0],
    })
}

/// Diagonal `Λ_q` on the harmonic basis up to degree `k_max`.
pub fn dtn_radial(q: &RadialPotential, n: usize, k_max: u32, tol: f64) -> Result<SpectralOperator> {
    let mu = degree_values(q, n, k_max, tol)?;
    SpectralOperator::from_degree_fn(n, k_max, |k| mu[k as usize])
}

pub fn degree_values(q: &RadialPotential, n: usize, k_max: u32, tol: f64) -> Result<Vec<f64>> {
    (0..=k_max)
        .map(|k| {
            solve_radial_mode(q, n, k, tol)
                .map(|s| s.mu)
                .map_err(|e| Error::at_degree(k, e))
        })
        .collect()
}

/// Pairs `(k(k+n-2), μ_k)`: the function `f` with `Λ_q = f(Δ)` on the realized spectrum.
pub fn symbol_table(
    q: &RadialPotential,
    n: usize,
    k_max: u32,
    tol: f64,
) -> Result<Vec<(f64, f64)>> {
    let mu = degree_values(q, n, k_max, tol)?;
    Ok(mu
        .iter()
        .enumerate()
        .map(|(k, m)| (degree_eigenvalue(n, k as u32), *m))
        .collect())
}

/// Root of `μ² + (n-2)μ = λ`: the ball DtN map as a function of the boundary Laplacian.
pub fn ball_symbol(lambda: f64, n: usize) -> f64 {
    let a = n as f64 - 2.0;
    0.5 * (-a + Float::sqrt(a * a + 4.0 * lambda))
}

/// Schrödinger potential of a radial conformal factor `φ`.
///
/// With `γ = e^{(n-2)φ}` and `w = √γ`, the conductivity equation becomes
/// `(Δ + q) v = 0` for `v = w u`, where `q = ∇²w / w` (standard, negative
/// Laplacian on the right). The radial Laplacian is taken by second-order
/// finite differences on a uniform grid of `points` nodes; the error is
/// `O(h²)` in the grid spacing.
pub fn conformal_potential(
    phi: &RadialPotential,
    n: usize,
    points: usize,
) -> Result<RadialPotential> {
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    if points < 5 {
        return Err(Error::invalid("conformal grid needs at least 5 points"));
    }
    let h = 1.0 / (points - 1) as f64;
    let r: Vec<f64> = (0..points).map(|i| i as f64 * h).collect();
    let e = 0.5 * (n as f64 - 2.0);
    let w: Vec<f64> = r.iter().map(|t| Float::exp(e * phi.eval(*t))).collect();
    let last = points - 1;
    let nf = n as f64;
    let q: Vec<f64> = (0..points)
        .map(|i| {
            let lap = if i == 0 {
                nf * 2.0 * (w[1] - w[0]) / (h * h)
            } else if i == last {
                let d2 = (2.0 * w[i] - 5.0 * w[i - 1] + 4.0 * w[i - 2] - w[i - 3]) / (h * h);
                let d1 = (3.0 * w[i] - 4.0 * w[i - 1] + w[i - 2]) / (2.0 * h);
                d2 + (nf - 1.0) / r[i] * d1
            } else {
                let d2 = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h);
                let d1 = (w[i + 1] - w[i - 1]) / (2.0 * h);
                d2 + (nf - 1.0) / r[i] * d1
            };
            lap / w[i]
        })
        .collect();
    let spline = CubicSpline::natural(r, q).map_err(Error::InvalidArgument)?;
    Ok(RadialPotential::Table(spline))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_potential_gives_degree() {
        let q = RadialPotential::zero();
        for n in [2, 3] {
            for k in 0..6 {
                let s = solve_radial_mode(&q, n, k, DEFAULT_ODE_TOL).unwrap();
                assert!((s.mu - k as f64).abs() < 1e-10, "n={n} k={k} mu={}", s.mu);
            }
        }
    }

    #[test]
    fn constant_potential_closed_form() {
        let s = solve_radial_mode(&RadialPotential::Const(1.0), 3, 0, DEFAULT_ODE_TOL).unwrap();
        let exact = 1.0 / 1.0f64.tanh() - 1.0;
        assert!((s.mu - exact).abs() < 1e-10);
    }

    #[test]
    fn solution_scale_does_not_matter() {
        // μ only sees the ratio f'(1)/f(1).
        let q = RadialPotential::Well { a: 2.0, p: 1.0 };
        let s = solve_radial_mode(&q, 3, 2, DEFAULT_ODE_TOL).unwrap();
        let i = s.r.len() - 1;
        let scaled = (7.0 * s.df[i]) / (7.0 * s.f[i]);
        assert!((scaled - s.mu).abs() < 1e-12 * s.mu.abs().max(1.0));
    }

    #[test]
    fn dirichlet_eigenvalue_is_an_error() {
        // sin(πr)/r solves the k=0 equation with q = -π² and vanishes at r = 1.
        let q = RadialPotential::Const(-core::f64::consts::PI * core::f64::consts::PI);
        let err = solve_radial_mode(&q, 3, 0, DEFAULT_ODE_TOL).unwrap_err();
        assert!(matches!(err, Error::DirichletEigenvalue { .. }));
        let err = dtn_radial(&q, 3, 2, DEFAULT_ODE_TOL).unwrap_err();
        assert!(matches!(err, Error::AtDegree { degree: 0, .. }));
    }

    #[test]
    fn ball_symbol_inverts_identity() {
        for n in [2, 3] {
            for k in 0..10u32 {
                let l = degree_eigenvalue(n, k);
                assert!((ball_symbol(l, n) - k as f64).abs() < 1e-12);
            }
        }
    }
}
