//! DtN map and boundary Laplacian of the unit ball.
//!
//! The harmonic extension of a degree-`k` harmonic is `r^k Y`, whose radial
//! derivative at `r = 1` is `k Y`, so both operators are diagonal.

use crate::error::Result;
use crate::harmonics::degree_eigenvalue;
use crate::spectral::{max_abs, SpectralOperator};

pub fn dtn_ball(n: usize, k_max: u32) -> Result<SpectralOperator> {
    SpectralOperator::from_degree_fn(n, k_max, |k| k as f64)
}

pub fn boundary_laplacian(n: usize, k_max: u32) -> Result<SpectralOperator> {
    SpectralOperator::from_degree_fn(n, k_max, |k| degree_eigenvalue(n, k))
}

/// Max-norm of `Λ² + (n-2)Λ - Δ` for a given DtN section.
pub fn identity_residual(lambda: &SpectralOperator) -> Result<f64> {
    let delta = boundary_laplacian(lambda.n, lambda.k_max)?;
    let l = &lambda.matrix;
    let r = l * l + l * (lambda.n as f64 - 2.0) - &delta.matrix;
    Ok(max_abs(&r))
}

pub fn ball_identity_residual(n: usize, k_max: u32) -> Result<f64> {
    identity_residual(&dtn_ball(n, k_max)?)
}
