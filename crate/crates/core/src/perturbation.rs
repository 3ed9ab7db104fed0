//! Linearized DtN matrix elements and the diagnostics built on them.
//!
//! For `q_t = t q' + O(t²)` Green's formula gives
//! `⟨Λ' f, g⟩ = ∫_B q' u v` with `u`, `v` the harmonic extensions of `f`, `g`.
//! On the harmonic basis the extensions are the solid harmonics `r^k Y`, so no
//! interior solve is needed.

use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball_potential::BallPotential;
use crate::error::{Error, Result};
use crate::harmonics::{self, HarmonicIndex};
use crate::linalg::largest_singular_value;
use crate::potential::{CubicSpline, RadialPotential};
use crate::quadrature::{level_for_exactness, BallRule, QuadratureRule};
use crate::spectral::{max_abs, SpectralOperator};

/// Shift under rule refinement above which a matrix is reported unconverged.
pub const CONVERGENCE_TOL: f64 = 1e-8;
/// Extra quadrature levels used by the refinement check.
pub const REFINE_STEP: usize = 4;
/// Starting radial node count for potentials that are not polynomials.
pub const SMOOTH_RADIAL_POINTS: usize = 64;
/// Cap for the adaptive radial search.
pub const MAX_RADIAL_POINTS: usize = 1024;

/// `M[β][α] = ∫_B q r^{k_α + k_β} Y_α Y_β dV`.
pub fn perturbative_dtn_matrix(
    q: &BallPotential,
    n: usize,
    k_max: u32,
    rule: &BallRule,
) -> Result<SpectralOperator> {
    if rule.n != n {
        return Err(Error::invalid("quadrature rule dimension does not match n"));
    }
    let mut op = SpectralOperator::zeros(n, k_max)?;
    let dim = op.dim();
    let ys = harmonics::table(n, k_max, &rule.sphere.nodes);
    let ns = rule.sphere.len();
    let degrees: Vec<i32> = op.basis.iter().map(|b| b.k as i32).collect();
    let mut acc = DMatrix::<f64>::zeros(dim, dim);
    let mut x = alloc::vec![0.0; n];
    for (r, wr) in rule.radii.iter().zip(&rule.radial_weights) {
        let scale: Vec<f64> = degrees.iter().map(|k| Float::powi(*r, *k)).collect();
        let v = DMatrix::from_fn(ns, dim, |i, a| ys[i][a] * scale[a]);
        let mut wv = v.clone();
        for (i, (p, wp)) in rule
            .sphere
            .nodes
            .iter()
            .zip(&rule.sphere.weights)
            .enumerate()
        {
            for (xc, pc) in x.iter_mut().zip(p) {
                *xc = pc * r;
            }
            let w = wr * wp * q.eval(&x);
            wv.row_mut(i).scale_mut(w);
        }
        acc.gemm_tr(1.0, &v, &wv, 1.0);
    }
    op.matrix = acc;
    Ok(op)
}

/// Sphere level adequate for `q` at cutoff `k_max`.
///
/// On each sphere `q` is a polynomial of degree `angular_degree`, so the
/// angular part is integrated exactly. Only the radial direction needs
/// refinement for non-polynomial profiles.
pub fn default_level(q: &BallPotential, k_max: u32) -> usize {
    match q.polynomial_degree() {
        Some(d) => level_for_exactness(2 * k_max as usize + d),
        None => level_for_exactness(2 * k_max as usize + q.angular_degree()),
    }
}

/// Radial Gauss nodes to start from at sphere level `level`.
pub fn default_radial_points(q: &BallPotential, level: usize) -> usize {
    match q.polynomial_degree() {
        Some(_) => level + 2,
        None => SMOOTH_RADIAL_POINTS.max(level + 2),
    }
}

#[derive(Debug, Clone)]
pub struct CheckedMatrix {
    pub op: SpectralOperator,
    pub level: usize,
    pub radial_points: usize,
    /// Max entry change against the rule with `level + REFINE_STEP` and
    /// `3/2` as many radial nodes.
    pub refinement_shift: f64,
}

impl CheckedMatrix {
    pub fn converged(&self) -> bool {
        self.refinement_shift <= CONVERGENCE_TOL
    }
}

fn refined_points(m: usize) -> usize {
    (3 * m).div_ceil(2)
}

/// Assemble on one rule and again on a refined rule to measure quadrature error.
pub fn perturbative_dtn_checked(
    q: &BallPotential,
    n: usize,
    k_max: u32,
    level: usize,
    radial_points: usize,
) -> Result<CheckedMatrix> {
    let rule = BallRule::with_radial_points(n, level, radial_points)?;
    let op = perturbative_dtn_matrix(q, n, k_max, &rule)?;
    let fine_rule =
        BallRule::with_radial_points(n, level + REFINE_STEP, refined_points(radial_points))?;
    let fine = perturbative_dtn_matrix(q, n, k_max, &fine_rule)?;
    let refinement_shift = max_abs(&(&op.matrix - &fine.matrix));
    Ok(CheckedMatrix {
        op,
        level: rule.level,
        radial_points,
        refinement_shift,
    })
}

/// Grow the radial node count until the refinement check passes.
///
/// Returns the last attempt when `MAX_RADIAL_POINTS` is reached unconverged.
pub fn perturbative_dtn_adaptive(
    q: &BallPotential,
    n: usize,
    k_max: u32,
    level: usize,
) -> Result<CheckedMatrix> {
    let mut m = default_radial_points(q, level);
    loop {
        let checked = perturbative_dtn_checked(q, n, k_max, level, m)?;
        if checked.converged() || m >= MAX_RADIAL_POINTS {
            return Ok(checked);
        }
        m = refined_points(m).min(MAX_RADIAL_POINTS);
    }
}

#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub m: SpectralOperator,
    /// `C[β][α] = (λ_α - λ_β) M[β][α]`: the section of `[Λ', Δ]`.
    pub c: DMatrix<f64>,
    /// Operator norm of `C` from H¹ to L², i.e. `σ_max(C (1+Δ)^{-1/2})`.
    pub h1_l2_norm: f64,
    pub max_entry: f64,
}

pub fn commutator_report(m: &SpectralOperator) -> CommutatorReport {
    let lam = m.eigenvalues();
    let dim = m.dim();
    let c = DMatrix::from_fn(dim, dim, |b, a| (lam[a] - lam[b]) * m.matrix[(b, a)]);
    let scaled = DMatrix::from_fn(dim, dim, |b, a| c[(b, a)] / Float::sqrt(1.0 + lam[a]));
    CommutatorReport {
        m: m.clone(),
        h1_l2_norm: largest_singular_value(&scaled),
        max_entry: max_abs(&c),
        c,
    }
}

/// Spherical average of `q` on the sphere of radius `r`.
pub fn spherical_average(q: &BallPotential, sphere: &QuadratureRule, r: f64) -> f64 {
    let total = sphere.total_weight();
    let mut x = alloc::vec![0.0; sphere.n];
    let s: f64 = sphere
        .nodes
        .iter()
        .zip(&sphere.weights)
        .map(|(p, w)| {
            for (xc, pc) in x.iter_mut().zip(p) {
                *xc = pc * r;
            }
            w * q.eval(&x)
        })
        .sum();
    s / total
}

/// Radial projection `Pq`, sampled at `samples` equispaced radii and splined.
///
/// The Haar average over SO(n) of `q ∘ R` at `x` depends only on `|x|` and
/// equals the spherical mean there, which is what is computed.
pub fn radial_projection(
    q: &BallPotential,
    sphere: &QuadratureRule,
    samples: usize,
) -> Result<RadialPotential> {
    if samples < 2 {
        return Err(Error::invalid(
            "radial projection needs at least two samples",
        ));
    }
    let r: Vec<f64> = (0..samples)
        .map(|i| i as f64 / (samples - 1) as f64)
        .collect();
    let v: Vec<f64> = r.iter().map(|t| spherical_average(q, sphere, *t)).collect();
    Ok(RadialPotential::Table(
        CubicSpline::natural(r, v).map_err(Error::InvalidArgument)?,
    ))
}

/// `‖q - Pq‖²_{L²(B)}`, with `Pq` taken exactly at each quadrature radius.
pub fn radial_deficit_sq(q: &BallPotential, rule: &BallRule) -> f64 {
    let mut x = alloc::vec![0.0; rule.n];
    let mut total = 0.0;
    for (r, wr) in rule.radii.iter().zip(&rule.radial_weights) {
        let mean = spherical_average(q, &rule.sphere, *r);
        for (p, wp) in rule.sphere.nodes.iter().zip(&rule.sphere.weights) {
            for (xc, pc) in x.iter_mut().zip(p) {
                *xc = pc * r;
            }
            let d = q.eval(&x) - mean;
            total += wr * wp * d * d;
        }
    }
    total
}

/// Haar-distributed rotation of ℝⁿ as a row-major n×n matrix.
pub fn haar_rotation(n: usize, rng: &mut impl Rng) -> Result<Vec<f64>> {
    use core::f64::consts::PI;
    match n {
        2 => {
            let t = rng.gen::<f64>() * 2.0 * PI;
            let (s, c) = (Float::sin(t), Float::cos(t));
            Ok(alloc::vec![c, -s, s, c])
        }
        3 => {
            // Uniform unit quaternion (Shoemake).
            let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
            let a = Float::sqrt(1.0 - u1);
            let b = Float::sqrt(u1);
            let (x, y) = (a * Float::sin(2.0 * PI * u2), a * Float::cos(2.0 * PI * u2));
            let (z, w) = (b * Float::sin(2.0 * PI * u3), b * Float::cos(2.0 * PI * u3));
            Ok(alloc::vec![
                1.0 - 2.0 * (y * y + z * z),
                2.0 * (x * y - z * w),
                2.0 * (x * z + y * w),
                2.0 * (x * y + z * w),
                1.0 - 2.0 * (x * x + z * z),
                2.0 * (y * z - x * w),
                2.0 * (x * z - y * w),
                2.0 * (y * z + x * w),
                1.0 - 2.0 * (x * x + y * y),
            ])
        }
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationReport {
    pub samples: usize,
    /// Sample mean of `‖q - q∘R‖²`.
    pub mean: f64,
    pub std_err: f64,
    /// `2‖q - Pq‖²`.
    pub target: f64,
    pub residual: f64,
}

pub fn rotation_identity_residual(
    q: &BallPotential,
    rule: &BallRule,
    samples: usize,
    seed: u64,
) -> Result<RotationReport> {
    if samples == 0 {
        return Err(Error::invalid("need at least one rotation sample"));
    }
    let n = rule.n;
    let flat = rule.to_rule();
    let base: Vec<f64> = flat.nodes.iter().map(|p| q.eval(p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut y = alloc::vec![0.0; n];
    for _ in 0..samples {
        let rot = haar_rotation(n, &mut rng)?;
        let mut d2 = 0.0;
        for ((p, w), q0) in flat.nodes.iter().zip(&flat.weights).zip(&base) {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = (0..n).map(|j| rot[i * n + j] * p[j]).sum();
            }
            let d = q0 - q.eval(&y);
            d2 += w * d * d;
        }
        sum += d2;
        sum_sq += d2 * d2;
    }
    let s = samples as f64;
    let mean = sum / s;
    let var = if samples > 1 {
        Float::max(sum_sq / s - mean * mean, 0.0) * s / (s - 1.0)
    } else {
        0.0
    };
    let target = 2.0 * radial_deficit_sq(q, rule);
    Ok(RotationReport {
        samples,
        mean,
        std_err: Float::sqrt(var / s),
        target,
        residual: mean - target,
    })
}

/// `∫_B q u v` for the solid harmonics `u = r^k Y_u`, `v = r^l Y_v`.
pub fn harmonic_moment(
    q: &BallPotential,
    u: HarmonicIndex,
    v: HarmonicIndex,
    rule: &BallRule,
) -> Result<f64> {
    u.validate()?;
    v.validate()?;
    if u.n != rule.n || v.n != rule.n {
        return Err(Error::invalid("harmonic dimension does not match the rule"));
    }
    let kmax = u.k.max(v.k);
    let ys = harmonics::table(rule.n, kmax, &rule.sphere.nodes);
    let (iu, iv) = (u.position(), v.position());
    let mut x = alloc::vec![0.0; rule.n];
    let mut total = 0.0;
    for (r, wr) in rule.radii.iter().zip(&rule.radial_weights) {
        let rr = Float::powi(*r, (u.k + v.k) as i32);
        for ((p, wp), y) in rule.sphere.nodes.iter().zip(&rule.sphere.weights).zip(&ys) {
            for (xc, pc) in x.iter_mut().zip(p) {
                *xc = pc * r;
            }
            total += wr * wp * rr * y[iu] * y[iv] * q.eval(&x);
        }
    }
    Ok(total)
}
