//! Gauss-Legendre rules and product quadrature on S^{n-1} and B^n.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Sphere,
    Ball,
}

/// Nodes and positive weights; `exactness` is the highest total polynomial
/// degree integrated exactly.
#[derive(Debug, Clone, Serialize)]
pub struct QuadratureRule {
    pub domain: Domain,
    pub n: usize,
    pub level: usize,
    pub exactness: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
pub fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..(m + 1) / 2 {
        let mut z = Float::cos(PI * (i as f64 + 0.75) / (mf + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(m, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if Float::abs(dz) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(m, z);
        if d != 0.0 {
            dp = d;
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = wi;
        w[m - 1 - i] = wi;
    }
    (x, w)
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(a: f64, b: f64, m: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(m);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|t| mid + half * t).collect(),
        w.iter().map(|v| v * half).collect(),
    )
}

fn legendre_with_derivative(m: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if m == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=m {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Smallest level whose rules are exact to degree `d`.
pub fn level_for_exactness(d: usize) -> usize {
    d.saturating_sub(1).div_ceil(2).max(1)
}

pub fn sphere_rule(n: usize, level: usize) -> Result<QuadratureRule> {
    let level = level.max(1);
    let nphi = 2 * level + 2;
    let dphi = 2.0 * PI / nphi as f64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    match n {
        2 => {
            for j in 0..nphi {
                let phi = j as f64 * dphi;
                nodes.push(vec![Float::cos(phi), Float::sin(phi)]);
                weights.push(dphi);
            }
        }
        3 => {
            let (zs, ws) = gauss_legendre(level + 1);
            for (z, wz) in zs.iter().zip(&ws) {
                let s = Float::sqrt(1.0 - z * z);
                for j in 0..nphi {
                    let phi = j as f64 * dphi;
                    nodes.push(vec![s * Float::cos(phi), s * Float::sin(phi), *z]);
                    weights.push(wz * dphi);
                }
            }
        }
        _ => return Err(Error::UnsupportedDimension(n)),
    }
    Ok(QuadratureRule {
        domain: Domain::Sphere,
        n,
        level,
        exactness: 2 * level + 1,
        nodes,
        weights,
    })
}

/// Product rule on the ball kept in factored form (radius × direction).
#[derive(Debug, Clone)]
pub struct BallRule {
    pub n: usize,
    pub level: usize,
    /// Radial nodes in (0, 1); weights include the `r^{n-1}` Jacobian.
    pub radii: Vec<f64>,
    pub radial_weights: Vec<f64>,
    pub sphere: QuadratureRule,
}

impl BallRule {
    pub fn new(n: usize, level: usize) -> Result<Self> {
        Self::with_radial_points(n, level, level + 2)
    }

    pub fn with_radial_points(n: usize, level: usize, radial_points: usize) -> Result<Self> {
        let sphere = sphere_rule(n, level)?;
        let level = sphere.level;
        let (radii, w) = gauss_legendre_on(0.0, 1.0, radial_points.max(1));
        let radial_weights = radii
            .iter()
            .zip(&w)
            .map(|(r, w)| w * Float::powi(*r, n as i32 - 1))
            .collect();
        Ok(BallRule {
            n,
            level,
            radii,
            radial_weights,
            sphere,
        })
    }

    pub fn exactness(&self) -> usize {
        2 * self.level + 1
    }

    pub fn to_rule(&self) -> QuadratureRule {
        let mut nodes = Vec::with_capacity(self.radii.len() * self.sphere.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for (r, wr) in self.radii.iter().zip(&self.radial_weights) {
            for (p, wp) in self.sphere.nodes.iter().zip(&self.sphere.weights) {
                nodes.push(p.iter().map(|c| c * r).collect());
                weights.push(wr * wp);
            }
        }
        QuadratureRule {
            domain: Domain::Ball,
            n: self.n,
            level: self.level,
            exactness: self.exactness(),
            nodes,
            weights,
        }
    }
}

pub fn quadrature(domain: Domain, n: usize, level: usize) -> Result<QuadratureRule> {
    match domain {
        Domain::Sphere => sphere_rule(n, level),
        Domain::Ball => Ok(BallRule::new(n, level)?.to_rule()),
    }
}

/// Surface measure of S^{n-1}.
pub fn sphere_area(n: usize) -> f64 {
    match n {
        2 => 2.0 * PI,
        3 => 4.0 * PI,
        _ => f64::NAN,
    }
}
