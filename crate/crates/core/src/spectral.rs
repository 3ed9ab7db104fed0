use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_traits::Float;

use crate::error::Result;
use crate::harmonics::{self, HarmonicIndex};

/// Finite section of an operator on the harmonic basis of degree ≤ `k_max`.
///
/// `matrix[(β, α)] = ⟨Op Y_α, Y_β⟩`; `blocks[k]` is the half-open range of
/// basis positions carrying degree `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralOperator {
    pub n: usize,
    pub k_max: u32,
    pub basis: Vec<HarmonicIndex>,
    pub blocks: Vec<(usize, usize)>,
    pub matrix: DMatrix<f64>,
}

impl SpectralOperator {
    pub fn zeros(n: usize, k_max: u32) -> Result<Self> {
        let basis = harmonics::basis(n, k_max)?;
        let mut blocks = Vec::with_capacity(k_max as usize + 1);
        let mut start = 0;
        for k in 0..=k_max {
            let end = start + harmonics::degree_multiplicity(n, k);
            blocks.push((start, end));
            start = end;
        }
        let len = basis.len();
        Ok(SpectralOperator {
            n,
            k_max,
            basis,
            blocks,
            matrix: DMatrix::zeros(len, len),
        })
    }

    /// Diagonal operator acting as `f(k)` on degree `k`.
    pub fn from_degree_fn(n: usize, k_max: u32, mut f: impl FnMut(u32) -> f64) -> Result<Self> {
        let mut op = Self::zeros(n, k_max)?;
        for (k, &(s, e)) in op.blocks.iter().enumerate() {
            let v = f(k as u32);
            for i in s..e {
                op.matrix[(i, i)] = v;
            }
        }
        Ok(op)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Laplace eigenvalue of each basis vector.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.basis
            .iter()
            .map(|idx| harmonics::laplace_eigenvalue(*idx))
            .collect()
    }

    pub fn with_matrix(&self, matrix: DMatrix<f64>) -> Self {
        SpectralOperator {
            matrix,
            ..self.clone()
        }
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.matrix)
    }

    pub fn asymmetry(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.transpose()))
    }

    /// Largest entry between different degrees.
    pub fn off_block_max(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                if a.k != b.k {
                    worst = worst.max(Float::abs(self.matrix[(i, j)]));
                }
            }
        }
        worst
    }

    /// Max deviation of each diagonal block from a multiple of the identity.
    pub fn block_scalar_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for &(s, e) in &self.blocks {
            let c = self.matrix[(s, s)];
            for i in s..e {
                for j in s..e {
                    let target = if i == j { c } else { 0.0 };
                    worst = worst.max(Float::abs(self.matrix[(i, j)] - target));
                }
            }
        }
        worst
    }

    /// Value on the diagonal of each degree block.
    pub fn degree_values(&self) -> Vec<f64> {
        self.blocks
            .iter()
            .map(|&(s, _)| self.matrix[(s, s)])
            .collect()
    }
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, v| Float::max(a, Float::abs(*v)))
}

pub fn commutator(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a * b - b * a
}
