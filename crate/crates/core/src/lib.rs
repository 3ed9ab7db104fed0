//! Numerical core for studying Dirichlet-to-Neumann (DtN) operators.
//!
//! Everything here is pure computation over `alloc`; file formats, the CLI and
//! anything touching the filesystem live in the companion `dtnlab` crate.
//!
//! Module map:
//!
//! - [`harmonics`], [`quadrature`]: real spherical harmonics on S¹/S² and
//!   product quadrature on spheres and balls.
//! - [`ball_dtn`], [`spectral`]: the exact DtN map of the unit ball and the
//!   degree-blocked operator container shared by every spectral study.
//! - [`radial`], [`potential`]: Schrödinger DtN maps for radial potentials via
//!   per-degree ODE solves.
//! - [`perturbation`], [`ball_potential`]: linearized DtN matrix elements,
//!   commutator diagnostics, the radial projector and rotation averages.
//! - [`geometry`]: surfaces of revolution, curvature gradients, Topping's
//!   inequality and capped Delaunay surfaces.
//! - [`gohberg`]: quantization of degree-0 symbols on the circle and norm
//!   lower bounds by the symbol sup-norm.
//!
//! Sign convention: the Laplacian is positive, `Δ = -(∂₁² + … + ∂ₙ²)`.

#![no_std]

extern crate alloc;

pub mod ball_dtn;
pub mod ball_potential;
pub mod error;
pub mod geometry;
pub mod gohberg;
pub mod harmonics;
pub mod jet;
pub mod linalg;
pub mod ode;
pub mod perturbation;
pub mod potential;
pub mod quadrature;
pub mod radial;
pub mod smooth;
pub mod spectral;

mod parse;

pub use error::{Error, Result};
pub use harmonics::HarmonicIndex;
pub use quadrature::{BallRule, Domain, QuadratureRule};
pub use spectral::SpectralOperator;

/// Version string embedded in every exported artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
