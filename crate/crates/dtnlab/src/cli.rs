//! Flags of every subcommand. The parsed structure, defaults filled in, is the
//! resolved run configuration echoed into each JSON report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "dtnlab",
    version,
    about = "Dirichlet-to-Neumann numerical laboratory"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Directory for the JSON report and any CSV/OBJ files.
    #[arg(long, global = true, env = crate::OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
    /// Also write CSV tables (needs an output directory).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Also write an OBJ mesh for surface studies (needs an output directory).
    #[arg(long, global = true)]
    pub obj: bool,
    /// Do not print the JSON report on stdout.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Check Λ² + (n−2)Λ = Δ for the unit ball.
    BallCheck(BallCheckArgs),
    /// DtN map of a radial Schrödinger potential.
    RadialDtn(RadialDtnArgs),
    /// Linearized DtN matrix and its commutator with the sphere Laplacian.
    Commutator(CommutatorArgs),
    /// Moments ∫ q u v against pairs of solid harmonics.
    Moments(MomentsArgs),
    /// Radial projection and the rotation-averaging identity.
    RadialProjection(RadialProjectionArgs),
    /// Curvature report for one surface of revolution.
    Surface(SurfaceArgs),
    /// Capped Delaunay surfaces over a range of ellipse minor axes.
    DelaunaySweep(DelaunaySweepArgs),
    /// Symbol sup-norm against operator and essential norms on the circle.
    Gohberg(GohbergArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BallCheck(_) => "ball-check",
            Command::RadialDtn(_) => "radial-dtn",
            Command::Commutator(_) => "commutator",
            Command::Moments(_) => "moments",
            Command::RadialProjection(_) => "radial-projection",
            Command::Surface(_) => "surface",
            Command::DelaunaySweep(_) => "delaunay-sweep",
            Command::Gohberg(_) => "gohberg",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BallCheckArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Highest harmonic degree.
    #[arg(long = "K", default_value_t = 20)]
    #[serde(rename = "K")]
    pub k_max: u32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RadialDtnArgs {
    /// Radial potential: const:c, well:a,p, bump:a,r0,w or tablefile:<csv>.
    #[arg(long, default_value = "const:1")]
    pub q: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long = "K", default_value_t = 10)]
    #[serde(rename = "K")]
    pub k_max: u32,
    #[arg(long, default_value_t = dtnlab_core::radial::DEFAULT_ODE_TOL)]
    pub ode_tol: f64,
    /// Read `--q` as a conformal exponent φ and use q = ∇²√γ/√γ, γ = e^{(n−2)φ}.
    #[arg(long)]
    pub conformal: bool,
    /// Grid points for the conformal conversion.
    #[arg(long, default_value_t = 4001)]
    pub conformal_points: usize,
    /// Compare (Λ_{tq} − Λ₀)/t with the linearized matrix at these t.
    #[arg(long, value_delimiter = ',')]
    pub consistency_t: Vec<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommutatorArgs {
    /// Ball potential, e.g. `radial:well:1,2` or `monomial:0,0,1 x bump:0.5,0.2`.
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long = "K", default_value_t = 6)]
    #[serde(rename = "K")]
    pub k_max: u32,
    /// Sphere quadrature level; chosen from the potential when absent.
    #[arg(long)]
    pub level: Option<usize>,
    /// Radial Gauss nodes; refined until converged when absent.
    #[arg(long)]
    pub radial_points: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentsArgs {
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Highest degree of the harmonics paired.
    #[arg(long = "K", default_value_t = 6)]
    #[serde(rename = "K")]
    pub k_max: u32,
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long)]
    pub radial_points: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RadialProjectionArgs {
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Quadrature level of the sphere and ball rules.
    #[arg(long, default_value_t = 12)]
    pub level: usize,
    /// Radii at which the projection is sampled and splined.
    #[arg(long, default_value_t = 65)]
    pub samples: usize,
    /// Haar rotations per run.
    #[arg(long, default_value_t = 400)]
    pub rotations: usize,
    /// Independent runs with seeds seed, seed+1, …
    #[arg(long, default_value_t = 1)]
    pub runs: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SurfaceArgs {
    /// sphere[:R], ellipsoid:a,c, cylinder:r,L or delaunay:eps[,center,width[,periods]].
    #[arg(long, default_value = "sphere")]
    pub surface: String,
    /// Profile samples per unit of min(scale, 1/|κ|).
    #[arg(long, default_value_t = dtnlab_core::geometry::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    /// Rings of the geodesic-distance mesh.
    #[arg(long, default_value_t = 128)]
    pub mesh_resolution: usize,
    /// Rescale to area 4π before measuring.
    #[arg(long)]
    pub normalize_area: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DelaunaySweepArgs {
    /// Ellipse minor axes.
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.1,0.05")]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = dtnlab_core::geometry::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, default_value_t = 192)]
    pub mesh_resolution: usize,
    /// Bound on the stddev of H over the undulary region.
    #[arg(long, default_value_t = 1e-6)]
    pub max_h_stddev: f64,
    /// Bound on sup |∇H| at the smallest ε.
    #[arg(long, default_value_t = 0.02)]
    pub max_grad_h: f64,
    #[arg(long, default_value_t = 0.5)]
    pub min_deficit: f64,
    #[arg(long, default_value_t = 6.0)]
    pub min_diameter: f64,
    #[arg(long, default_value_t = 0.1)]
    pub min_grad_ii: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GohbergArgs {
    /// `mixed`, `sign`, `const:c`, or `branch+:…;branch-:…;order:k`.
    #[arg(long, default_value = "mixed")]
    pub symbol: String,
    /// Grid size (power of two).
    #[arg(long = "N", default_value_t = 512)]
    #[serde(rename = "N")]
    pub grid: usize,
    /// Cutoffs m for the essential-norm upper bounds.
    #[arg(long, value_delimiter = ',', default_value = "4,16,64")]
    pub m_list: Vec<usize>,
    /// Frequencies λ of the oscillatory test functions.
    #[arg(long, value_delimiter = ',', default_value = "16,32,64,128")]
    pub lambdas: Vec<u32>,
    /// `bump:center,half_width` or `trig:<coefficients>`.
    #[arg(long, default_value = "bump:1,0.8")]
    pub envelope: String,
    /// Direction of the oscillation, `+` or `-`.
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub xi0: String,
}
