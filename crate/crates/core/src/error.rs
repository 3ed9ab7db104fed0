use alloc::boxed::Box;
use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unsupported dimension n={0}; only n=2 and n=3 are implemented")]
    UnsupportedDimension(usize),

    #[error("invalid harmonic index (n={n}, k={k}, m={m})")]
    InvalidIndex { n: usize, k: u32, m: i32 },

    #[error("point is not on the unit sphere (|p| = {norm})")]
    OffSphere { norm: f64 },

    #[error("interior Dirichlet eigenvalue: |f(1)| = {boundary:e} against max|f| = {max:e}")]
    DirichletEigenvalue { boundary: f64, max: f64 },

    #[error("degree {degree}: {source}")]
    AtDegree {
        degree: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("resolution too coarse: {0}")]
    Refinement(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn at_degree(degree: u32, source: Error) -> Self {
        Error::AtDegree {
            degree,
            source: Box::new(source),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
