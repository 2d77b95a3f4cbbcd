use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Fock index ({n_a}, {n_b}) outside cutoffs ({cutoff_a}, {cutoff_b})")]
    Bounds {
        n_a: usize,
        n_b: usize,
        cutoff_a: usize,
        cutoff_b: usize,
    },

    #[error("shape mismatch: cutoffs {left:?} vs {right:?}")]
    Shape {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("outside domain: {0}")]
    Domain(String),

    #[error("population {population:e} reached the Fock cutoff")]
    Truncation { population: f64 },

    #[error("unstable integration: {0}")]
    Stability(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
