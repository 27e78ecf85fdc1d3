//! Library error type.

use thiserror::Error;

/// Everything that can go wrong while building densities, evaluating
/// entropies, or assembling distances.
#[derive(Debug, Error)]
pub enum Error {
    #[error("density needs at least 9 grid nodes, got {got}")]
    TooFewNodes { got: usize },

    #[error("density value {value:e} at node {index} is below the positivity floor {floor:e}")]
    NonPositiveDensity {
        index: usize,
        value: f64,
        floor: f64,
    },

    #[error("density does not normalize: integral = {integral:e}")]
    NotNormalizable { integral: f64 },

    #[error("sample ingestion needs at least 50 samples, got {got}")]
    TooFewSamples { got: usize },

    #[error("samples are degenerate (all equal)")]
    DegenerateSamples,

    #[error("sample at index {index} is not finite")]
    NonFiniteSample { index: usize },

    #[error("quantile grid needs at least 16 points, got {got}")]
    TooFewQuantiles { got: usize },

    #[error("gamma entropy requires gamma outside {{1, 2}}, got {gamma}")]
    InvalidGamma { gamma: f64 },

    #[error("entropy is not strictly convex: f''({z:e}) = {value:e}")]
    NonConvex { z: f64, value: f64 },

    #[error("h is undefined at y = {y:e}")]
    DomainError { y: f64 },

    #[error("quadrature did not converge; the integrand appears divergent")]
    QuadratureDivergence,

    #[error("h inversion target {target:e} is outside the range of h")]
    HInversionOutOfRange { target: f64 },

    #[error("tangent perturbation is not mean-zero: integral = {integral:e}")]
    NotMeanZero { integral: f64 },

    #[error("perturbed density p + {eps:e}*sigma is not a valid density")]
    PerturbedDensityInvalid {
        eps: f64,
        #[source]
        source: Option<Box<Error>>,
    },

    #[error("grid length mismatch: expected {expected} entries, got {got}")]
    GridMismatch { expected: usize, got: usize },

    #[error("entropy model carries only f''; f itself was not provided")]
    MissingEntropyFunction,
}

pub type Result<T> = std::result::Result<T, Error>;
