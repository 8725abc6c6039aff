use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spacetime dimension {0} is below the minimum of 2")]
    DimensionTooSmall(usize),
    #[error("{op} requires d >= {min}, got d = {d}")]
    UnsupportedDimension { op: &'static str, d: usize, min: usize },
    #[error("{op} is only defined for d = {expected}, got d = {d}")]
    WrongDimension { op: &'static str, d: usize, expected: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("transverse projector undefined for k^2 = {0} (lightlike or null momentum)")]
    ProjectorUndefined(f64),
    #[error("channel r = 1 is singular at d = 2 (lambda_1 = -1/(d-2))")]
    SingularChannel,
    #[error("expected a {expected} density, got {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("invalid field species: {0}")]
    InvalidSpecies(String),
    #[error("field content is empty")]
    EmptyContent,
    #[error("quadrature did not reach tolerance {tolerance:e}: estimate {estimate:e}, error {error:e} after {intervals} intervals")]
    Quadrature { tolerance: f64, estimate: f64, error: f64, intervals: usize },
    #[error("coupled response is resonant at k^2 = {k2:e} in channel r = {channel} (|denominator| = {denominator:e})")]
    Resonance { k2: f64, channel: usize, denominator: f64 },
    #[error("Eddington parameter has a pole at delta_gamma_1 = 3")]
    EddingtonPole,
    #[error("delta_gamma_1 = {0} outside |delta_gamma_1| < 3")]
    DeltaGammaOutOfRange(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
