//! Vacuum fluctuation spectra of stress tensors and curvatures in linearized
//! gravity, and the geodesic-deviation noise they induce on a probe.
//!
//! Conventions: signature `(+, -, ..., -)`, `c = 1`, momenta stored with
//! lower indices. Spectral densities are finite sums of distributional
//! terms (see [`spectral`]); they are integrated, never gridded.

pub mod coupling;
pub mod error;
pub mod exact;
pub mod geodesic;
pub mod matter;
pub mod quadrature;
pub mod spectral;
pub mod tensor;

pub use coupling::{
    couple, coupled_riemann_coeffs, eddington_gamma, integrated_transfer, modified_riemann_coeffs,
    particle_density, proper_metric_spectrum, proper_riemann_coeffs, stochastic_identities_check,
    stress_polarization, CoupledSystem, DispersivePart, MetricField, ModifiedGravity, RiemannSpectrum,
};
pub use error::{Error, Result};
pub use exact::PiRational;
pub use geodesic::{
    deviation_spectrum, gw_component_spectra, scaling_report, tidal_coefficient, tidal_spectra_closed,
    tidal_spectra_oracle, ChannelSelect, DeviationSolver, DeviationSpectrum, ProbeConfig, TidalSpectra,
};
pub use matter::{FieldContent, FieldKind, FieldSpecies};
pub use spectral::{DensityKind, PhysicalScales, SpectralDensity, SpectralTerm};
pub use tensor::{Channel, ChannelScalar, Channels, Dimension, Momentum, Tensor2, Tensor4};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
