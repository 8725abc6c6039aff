//! Geodesic-deviation noise of a probe moving along the third spatial axis
//! in four dimensions: tidal-tensor spectra averaged over azimuth and the
//! deviation-tensor spectra obtained with the `sinc²` flight-time kernel.

use crate::coupling::{coupled_riemann_coeffs, RiemannSpectrum};
use crate::error::{Error, Result};
use crate::matter::FieldContent;
use crate::spectral::{IntegrationSettings, PhysicalScales, SpectralDensity, Structure};
use crate::tensor::{conformal_riemann, eta, Dimension, Momentum, Tensor2};

const PI: f64 = std::f64::consts::PI;

/// Probe with normalized velocity `v` along `x₃`, flight time `τ` and
/// frequency scale `K₀` (which cancels from every observable).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    v: f64,
    tau: f64,
    k0_scale: f64,
}

impl ProbeConfig {
    pub fn new(v: f64, tau: f64) -> Result<Self> {
        Self::with_scale(v, tau, 1.0)
    }

    pub fn with_scale(v: f64, tau: f64, k0_scale: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidArgument(format!("probe velocity must lie in [0, 1], got {v}")));
        }
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidArgument(format!("flight time must be positive, got {tau}")));
        }
        if !(k0_scale.is_finite() && k0_scale > 0.0) {
            return Err(Error::InvalidArgument(format!("probe frequency scale must be positive, got {k0_scale}")));
        }
        Ok(Self { v, tau, k0_scale })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn k0_scale(&self) -> f64 {
        self.k0_scale
    }

    /// Contravariant probe wavevector `K = K₀(1, 0, 0, v)`.
    pub fn wavevector(&self) -> [f64; 4] {
        [self.k0_scale, 0.0, 0.0, self.k0_scale * self.v]
    }
}

/// `𝓠_ik = ½(k_i k_k (1-v²) - δ_ik (k₀ - k₃v)² - v(δ_i3 k_k + k_i δ_k3)(k₀ - k₃v))`
/// from the physical (contravariant) spatial components of `k`.
pub fn tidal_coefficient(k: &Momentum, probe: &ProbeConfig) -> Result<[[f64; 3]; 3]> {
    k.dim().require_exactly("tidal coefficient", 4)?;
    let v = probe.v;
    let kk = [k.upper(1), k.upper(2), k.upper(3)];
    let shift = k.k0() - kk[2] * v;
    let mut q = [[0.0; 3]; 3];
    for (i, row) in q.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            let d3 = |a: usize| if a == 2 { 1.0 } else { 0.0 };
            *slot = 0.5
                * (kk[i] * kk[j] * (1.0 - v * v)
                    - delta * shift * shift
                    - v * (d3(i) * kk[j] + kk[i] * d3(j)) * shift);
        }
    }
    Ok(q)
}

/// Azimuth-averaged tidal spectra at `(ω, s = |k|², k₃)` for given `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TidalSpectra {
    pub alpha: f64,
    pub beta: f64,
    pub v: f64,
    pub q33: f64,
    pub q13: f64,
    pub q23: f64,
    pub q12: f64,
    pub q12p: f64,
    /// Cross spectrum of `Q₃₃` with the trace `Q`.
    pub q33_q: f64,
    pub qq: f64,
}

impl TidalSpectra {
    /// `C_{Q₀₃Q₀₃} = v² C_{Q₃₃Q₃₃}`.
    pub fn q03(&self) -> f64 {
        self.v * self.v * self.q33
    }

    /// `C_{Q₀₀Q₀₀} = v⁴ C_{Q₃₃Q₃₃}`.
    pub fn q00(&self) -> f64 {
        self.v.powi(4) * self.q33
    }

    /// `C_{Q₀₁Q₀₁} = v² C_{Q₁₃Q₁₃}`.
    pub fn q01(&self) -> f64 {
        self.v * self.v * self.q13
    }

    /// `C_{Q₀₂Q₀₂} = v² C_{Q₂₃Q₂₃}`.
    pub fn q02(&self) -> f64 {
        self.v * self.v * self.q23
    }

    fn components(&self) -> [f64; 7] {
        [self.q33, self.q13, self.q23, self.q12, self.q12p, self.q33_q, self.qq]
    }

    /// Largest deviation relative to the largest component magnitude of `other`.
    pub fn max_relative_diff(&self, other: &Self) -> f64 {
        let scale = other.components().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let diff = self.components().iter().zip(other.components()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        if scale == 0.0 {
            diff
        } else {
            diff / scale
        }
    }
}

/// The six tidal spectra as explicit polynomials in `(ω, s, k₃, v)`.
pub fn tidal_spectra_closed(omega: f64, s: f64, k3: f64, probe: &ProbeConfig, alpha: f64, beta: f64) -> TidalSpectra {
    let v = probe.v;
    let w = 1.0 - v * v;
    let t = s - k3 * k3;
    let l = omega * omega - k3 * k3;
    let m = omega * omega - s;
    let sh2 = (omega - k3 * v).powi(2);
    let c = 2.0 * beta - alpha;
    let q13 = 0.5 * (beta - alpha) * t * sh2 - 0.5 * c * t * l * w + beta * l * sh2;
    let q12 = c / 8.0 * t * t * w * w + beta * sh2 * sh2 - beta * sh2 * t * w;
    TidalSpectra {
        alpha,
        beta,
        v,
        q33: c * l * l,
        q13,
        q23: q13,
        q12,
        q12p: q12,
        q33_q: -c * m * l * w - 2.0 * (beta - alpha) * t * sh2 + 2.0 * alpha * m * sh2,
        qq: c * m * m * w * w + 4.0 * (beta - alpha) * sh2 * sh2 - 4.0 * alpha * m * w * sh2,
    }
}

/// Azimuth average of the tidal spectra computed by contracting the
/// Riemann correlation structure `4β(𝓡𝓡 + 𝓡𝓡) - 4α𝓡𝓡` with the probe
/// wavevector, using `n_samples` uniform nodes in `φ`.
pub fn tidal_spectra_oracle(
    omega: f64,
    s: f64,
    k3: f64,
    probe: &ProbeConfig,
    alpha: f64,
    beta: f64,
    n_samples: usize,
) -> Result<TidalSpectra> {
    if n_samples < 16 {
        return Err(Error::InvalidArgument(format!("azimuth average needs at least 16 nodes, got {n_samples}")));
    }
    if s < k3 * k3 {
        return Err(Error::InvalidArgument(format!("s = {s} below k3^2 = {}", k3 * k3)));
    }
    let rho = (s - k3 * k3).sqrt();
    let nodes = if rho == 0.0 { 1 } else { n_samples };
    let kvec = probe.wavevector();
    let k0 = probe.k0_scale;
    let trace_weights: [(usize, f64); 4] = [(0, eta(0)), (1, eta(1)), (2, eta(2)), (3, eta(3))];

    let mut acc = [0.0f64; 7];
    for n in 0..nodes {
        let phi = 2.0 * PI * n as f64 / nodes as f64;
        let k = Momentum::from_contravariant(&[omega, rho * phi.cos(), rho * phi.sin(), k3])?;
        let curv = conformal_riemann(&k);
        // C_{Q_{μρ} Q_{μ'ρ'}} with K^ν K^σ K^ν' K^σ' / K₀⁴
        let c = |mu: usize, rh: usize, mp: usize, rp: usize| -> f64 {
            let mut total = 0.0;
            for (nu, knu) in kvec.iter().enumerate().filter(|(_, x)| **x != 0.0) {
                for (sg, ksg) in kvec.iter().enumerate().filter(|(_, x)| **x != 0.0) {
                    for (np, knp) in kvec.iter().enumerate().filter(|(_, x)| **x != 0.0) {
                        for (sp, ksp) in kvec.iter().enumerate().filter(|(_, x)| **x != 0.0) {
                            let w = knu * ksg * knp * ksp;
                            total += w * crate::coupling::riemann_correlation_component(
                                &curv,
                                -4.0 * alpha,
                                4.0 * beta,
                                [mu, nu, rh, sg],
                                [mp, np, rp, sp],
                            );
                        }
                    }
                }
            }
            total / k0.powi(4)
        };
        let q33 = c(3, 3, 3, 3);
        let q13 = c(1, 3, 1, 3);
        let q23 = c(2, 3, 2, 3);
        let q12 = c(1, 2, 1, 2);
        let q12p = 0.25 * (c(1, 1, 1, 1) - 2.0 * c(1, 1, 2, 2) + c(2, 2, 2, 2));
        // trace Q = η^{μρ} Q_{μρ} over all four components
        let mut q33_q = 0.0;
        let mut qq = 0.0;
        for &(a, ea) in &trace_weights {
            q33_q += ea * c(3, 3, a, a);
            for &(b, eb) in &trace_weights {
                qq += ea * eb * c(a, a, b, b);
            }
        }
        for (slot, x) in acc.iter_mut().zip([q33, q13, q23, q12, q12p, q33_q, qq]) {
            *slot += x;
        }
    }
    let inv = 1.0 / nodes as f64;
    let [q33, q13, q23, q12, q12p, q33_q, qq] = acc.map(|x| x * inv);
    Ok(TidalSpectra { alpha, beta, v: probe.v, q33, q13, q23, q12, q12p, q33_q, qq })
}

/// On-shell integrands per unit `α` with `β = α`, `s = ω²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GwComponents {
    pub q33: f64,
    pub q13: f64,
    pub q23: f64,
    pub q12: f64,
    pub q12p: f64,
}

/// The five surviving gravitational-wave integrands.
pub fn gw_component_spectra(omega: f64, k3: f64, probe: &ProbeConfig) -> GwComponents {
    let v = probe.v;
    let w = 1.0 - v * v;
    let l = omega * omega - k3 * k3;
    let sh2 = (omega - k3 * v).powi(2);
    let q13 = l * sh2 - 0.5 * l * l * w;
    let q12 = sh2 * sh2 - l * w * sh2 + l * l * w * w / 8.0;
    GwComponents { q33: l * l, q13, q23: q13, q12, q12p: q12 }
}

/// `sin(x)/x`, by series near the origin.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Which curvature fluctuations feed the deviation spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChannelSelect {
    /// Vacuum gravitational waves (`δ(k²)` shell).
    GwOnly,
    /// Gravity of vacuum stress tensors (`θ(k²)` interior).
    GravityOfVacuum,
    #[default]
    Both,
}

impl ChannelSelect {
    pub fn name(self) -> &'static str {
        match self {
            ChannelSelect::GwOnly => "gw-only",
            ChannelSelect::GravityOfVacuum => "gravity-of-vacuum",
            ChannelSelect::Both => "both",
        }
    }

    fn apply(self, density: &SpectralDensity) -> SpectralDensity {
        match self {
            ChannelSelect::GwOnly => density.on_shell_part(),
            ChannelSelect::GravityOfVacuum => density.interior_part(),
            ChannelSelect::Both => density.clone(),
        }
    }
}

/// Deviation-tensor spectra at one frequency.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DeviationValues {
    pub omega: f64,
    pub d33: f64,
    pub d13: f64,
    pub d23: f64,
    pub d12: f64,
    pub d12p: f64,
    pub trace: f64,
}

impl DeviationValues {
    pub fn as_array(&self) -> [f64; 6] {
        [self.d33, self.d13, self.d23, self.d12, self.d12p, self.trace]
    }
}

/// Sampled deviation spectra on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationSpectrum {
    pub channels: ChannelSelect,
    pub values: Vec<DeviationValues>,
}

impl DeviationSpectrum {
    pub fn omega(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.omega).collect()
    }
}

/// Immutable evaluator for deviation spectra; `Sync`, so grid points can
/// be evaluated concurrently.
#[derive(Debug, Clone)]
pub struct DeviationSolver {
    probe: ProbeConfig,
    channels: ChannelSelect,
    alpha: SpectralDensity,
    beta: SpectralDensity,
    settings: IntegrationSettings,
}

impl DeviationSolver {
    pub fn new(probe: ProbeConfig, content: &FieldContent, scales: &PhysicalScales, channels: ChannelSelect) -> Result<Self> {
        content.d.require_exactly("deviation spectrum", 4)?;
        let riemann = coupled_riemann_coeffs(content, scales)?;
        Self::from_riemann(probe, &riemann, channels)
    }

    pub fn from_riemann(probe: ProbeConfig, riemann: &RiemannSpectrum, channels: ChannelSelect) -> Result<Self> {
        riemann.d.require_exactly("deviation spectrum", 4)?;
        let (alpha, beta) = riemann.tidal_weights()?;
        let settings = IntegrationSettings { shell_adaptive: probe.v > 0.0, ..IntegrationSettings::default() };
        Ok(Self { probe, channels, alpha: channels.apply(&alpha), beta: channels.apply(&beta), settings })
    }

    pub fn with_settings(mut self, settings: IntegrationSettings) -> Self {
        self.settings = settings;
        self
    }

    pub fn probe(&self) -> &ProbeConfig {
        &self.probe
    }

    pub fn channels(&self) -> ChannelSelect {
        self.channels
    }

    /// Evaluates all components at `ω`; non-positive `ω` gives zeros.
    pub fn at(&self, omega: f64) -> Result<DeviationValues> {
        if !omega.is_finite() {
            return Err(Error::InvalidArgument(format!("omega must be finite, got {omega}")));
        }
        if omega <= 0.0 {
            return Ok(DeviationValues { omega, ..Default::default() });
        }
        let probe = self.probe;
        let pref = (probe.tau / (2.0 * PI)).powi(2) * 0.5;
        let kernel = |k3: f64| {
            let x = sinc((omega - k3 * probe.v) * probe.tau / 2.0);
            pref * x * x
        };
        let pick = |t: &TidalSpectra| [t.q33, t.q13, t.q23, t.q12, t.q12p, t.qq];
        let mut totals = [0.0; 6];
        for (density, unit) in [(&self.alpha, (1.0, 0.0)), (&self.beta, (0.0, 1.0))] {
            if density.is_empty() {
                continue;
            }
            for (c, slot) in totals.iter_mut().enumerate() {
                let weight = |s: f64, k3: f64| {
                    let t = tidal_spectra_closed(omega, s, k3, &probe, unit.0, unit.1);
                    pick(&t)[c] * kernel(k3)
                };
                *slot += density.integrate_against(Structure::Scalar, omega, weight, &self.settings)?;
            }
        }
        let [d33, d13, d23, d12, d12p, trace] = totals;
        Ok(DeviationValues { omega, d33, d13, d23, d12, d12p, trace })
    }
}

/// Deviation spectra on `omega_grid`, evaluated sequentially.
pub fn deviation_spectrum(
    probe: &ProbeConfig,
    content: &FieldContent,
    scales: &PhysicalScales,
    omega_grid: &[f64],
    channels: ChannelSelect,
) -> Result<DeviationSpectrum> {
    let solver = DeviationSolver::new(*probe, content, scales, channels)?;
    let values = omega_grid.iter().map(|&w| solver.at(w)).collect::<Result<Vec<_>>>()?;
    Ok(DeviationSpectrum { channels, values })
}

/// Slow-probe closed form `(32/15) ω³ l_P² sin²(ωτ/2)`.
pub fn slow_probe_longitudinal(omega: f64, tau: f64, scales: &PhysicalScales) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    32.0 / 15.0 * omega.powi(3) * scales.planck_length_sq() * (omega * tau / 2.0).sin().powi(2)
}

/// Slow-probe trace closed form `8(4 + N_ν)/(105π) ω⁵ l_P⁴ sin²(ωτ/2)`.
pub fn slow_probe_trace(omega: f64, tau: f64, n_nu: u32, scales: &PhysicalScales) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    let lp4 = scales.planck_length_sq().powi(2);
    8.0 * (4.0 + f64::from(n_nu)) / (105.0 * PI) * omega.powi(5) * lp4 * (omega * tau / 2.0).sin().powi(2)
}

/// Comparison of the two curvature channels for `C_{Δ₃₃Δ₃₃}` at `v = 0`, `τ = 1/ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingReport {
    pub omega: f64,
    pub omega_lp: f64,
    pub gw: f64,
    pub gravity_of_vacuum: f64,
    /// `gravity_of_vacuum / gw`.
    pub ratio: f64,
    /// `ratio / (ω l_P)²`, expected to be independent of `ω`.
    pub normalized: f64,
}

pub fn scaling_report(omega: f64, scales: &PhysicalScales, content: &FieldContent) -> Result<ScalingReport> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidArgument(format!("omega must be positive, got {omega}")));
    }
    let probe = ProbeConfig::new(0.0, 1.0 / omega)?;
    let gw = DeviationSolver::new(probe, content, scales, ChannelSelect::GwOnly)?.at(omega)?.d33;
    let gov = DeviationSolver::new(probe, content, scales, ChannelSelect::GravityOfVacuum)?.at(omega)?.d33;
    let omega_lp = omega * scales.planck_length();
    let ratio = gov / gw;
    Ok(ScalingReport { omega, omega_lp, gw, gravity_of_vacuum: gov, ratio, normalized: ratio / (omega_lp * omega_lp) })
}

/// Spatial block of `Q_{μρ} = 𝓡_{μνρσ} K^ν K^σ / K₀²` via the full
/// four-dimensional contraction; used to cross-check [`tidal_coefficient`].
pub fn tidal_block_from_riemann(k: &Momentum, probe: &ProbeConfig) -> Result<Tensor2> {
    k.dim().require_exactly("tidal coefficient", 4)?;
    let curv = conformal_riemann(k);
    let kv = probe.wavevector();
    let k0 = probe.k0_scale;
    Ok(Tensor2::from_fn(Dimension::new(4)?, |m, r| {
        let mut acc = 0.0;
        for (nu, a) in kv.iter().enumerate() {
            for (sg, b) in kv.iter().enumerate() {
                acc += a * b * curv[(m, nu, r, sg)];
            }
        }
        acc / (k0 * k0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_copropagating_probe_has_no_tidal_field() {
        let k = Momentum::from_contravariant(&[2.0, 0.0, 0.0, 2.0]).unwrap();
        let p = ProbeConfig::new(1.0, 1.0).unwrap();
        let q = tidal_coefficient(&k, &p).unwrap();
        assert!(q.iter().flatten().all(|x| x.abs() < 1e-15));
    }

    #[test]
    fn static_probe_formula() {
        let k = Momentum::from_contravariant(&[1.3, 0.2, -0.4, 0.7]).unwrap();
        let p = ProbeConfig::new(0.0, 1.0).unwrap();
        let q = tidal_coefficient(&k, &p).unwrap();
        let kk = [0.2, -0.4, 0.7];
        for i in 0..3 {
            for j in 0..3 {
                let delta = if i == j { 1.0 } else { 0.0 };
                assert!((q[i][j] - 0.5 * (kk[i] * kk[j] - delta * 1.69)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn tidal_block_matches_contraction() {
        let k = Momentum::from_contravariant(&[0.9, 0.3, -0.5, 0.2]).unwrap();
        let p = ProbeConfig::with_scale(0.6, 1.0, 3.0).unwrap();
        let q = tidal_coefficient(&k, &p).unwrap();
        let full = tidal_block_from_riemann(&k, &p).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((q[i][j] - full[(i + 1, j + 1)]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn gw_case_trace_vanishes() {
        let p = ProbeConfig::new(0.4, 1.0).unwrap();
        let t = tidal_spectra_closed(1.0, 1.0, 0.3, &p, 2.0, 2.0);
        assert_eq!(t.q33_q, 0.0);
        assert_eq!(t.qq, 0.0);
        assert!((t.q33 - 2.0 * (1.0f64 - 0.09).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn sinc_series_is_continuous() {
        let a = sinc(0.99999e-4);
        let b = sinc(1.00001e-4);
        assert!((a - b).abs() < 1e-12);
        assert_eq!(sinc(0.0), 1.0);
    }

    #[test]
    fn probe_validation() {
        assert!(ProbeConfig::new(1.2, 1.0).is_err());
        assert!(ProbeConfig::new(0.5, 0.0).is_err());
        assert!(ProbeConfig::with_scale(0.5, 1.0, -1.0).is_err());
    }
}
