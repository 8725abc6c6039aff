//! Linearized gravity coupled to vacuum stress tensors: proper metric and
//! curvature fluctuations, dissipative vacuum polarization, particle
//! production, the coupled metric/stress-tensor system at lowest order, and
//! a modified-gravity extension with distinct channel couplings.
//!
//! Only the transverse channels of metric correlations are represented;
//! gauge-dependent longitudinal parts never enter an observable here.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matter::FieldContent;
use crate::spectral::{Exponent, PhysicalScales, SpectralDensity, SpectralTerm, Structure};
use crate::tensor::{
    channel_coefficients, channel_form, einstein_channels, lambda, linearized_curvatures, Channel,
    ChannelScalar, Channels, Dimension, Momentum, Tensor2, Tensor4,
};

const PI: f64 = std::f64::consts::PI;

fn require_gravity_dimension(d: Dimension) -> Result<()> {
    d.require_at_least("gravity coupling", 3)
}

/// `σ = ħπ (k²)^{d/2-2} θ(k²)`, pointwise.
pub fn sigma_scalar(d: Dimension, hbar: f64, k2: f64) -> f64 {
    if k2 <= 0.0 {
        return 0.0;
    }
    hbar * PI * k2.powf(d.as_f64() / 2.0 - 2.0)
}

/// Channel factor mapping metric channels to Einstein channels:
/// `G^r = k²/(2λ_r) · π^r·h`. Returns `1/(2λ_r)`.
pub fn einstein_channel_factor(d: Dimension) -> Result<ChannelScalar> {
    Ok(lambda(d)?.map(|_, l| 0.5 / l))
}

/// Transverse part of the proper metric correlation `σ_hh`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProperMetricSpectrum {
    pub d: Dimension,
    /// Channel terms `2πκλ_r δ(k²)`.
    pub density: SpectralDensity,
}

impl ProperMetricSpectrum {
    /// Correlation of the Einstein tensor built from these metric
    /// fluctuations; every shell term acquires `(k²)²` and drops out.
    pub fn einstein_contraction(&self) -> Result<SpectralDensity> {
        einstein_correlation(&self.density, self.d)
    }
}

/// `σ_GG` from a channel-decomposed `σ_hh`.
pub fn einstein_correlation(sigma_hh: &SpectralDensity, d: Dimension) -> Result<SpectralDensity> {
    let f = einstein_channel_factor(d)?;
    Ok(sigma_hh.scale_channels(f.map(|_, x| x * x)).times_k2_power(Exponent::from_integer(2)).pruned())
}

pub fn proper_metric_spectrum(scales: &PhysicalScales, d: Dimension) -> Result<ProperMetricSpectrum> {
    require_gravity_dimension(d)?;
    let lam = lambda(d)?;
    let kappa = scales.kappa();
    let terms = Channel::ALL
        .iter()
        .map(|&r| SpectralTerm::on_shell(Structure::Channel(r), 2.0 * PI * kappa * lam.get(r)))
        .collect();
    Ok(ProperMetricSpectrum { d, density: SpectralDensity::symmetrized(scales.hbar, terms) })
}

/// Riemann curvature correlation
/// `σ_RR = a 𝓡_{μνρσ}𝓡_{μ'ν'ρ'σ'} + b (𝓡_{μνμ'ν'}𝓡_{ρσρ'σ'} + 𝓡_{μνρ'σ'}𝓡_{ρσμ'ν'})`
/// with scalar densities `a`, `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct RiemannSpectrum {
    pub d: Dimension,
    pub a: SpectralDensity,
    pub b: SpectralDensity,
}

impl RiemannSpectrum {
    /// Full-kind tidal weights `(α, β)` defined by
    /// `C_RR = 4β(𝓡𝓡 + 𝓡𝓡) - 4α 𝓡𝓡`, i.e. `α = -ħ a θ(k₀)/2`, `β = ħ b θ(k₀)/2`.
    pub fn tidal_weights(&self) -> Result<(SpectralDensity, SpectralDensity)> {
        let alpha = self.a.to_full()?.scale(-0.25);
        let beta = self.b.to_full()?.scale(0.25);
        Ok((alpha, beta))
    }

    /// Shell weights of `a` and `b` (coefficients of `δ(k²)`).
    pub fn shell_coefficients(&self) -> (f64, f64) {
        (self.a.shell_scalar(1.0), self.b.shell_scalar(1.0))
    }

    /// Regular (interior) values of `a` and `b` at `k²`.
    pub fn interior_values(&self, k2: f64) -> (f64, f64) {
        (self.a.regular_scalar(1.0, k2), self.b.regular_scalar(1.0, k2))
    }
}

/// One component of the Riemann correlation structure for given scalar
/// values of `a` and `b`, with `curv = 𝓡` at the momentum of interest.
pub fn riemann_correlation_component(curv: &Tensor4, a: f64, b: f64, first: [usize; 4], second: [usize; 4]) -> f64 {
    let [m, n, r, s] = first;
    let [mp, np, rp, sp] = second;
    a * curv[(m, n, r, s)] * curv[(mp, np, rp, sp)]
        + b * (curv[(m, n, mp, np)] * curv[(r, s, rp, sp)] + curv[(m, n, rp, sp)] * curv[(r, s, mp, np)])
}

/// Maps a channel-decomposed metric correlation `Σ c_r π^r` onto Riemann
/// coefficients: `a = Σ c_r α_r`, `b = Σ c_r β_r`.
pub fn riemann_from_metric(sigma_hh: &SpectralDensity, d: Dimension) -> Result<RiemannSpectrum> {
    let mut a = SpectralDensity::new(sigma_hh.kind, sigma_hh.hbar);
    let mut b = SpectralDensity::new(sigma_hh.kind, sigma_hh.hbar);
    for t in &sigma_hh.terms {
        let Structure::Channel(r) = t.structure else {
            return Err(Error::InvalidArgument("metric correlation must be channel-decomposed".into()));
        };
        let (alpha, beta) = channel_coefficients(d, r);
        for (target, factor) in [(&mut a, alpha), (&mut b, beta)] {
            if factor != 0.0 {
                target.push(SpectralTerm { structure: Structure::Scalar, coeff: t.coeff * factor, ..t.clone() });
            }
        }
    }
    Ok(RiemannSpectrum { d, a: merge_like_terms(&a), b: merge_like_terms(&b) })
}

/// Combines terms that differ only by coefficient.
fn merge_like_terms(density: &SpectralDensity) -> SpectralDensity {
    let mut out: Vec<SpectralTerm> = Vec::new();
    for t in &density.terms {
        match out.iter_mut().find(|o| SpectralTerm { coeff: t.coeff, ..(*o).clone() } == *t) {
            Some(o) => o.coeff += t.coeff,
            None => out.push(t.clone()),
        }
    }
    SpectralDensity { terms: out, ..density.clone() }.pruned()
}

/// Proper Riemann coefficients `a = 2πκδ(k²) Σ λ_r α_r`, `b = 2πκδ(k²) Σ λ_r β_r`.
pub fn proper_riemann_coeffs(scales: &PhysicalScales, d: Dimension) -> Result<RiemannSpectrum> {
    let proper = proper_metric_spectrum(scales, d)?;
    riemann_from_metric(&proper.density, d)
}

/// Symmetrized stress-tensor correlation `σ_TT` at momentum `k` as a rank-4
/// tensor (channel terms only).
pub fn stress_correlation_tensor(k: &Momentum, content: &FieldContent, scales: &PhysicalScales) -> Result<Tensor4> {
    if content.d != k.dim() {
        return Err(Error::DimensionMismatch(content.d.get(), k.d()));
    }
    let density = content.stress_spectrum(scales)?;
    let c = density.regular_channels(k.k0(), k.k2());
    let p0 = channel_form(Channel::Traceless, k)?;
    let p1 = channel_form(Channel::Trace, k)?;
    Ok(p0.scale(c.c0).add(&p1.scale(c.c1)))
}

fn check_content(h: &Tensor2, k: &Momentum, content: &FieldContent) -> Result<()> {
    require_gravity_dimension(k.dim())?;
    if h.d() != k.d() || content.d != k.dim() {
        return Err(Error::DimensionMismatch(h.d(), k.d()));
    }
    Ok(())
}

/// Dissipative stress response `⟨δT_μν⟩ = 2k²σ Σ λ_r ζ_r G^r_μν` to a metric
/// perturbation `h`. Zero at or below the content's pair threshold.
pub fn stress_polarization(h: &Tensor2, k: &Momentum, content: &FieldContent, scales: &PhysicalScales) -> Result<Tensor2> {
    check_content(h, k, content)?;
    let (d, k2) = (k.dim(), k.k2());
    if k2 <= 0.0 {
        return Ok(Tensor2::zeros(d));
    }
    let zeta = content.zeta(k2)?;
    let lam = lambda(d)?;
    let g = einstein_channels(&linearized_curvatures(h, k)?.einstein, k)?;
    let pref = 2.0 * k2 * sigma_scalar(d, scales.hbar, k2);
    let out = &g.c0.scale(lam.c0 * zeta.c0) + &g.c1.scale(lam.c1 * zeta.c1);
    Ok(out.scale(pref))
}

/// Dissipative stress response as the direct contraction `σ_TT · h`.
pub fn stress_polarization_direct(h: &Tensor2, k: &Momentum, content: &FieldContent, scales: &PhysicalScales) -> Result<Tensor2> {
    check_content(h, k, content)?;
    if k.k2() <= 0.0 {
        return Ok(Tensor2::zeros(k.dim()));
    }
    Ok(stress_correlation_tensor(k, content, scales)?.apply(h))
}

/// Density of produced particles
/// `n[k] = 2π (k²)^{d/2-2} θ(k²) Σ ζ_r λ_r² G^r·G^r` for a real perturbation.
pub fn particle_density(h: &Tensor2, k: &Momentum, content: &FieldContent, scales: &PhysicalScales) -> Result<f64> {
    check_content(h, k, content)?;
    let (d, k2) = (k.dim(), k.k2());
    if k2 <= 0.0 {
        return Ok(0.0);
    }
    let zeta = content.zeta(k2)?;
    if zeta == ChannelScalar::default() {
        return Ok(0.0);
    }
    let lam = lambda(d)?;
    let g = einstein_channels(&linearized_curvatures(h, k)?.einstein, k)?;
    let quad = zeta.c0 * lam.c0 * lam.c0 * g.c0.contract(&g.c0) + zeta.c1 * lam.c1 * lam.c1 * g.c1.contract(&g.c1);
    // the closed form carries the σ/ħ normalization
    Ok(2.0 * sigma_scalar(d, scales.hbar, k2) / scales.hbar * quad)
}

/// Particle density as the direct quadratic form `(1/2ħ) h·σ_TT·h`.
pub fn particle_density_direct(h: &Tensor2, k: &Momentum, content: &FieldContent, scales: &PhysicalScales) -> Result<f64> {
    check_content(h, k, content)?;
    if k.k2() <= 0.0 {
        return Ok(0.0);
    }
    Ok(stress_correlation_tensor(k, content, scales)?.quadratic_form(h, h) / (2.0 * scales.hbar))
}

/// A metric perturbation sampled at discrete momenta with quadrature
/// weights standing for `d^dk/(2π)^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricField {
    pub samples: Vec<(Momentum, Tensor2)>,
    pub weights: Vec<f64>,
}

impl MetricField {
    pub fn new(samples: Vec<(Momentum, Tensor2)>, weights: Vec<f64>) -> Result<Self> {
        if samples.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "{} samples but {} quadrature weights",
                samples.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidArgument("quadrature weights must be finite and >= 0".into()));
        }
        Ok(Self { samples, weights })
    }
}

/// Integrated energy-momentum transfer `Π_μ = ∫ ħ k_μ sgn(k₀) n[k]`
/// over the sampled field (covariant components).
pub fn integrated_transfer(field: &MetricField, content: &FieldContent, scales: &PhysicalScales) -> Result<Vec<f64>> {
    let d = content.d.get();
    let mut total = vec![0.0; d];
    for ((k, h), w) in field.samples.iter().zip(&field.weights) {
        if k.d() != d {
            return Err(Error::DimensionMismatch(k.d(), d));
        }
        let n = particle_density(h, k, content, scales)?;
        let sign = k.k0().signum();
        for (mu, slot) in total.iter_mut().enumerate() {
            *slot += w * scales.hbar * k.lower(mu) * sign * n;
        }
    }
    Ok(total)
}

/// Caller-supplied dispersive part `Γ̄_r` of the vacuum polarization.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DispersivePart {
    #[default]
    Zero,
    Constant(ChannelScalar),
}

impl DispersivePart {
    fn value(self) -> ChannelScalar {
        match self {
            DispersivePart::Zero => ChannelScalar::default(),
            DispersivePart::Constant(c) => c,
        }
    }
}

/// Per-channel coupled and input susceptibilities at one `k²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledSusceptibilities {
    pub k2: f64,
    pub gamma: Channels<Complex64>,
    pub chi_hh_in: Channels<Complex64>,
    pub chi_tt_in: Channels<Complex64>,
    pub chi_hh: Channels<Complex64>,
    pub chi_th: Channels<Complex64>,
    pub chi_tt: Channels<Complex64>,
    /// Input stress correlation `(k²)² ζ_r σ`.
    pub sigma_tt_in: ChannelScalar,
}

impl CoupledSusceptibilities {
    /// Coupled metric correlation off the light cone,
    /// `χ_hh σ_TT^in χ_hh*` (the shell input term vanishes there).
    pub fn sigma_hh(&self) -> ChannelScalar {
        self.chi_hh.zip(self.sigma_tt_in, |chi, s| chi.norm_sqr() * s)
    }
}

/// Coupled metric / stress-tensor system for a given field content.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledSystem {
    pub content: FieldContent,
    pub scales: PhysicalScales,
    pub dispersive: DispersivePart,
    lambda: ChannelScalar,
}

/// Builds the coupled system; `dispersive` overrides `Γ̄_r` (default zero).
pub fn couple(content: &FieldContent, scales: &PhysicalScales, dispersive: DispersivePart) -> Result<CoupledSystem> {
    require_gravity_dimension(content.d)?;
    Ok(CoupledSystem { content: content.clone(), scales: *scales, dispersive, lambda: lambda(content.d)? })
}

const RESONANCE_EPS: f64 = 1e-12;

impl CoupledSystem {
    /// `Γ_r = Γ̄_r + iσ`.
    pub fn polarization(&self, k2: f64) -> Channels<Complex64> {
        let s = sigma_scalar(self.content.d, self.scales.hbar, k2);
        self.dispersive.value().map(|_, g| Complex64::new(g, s))
    }

    /// `χ_TT^in = (k²)² ζ_r Γ_r`.
    pub fn chi_tt_in(&self, k2: f64) -> Result<Channels<Complex64>> {
        let zeta = self.content.zeta(k2)?;
        let gamma = self.polarization(k2);
        Ok(zeta.zip(gamma, |z, g| g * (k2 * k2 * z)))
    }

    /// Off-shell `χ_hh^in = 2κλ_r / k²`.
    pub fn chi_hh_in(&self, k2: f64) -> Result<Channels<Complex64>> {
        if k2 == 0.0 {
            return Err(Error::ProjectorUndefined(k2));
        }
        let kappa = self.scales.kappa();
        Ok(self.lambda.map(|_, l| Complex64::new(2.0 * kappa * l / k2, 0.0)))
    }

    /// Effective coupling ratio `γ_r = 1/(1 - 2κλ_r ζ_r k² Γ_r)`; defined at `k² = 0`.
    pub fn gamma(&self, k2: f64) -> Result<Channels<Complex64>> {
        let kappa = self.scales.kappa();
        let zeta = self.content.zeta(k2)?;
        let pol = self.polarization(k2);
        let mut out = [Complex64::zero(); 2];
        for r in Channel::ALL {
            let den = Complex64::new(1.0, 0.0) - pol.get(r) * (2.0 * kappa * self.lambda.get(r) * zeta.get(r) * k2);
            if den.norm() < RESONANCE_EPS {
                return Err(Error::Resonance { k2, channel: r.index(), denominator: den.norm() });
            }
            out[r.index()] = den.inv();
        }
        Ok(Channels::new(out[0], out[1]))
    }

    /// All susceptibilities at an off-shell `k² ≠ 0`.
    pub fn at(&self, k2: f64) -> Result<CoupledSusceptibilities> {
        let gamma = self.gamma(k2)?;
        let chi_hh_in = self.chi_hh_in(k2)?;
        let chi_tt_in = self.chi_tt_in(k2)?;
        let zeta = self.content.zeta(k2)?;
        let s = sigma_scalar(self.content.d, self.scales.hbar, k2);
        Ok(CoupledSusceptibilities {
            k2,
            gamma,
            chi_hh_in,
            chi_tt_in,
            chi_hh: gamma.zip(chi_hh_in, |g, c| g * c),
            chi_th: gamma,
            chi_tt: gamma.zip(chi_tt_in, |g, c| g * c),
            sigma_tt_in: zeta.map(|_, z| k2 * k2 * z * s),
        })
    }

    /// Low-frequency coupled correlations: `σ_hh = σ_hh^in + 4κ²σ Σ λ_r² ζ_r π^r`,
    /// `σ_TT = σ_TT^in`, `σ_Th = 2κk²σ Σ λ_r ζ_r π^r`.
    pub fn low_frequency_correlations(&self) -> Result<CoupledCorrelations> {
        let d = self.content.d;
        let kappa = self.scales.kappa();
        let sigma_tt = self.content.stress_spectrum(&self.scales)?;
        let sigma_th = sigma_tt
            .scale_channels(self.lambda.map(|_, l| 2.0 * kappa * l))
            .times_k2_power(Exponent::from_integer(-1));
        let gravity_of_vacuum = sigma_tt
            .scale_channels(self.lambda.map(|_, l| 4.0 * kappa * kappa * l * l))
            .times_k2_power(Exponent::from_integer(-2));
        let sigma_hh = proper_metric_spectrum(&self.scales, d)?.density.concat(&gravity_of_vacuum)?;
        Ok(CoupledCorrelations { d, sigma_hh, sigma_tt, sigma_th })
    }
}

/// Symmetrized correlations of the coupled system at low frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledCorrelations {
    pub d: Dimension,
    pub sigma_hh: SpectralDensity,
    pub sigma_tt: SpectralDensity,
    pub sigma_th: SpectralDensity,
}

/// Riemann coefficients including gravity of vacuum stress tensors:
/// `a = -2πκδ(k²)/(d-2) + 4κ²σ Σ λ_r² ζ_r α_r`, `b = πκδ(k²) + 4κ²σ Σ λ_r² ζ_r β_r`.
pub fn coupled_riemann_coeffs(content: &FieldContent, scales: &PhysicalScales) -> Result<RiemannSpectrum> {
    let system = couple(content, scales, DispersivePart::Zero)?;
    let corr = system.low_frequency_correlations()?;
    riemann_from_metric(&corr.sigma_hh, content.d)
}

/// Outcome of the correlation identities `σ_GG = κ²σ_TT`, `σ_GT = κσ_TT`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    /// Largest `|σ_GG / (κ² σ_TT) - 1|` over matched terms.
    pub gg_deviation: f64,
    /// Largest `|σ_GT / (κ σ_TT) - 1|` over matched terms.
    pub gt_deviation: f64,
    /// Terms in `σ_GG` or `σ_GT` without a counterpart in `σ_TT`.
    pub unmatched_terms: usize,
    pub terms_checked: usize,
}

impl IdentityReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.unmatched_terms == 0 && self.gg_deviation <= tol && self.gt_deviation <= tol
    }
}

fn compare_terms(lhs: &SpectralDensity, rhs: &SpectralDensity, factor: f64) -> (f64, usize, usize) {
    let (mut dev, mut unmatched, mut checked) = (0.0f64, 0, 0);
    for t in &lhs.terms {
        let mate = rhs.terms.iter().find(|o| SpectralTerm { coeff: t.coeff, ..(*o).clone() } == *t);
        match mate {
            Some(o) => {
                checked += 1;
                dev = dev.max((t.coeff / (factor * o.coeff) - 1.0).abs());
            }
            None => unmatched += 1,
        }
    }
    unmatched += rhs.terms.len().saturating_sub(checked);
    (dev, unmatched, checked)
}

/// Checks the low-frequency stochastic identities `G = κT = κT^in` term by term.
pub fn stochastic_identities_check(content: &FieldContent, scales: &PhysicalScales) -> Result<IdentityReport> {
    let system = couple(content, scales, DispersivePart::Zero)?;
    let corr = system.low_frequency_correlations()?;
    let d = content.d;
    let kappa = scales.kappa();
    let f = einstein_channel_factor(d)?;
    let sigma_gg = merge_like_terms(&einstein_correlation(&corr.sigma_hh, d)?);
    let sigma_gt = merge_like_terms(&corr.sigma_th.scale_channels(f).times_k2_power(Exponent::from_integer(1)));
    let tt = merge_like_terms(&corr.sigma_tt.filter(|t| !t.is_anomaly()));
    let (gg, u1, c1) = compare_terms(&sigma_gg, &tt, kappa * kappa);
    let (gt, u2, c2) = compare_terms(&sigma_gt, &tt, kappa);
    Ok(IdentityReport { gg_deviation: gg, gt_deviation: gt, unmatched_terms: u1 + u2, terms_checked: c1 + c2 })
}

/// Effective gravitation with distinct low-frequency channel couplings:
/// `κ_eff = κγ₀(0)`, `δγ₁ = (γ₁(0) - γ₀(0))/γ₀(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedGravity {
    pub kappa_eff: f64,
    pub delta_gamma1: f64,
}

/// Static point-mass metric coefficients multiplying `2πδ(k₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMassMetric {
    pub h00: f64,
    pub hii: f64,
}

impl PointMassMetric {
    pub fn ratio(&self) -> f64 {
        self.hii / self.h00
    }
}

impl ModifiedGravity {
    pub fn new(kappa_eff: f64, delta_gamma1: f64) -> Result<Self> {
        if !(kappa_eff.is_finite() && delta_gamma1.is_finite()) {
            return Err(Error::InvalidArgument("modified-gravity parameters must be finite".into()));
        }
        Ok(Self { kappa_eff, delta_gamma1 })
    }

    /// Standard coupling `κ_eff = 8πG`, `δγ₁ = 0`.
    pub fn einstein(scales: &PhysicalScales) -> Self {
        Self { kappa_eff: scales.kappa(), delta_gamma1: 0.0 }
    }

    /// Channel couplings `κγ_r = κ_eff (1, 1 + δγ₁)`.
    pub fn channel_couplings(&self) -> ChannelScalar {
        Channels::new(self.kappa_eff, self.kappa_eff * (1.0 + self.delta_gamma1))
    }

    /// Eddington parameter at `d = 4`: `(1 + δγ₁/3)/(1 - δγ₁/3)`.
    pub fn eddington_gamma(&self) -> Result<f64> {
        let x = self.delta_gamma1;
        if x == 3.0 {
            return Err(Error::EddingtonPole);
        }
        if x.abs() >= 3.0 {
            return Err(Error::DeltaGammaOutOfRange(x));
        }
        Ok((1.0 + x / 3.0) / (1.0 - x / 3.0))
    }

    /// Metric of a static point mass `m` at spatial momentum `k` (with `k₀ = 0`):
    /// `h₀₀ = κ_eff m/k² · 2/(d-2) (d - 3 - δγ₁/(d-1))`,
    /// `h_ii = κ_eff m/k² · 2/(d-2) (1 + δγ₁/(d-1))`.
    pub fn point_mass_metric(&self, m: f64, k: &Momentum) -> Result<PointMassMetric> {
        let d = k.dim();
        d.require_at_least("point-mass metric", 4)?;
        if k.k0() != 0.0 {
            return Err(Error::InvalidArgument("point-mass metric needs a static momentum (k0 = 0)".into()));
        }
        let k2 = k.k2();
        if k2 == 0.0 {
            return Err(Error::InvalidArgument("point-mass metric needs nonzero spatial momentum".into()));
        }
        let n = d.as_f64();
        let pref = self.kappa_eff * m / k2 * 2.0 / (n - 2.0);
        let x = self.delta_gamma1 / (n - 1.0);
        Ok(PointMassMetric { h00: pref * (n - 3.0 - x), hii: pref * (1.0 + x) })
    }

    /// Proper metric correlation with channel terms `2πκγ_r λ_r δ(k²)`.
    pub fn metric_spectrum(&self, hbar: f64, d: Dimension) -> Result<ProperMetricSpectrum> {
        require_gravity_dimension(d)?;
        let lam = lambda(d)?;
        let kg = self.channel_couplings();
        let terms = Channel::ALL
            .iter()
            .map(|&r| SpectralTerm::on_shell(Structure::Channel(r), 2.0 * PI * kg.get(r) * lam.get(r)))
            .collect();
        Ok(ProperMetricSpectrum { d, density: SpectralDensity::symmetrized(hbar, terms) })
    }

    /// Riemann coefficients `a = 2πκδ Σ λ_r γ_r α_r`, `b = 2πκδ Σ λ_r γ_r β_r`.
    pub fn riemann_coeffs(&self, hbar: f64, d: Dimension) -> Result<RiemannSpectrum> {
        riemann_from_metric(&self.metric_spectrum(hbar, d)?.density, d)
    }

    /// Correlation of `Σ_r G^r/γ_r` under the modified proper fluctuations.
    pub fn reduced_einstein_correlation(&self, hbar: f64, d: Dimension) -> Result<SpectralDensity> {
        let spectrum = self.metric_spectrum(hbar, d)?;
        let kg = self.channel_couplings();
        // γ_r relative to κ_eff; the overall κ normalization cancels in the test for zero
        let gamma = kg.map(|_, x| x / self.kappa_eff);
        let f = einstein_channel_factor(d)?;
        Ok(spectrum
            .density
            .scale_channels(f.zip(gamma, |x, g| (x / g) * (x / g)))
            .times_k2_power(Exponent::from_integer(2))
            .pruned())
    }
}

/// Convenience for [`ModifiedGravity::eddington_gamma`].
pub fn eddington_gamma(m: &ModifiedGravity) -> Result<f64> {
    m.eddington_gamma()
}

/// Convenience for [`ModifiedGravity::riemann_coeffs`].
pub fn modified_riemann_coeffs(m: &ModifiedGravity, scales: &PhysicalScales, d: Dimension) -> Result<RiemannSpectrum> {
    m.riemann_coeffs(scales.hbar, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matter::FieldSpecies;

    fn d4() -> Dimension {
        Dimension::new(4).unwrap()
    }

    #[test]
    fn proper_metric_d4() {
        let s = PhysicalScales::new(1.0, 0.5).unwrap();
        let p = proper_metric_spectrum(&s, d4()).unwrap();
        let c = p.density.shell_channels(1.0);
        let k = s.kappa();
        assert!((c.c0 - 2.0 * PI * k).abs() < 1e-14);
        assert!((c.c1 + PI * k).abs() < 1e-14);
        assert!(p.einstein_contraction().unwrap().is_empty());
        assert!(proper_metric_spectrum(&s, Dimension::new(2).unwrap()).is_err());
    }

    #[test]
    fn proper_riemann_d4() {
        let s = PhysicalScales::new(1.0, 0.3).unwrap();
        let r = proper_riemann_coeffs(&s, d4()).unwrap();
        let (a, b) = r.shell_coefficients();
        let k = s.kappa();
        assert!((a + PI * k).abs() < 1e-13);
        assert!((b - PI * k).abs() < 1e-13);
    }

    #[test]
    fn eddington_values() {
        let m = |x| ModifiedGravity::new(1.0, x).unwrap();
        assert_eq!(m(0.0).eddington_gamma().unwrap(), 1.0);
        assert!((m(1.5).eddington_gamma().unwrap() - 3.0).abs() < 1e-15);
        assert_eq!(m(3.0).eddington_gamma(), Err(Error::EddingtonPole));
        assert!(matches!(m(-4.0).eddington_gamma(), Err(Error::DeltaGammaOutOfRange(_))));
    }

    #[test]
    fn point_mass_d5() {
        let k = Momentum::new(vec![0.0, 0.3, 0.1, -0.2, 0.5]).unwrap();
        let pm = ModifiedGravity::new(2.0, 0.0).unwrap().point_mass_metric(1.0, &k).unwrap();
        assert!((pm.ratio() - 0.5).abs() < 1e-15);
        let zero = Momentum::new(vec![0.0; 4]).unwrap();
        assert!(ModifiedGravity::new(1.0, 0.0).unwrap().point_mass_metric(1.0, &zero).is_err());
    }

    #[test]
    fn gamma_decouples_without_content_coefficients() {
        // Maxwell at d = 4 has ζ₁ = 0, so γ₁ = 1 exactly at every k².
        let content = FieldContent::new(d4(), vec![FieldSpecies::maxwell(1)]).unwrap();
        let sys = couple(&content, &PhysicalScales::default(), DispersivePart::Zero).unwrap();
        for k2 in [1e-6, 0.01, 0.5] {
            assert_eq!(sys.gamma(k2).unwrap().c1, Complex64::new(1.0, 0.0));
        }
        assert_eq!(sys.gamma(0.0).unwrap().c0, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn stress_polarization_below_threshold_is_zero() {
        let content = FieldContent::new(d4(), vec![FieldSpecies::massive_scalar(1.0, 1).unwrap()]).unwrap();
        let k = Momentum::new(vec![1.5, 0.0, 0.0, 0.2]).unwrap();
        let h = Tensor2::from_fn(d4(), |m, n| (m + n) as f64 * 0.1);
        let p = stress_polarization(&h, &k, &content, &PhysicalScales::default()).unwrap();
        assert_eq!(p.max_abs(), 0.0);
    }
}
