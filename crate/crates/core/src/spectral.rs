//! Momentum-domain correlation and susceptibility functions as finite sums
//! of distributional terms, and the vacuum fluctuation-dissipation relations
//! connecting them.
//!
//! A [`SpectralDensity`] is never sampled on a grid. Regular parts
//! (`θ(k² - t)` interiors) can be read pointwise; `δ(k²)` shells are only
//! meaningful under an integral, see [`SpectralDensity::integrate_against`].

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::quadrature::{self, AdaptiveOptions, GaussLegendre};
use crate::tensor::{Channel, ChannelScalar, Channels};

/// Exact exponent `p` of `(k²)^p`; integer or half-integer in practice.
pub type Exponent = Ratio<i64>;

/// Where a term lives in momentum space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// Carries `δ(k²)`.
    OnShell,
    /// Carries `θ(k² - threshold)`.
    Interior { threshold: f64 },
    /// Plain function of `k²`, no support restriction.
    Everywhere,
    /// Principal value `PV 1/k²`.
    PrincipalValue,
    /// Feynman pole `1/(k² - iε)`; only in response densities.
    FeynmanPole,
}

/// Frequency dependence multiplying a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqFactor {
    One,
    /// `θ(k₀)`
    StepPositive,
    /// `sgn(k₀)`
    Sign,
}

impl FreqFactor {
    pub fn eval(self, k0: f64) -> f64 {
        match self {
            FreqFactor::One => 1.0,
            FreqFactor::StepPositive => {
                if k0 > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            FreqFactor::Sign => {
                if k0 > 0.0 {
                    1.0
                } else if k0 < 0.0 {
                    -1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// Tensor structure a term's coefficient multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// The channel form `π^r_{μνρσ}`.
    Channel(Channel),
    /// A scalar density (e.g. Riemann coefficients `a`, `b`).
    Scalar,
    /// The two-dimensional `k_μ k_ν k_ρ k_σ δ(k²)` structure.
    Anomaly,
}

/// Real or imaginary part of a response coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Real,
    Imaginary,
}

/// Extra `k²`-dependence of massive-field coefficients:
/// `(1 - 4μ²/k²)^exponent · (1 - 4λμ²/k²)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Massless,
    MassThreshold { mu2: f64, exponent: f64, lambda: f64 },
}

impl Shape {
    pub fn eval(self, k2: f64) -> f64 {
        match self {
            Shape::Massless => 1.0,
            Shape::MassThreshold { mu2, exponent, lambda } => {
                if k2 <= 4.0 * mu2 {
                    return 0.0;
                }
                let x = 4.0 * mu2 / k2;
                (1.0 - x).powf(exponent) * (1.0 - lambda * x).powi(2)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTerm {
    pub support: Support,
    pub power: Exponent,
    pub freq: FreqFactor,
    pub structure: Structure,
    pub coeff: f64,
    pub shape: Shape,
    pub phase: Phase,
}

fn pow_k2(k2: f64, p: Exponent) -> f64 {
    if p.is_integer() {
        k2.powi(p.to_integer() as i32)
    } else {
        k2.powf(p.to_f64().unwrap_or(f64::NAN))
    }
}

impl SpectralTerm {
    pub fn new(support: Support, power: Exponent, structure: Structure, coeff: f64) -> Self {
        Self {
            support,
            power,
            freq: FreqFactor::One,
            structure,
            coeff,
            shape: Shape::Massless,
            phase: Phase::Real,
        }
    }

    pub fn on_shell(structure: Structure, coeff: f64) -> Self {
        Self::new(Support::OnShell, Exponent::zero(), structure, coeff)
    }

    pub fn interior(threshold: f64, power: Exponent, structure: Structure, coeff: f64) -> Self {
        Self::new(Support::Interior { threshold }, power, structure, coeff)
    }

    pub fn with_shape(mut self, shape: Shape) -> Self {
        self.shape = shape;
        self
    }

    pub fn with_freq(mut self, freq: FreqFactor) -> Self {
        self.freq = freq;
        self
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn is_anomaly(&self) -> bool {
        self.structure == Structure::Anomaly
    }

    /// Whether the term is a distribution that cannot be read pointwise.
    pub fn is_singular(&self) -> bool {
        matches!(self.support, Support::OnShell)
    }

    /// Pointwise value of the regular part at `(k₀, k²)`. Shell terms give 0;
    /// a Feynman pole is read off-shell as `1/k²`.
    pub fn eval_regular(&self, k0: f64, k2: f64) -> f64 {
        let base = match self.support {
            Support::OnShell => return 0.0,
            Support::Interior { threshold } => {
                if k2 <= threshold {
                    return 0.0;
                }
                pow_k2(k2, self.power)
            }
            Support::Everywhere => pow_k2(k2, self.power),
            Support::PrincipalValue | Support::FeynmanPole => {
                if k2 == 0.0 {
                    return 0.0;
                }
                pow_k2(k2, self.power) / k2
            }
        };
        self.coeff * self.freq.eval(k0) * base * self.shape.eval(k2)
    }

    /// Weight of a shell term under `∫ dk² δ(k²)`, at frequency `k₀`.
    pub fn shell_weight(&self, k0: f64) -> f64 {
        match self.support {
            Support::OnShell if self.power.is_zero() => self.coeff * self.freq.eval(k0),
            _ => 0.0,
        }
    }

    /// Multiplies by `(k²)^n`. Shell terms that acquire a positive power
    /// vanish (`k² δ(k²) = 0`); returns `None` then.
    pub fn times_k2_power(&self, n: Exponent) -> Option<Self> {
        let mut t = self.clone();
        t.power += n;
        match t.support {
            Support::OnShell if t.power > Exponent::zero() => None,
            _ => Some(t),
        }
    }

    /// Structural contraction of `k^μ` into the first index of the term's
    /// tensor structure. Channel forms are transverse and vanish; the anomaly
    /// structure picks up `k²` and vanishes on the light cone.
    pub fn contract_momentum(&self) -> Result<Option<Self>> {
        match self.structure {
            Structure::Channel(_) => Ok(None),
            Structure::Anomaly => Ok(self.times_k2_power(Exponent::from_integer(1))),
            Structure::Scalar => {
                Err(Error::InvalidArgument("scalar densities carry no tensor index".into()))
            }
        }
    }
}

/// Which correlation or response function a density represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// `σ_AB`
    Symmetrized,
    /// `C_AB`
    Full,
    /// `ξ_AB`
    Commutator,
    /// `χ_AB`, complex coefficients through [`Phase`].
    Response,
}

impl DensityKind {
    fn name(self) -> &'static str {
        match self {
            DensityKind::Symmetrized => "symmetrized",
            DensityKind::Full => "full",
            DensityKind::Commutator => "commutator",
            DensityKind::Response => "response",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    pub kind: DensityKind,
    pub terms: Vec<SpectralTerm>,
    pub hbar: f64,
}

/// Settings for [`SpectralDensity::integrate_against`].
#[derive(Debug, Clone, Copy)]
pub struct IntegrationSettings {
    /// Gauss–Legendre nodes for the `k₃` integral of shell terms.
    pub shell_nodes: usize,
    /// Use adaptive quadrature for the shell `k₃` integral instead of the
    /// fixed rule (needed when the weight is not polynomial).
    pub shell_adaptive: bool,
    pub adaptive: AdaptiveOptions,
}

impl Default for IntegrationSettings {
    fn default() -> Self {
        Self { shell_nodes: 64, shell_adaptive: false, adaptive: AdaptiveOptions::default() }
    }
}

impl SpectralDensity {
    pub fn new(kind: DensityKind, hbar: f64) -> Self {
        Self { kind, terms: Vec::new(), hbar }
    }

    pub fn symmetrized(hbar: f64, terms: Vec<SpectralTerm>) -> Self {
        Self { kind: DensityKind::Symmetrized, terms, hbar }
    }

    pub fn push(&mut self, term: SpectralTerm) {
        self.terms.push(term);
    }

    pub fn with_term(mut self, term: SpectralTerm) -> Self {
        self.push(term);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn require(&self, kind: DensityKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::WrongKind { expected: kind.name(), found: self.kind.name() });
        }
        Ok(())
    }

    /// `C[k] = 2ħ θ(k₀) σ[k]`.
    pub fn to_full(&self) -> Result<Self> {
        self.require(DensityKind::Symmetrized)?;
        let terms = self
            .terms
            .iter()
            .map(|t| SpectralTerm { coeff: 2.0 * self.hbar * t.coeff, freq: FreqFactor::StepPositive, ..t.clone() })
            .collect();
        Ok(Self { kind: DensityKind::Full, terms, hbar: self.hbar })
    }

    /// `ξ[k] = sgn(k₀) σ[k]`.
    pub fn to_commutator(&self) -> Result<Self> {
        self.require(DensityKind::Symmetrized)?;
        let terms = self.terms.iter().map(|t| t.clone().with_freq(FreqFactor::Sign)).collect();
        Ok(Self { kind: DensityKind::Commutator, terms, hbar: self.hbar })
    }

    /// Inverse of [`to_full`](Self::to_full): `σ[k] = (C[k] + C[-k]) / 2ħ`.
    pub fn symmetrize(&self) -> Result<Self> {
        self.require(DensityKind::Full)?;
        let terms = self
            .terms
            .iter()
            .map(|t| {
                // θ(k₀) + θ(-k₀) = 1, 1 + 1 = 2, sgn parts cancel
                let weight = match t.freq {
                    FreqFactor::StepPositive => 1.0,
                    FreqFactor::One => 2.0,
                    FreqFactor::Sign => 0.0,
                };
                SpectralTerm { coeff: weight * t.coeff / (2.0 * self.hbar), freq: FreqFactor::One, ..t.clone() }
            })
            .filter(|t| t.coeff != 0.0)
            .collect();
        Ok(Self { kind: DensityKind::Symmetrized, terms, hbar: self.hbar })
    }

    pub fn scale(&self, s: f64) -> Self {
        let terms = self.terms.iter().map(|t| SpectralTerm { coeff: t.coeff * s, ..t.clone() }).collect();
        Self { terms, ..self.clone() }
    }

    /// Multiplies each channel term by a channel-dependent factor.
    pub fn scale_channels(&self, factors: ChannelScalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| match t.structure {
                Structure::Channel(r) => SpectralTerm { coeff: t.coeff * factors.get(r), ..t.clone() },
                _ => t.clone(),
            })
            .collect();
        Self { terms, ..self.clone() }
    }

    /// Term-list concatenation; kinds and `ħ` must agree.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        other.require(self.kind)?;
        if self.hbar != other.hbar {
            return Err(Error::InvalidArgument("cannot add densities with different hbar".into()));
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    /// Multiplies by `(k²)^n`, dropping shell terms that vanish.
    pub fn times_k2_power(&self, n: Exponent) -> Self {
        let terms = self.terms.iter().filter_map(|t| t.times_k2_power(n)).collect();
        Self { terms, ..self.clone() }
    }

    /// Structural contraction with `k^μ`; the result lists surviving terms.
    pub fn contract_momentum(&self) -> Result<Self> {
        let mut terms = Vec::new();
        for t in &self.terms {
            if let Some(t) = t.contract_momentum()? {
                terms.push(t);
            }
        }
        Ok(Self { terms, ..self.clone() })
    }

    /// Drops terms with zero coefficient.
    pub fn pruned(&self) -> Self {
        Self { terms: self.terms.iter().filter(|t| t.coeff != 0.0).cloned().collect(), ..self.clone() }
    }

    pub fn filter(&self, keep: impl Fn(&SpectralTerm) -> bool) -> Self {
        Self { terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(), ..self.clone() }
    }

    pub fn on_shell_part(&self) -> Self {
        self.filter(|t| t.support == Support::OnShell)
    }

    pub fn interior_part(&self) -> Self {
        self.filter(|t| matches!(t.support, Support::Interior { .. }))
    }

    /// Regular channel values at `(k₀, k²)`.
    pub fn regular_channels(&self, k0: f64, k2: f64) -> ChannelScalar {
        let mut out = ChannelScalar::default();
        for t in &self.terms {
            if let Structure::Channel(r) = t.structure {
                let v = t.eval_regular(k0, k2);
                match r {
                    Channel::Traceless => out.c0 += v,
                    Channel::Trace => out.c1 += v,
                }
            }
        }
        out
    }

    /// Regular value of the scalar-structure terms at `(k₀, k²)`.
    pub fn regular_scalar(&self, k0: f64, k2: f64) -> f64 {
        self.terms.iter().filter(|t| t.structure == Structure::Scalar).map(|t| t.eval_regular(k0, k2)).sum()
    }

    /// Shell weights per channel at frequency `k₀`.
    pub fn shell_channels(&self, k0: f64) -> ChannelScalar {
        let mut out = ChannelScalar::default();
        for t in &self.terms {
            if let Structure::Channel(r) = t.structure {
                let v = t.shell_weight(k0);
                match r {
                    Channel::Traceless => out.c0 += v,
                    Channel::Trace => out.c1 += v,
                }
            }
        }
        out
    }

    pub fn shell_scalar(&self, k0: f64) -> f64 {
        self.terms.iter().filter(|t| t.structure == Structure::Scalar).map(|t| t.shell_weight(k0)).sum()
    }

    /// Complex channel values of a response density at an off-shell point.
    pub fn response_channels(&self, k0: f64, k2: f64) -> Result<Channels<Complex64>> {
        self.require(DensityKind::Response)?;
        let mut out = Channels::new(Complex64::zero(), Complex64::zero());
        for t in &self.terms {
            if let Structure::Channel(r) = t.structure {
                let v = t.eval_regular(k0, k2);
                let z = match t.phase {
                    Phase::Real => Complex64::new(v, 0.0),
                    Phase::Imaginary => Complex64::new(0.0, v),
                };
                match r {
                    Channel::Traceless => out.c0 += z,
                    Channel::Trace => out.c1 += z,
                }
            }
        }
        Ok(out)
    }

    /// Every term carries `θ(k₀)`, so the density vanishes for `k₀ < 0`.
    pub fn has_only_positive_frequencies(&self) -> bool {
        self.terms.iter().all(|t| t.freq == FreqFactor::StepPositive)
    }

    /// Every term is supported on or inside the light cone.
    pub fn vanishes_for_spacelike(&self) -> bool {
        self.terms.iter().all(|t| match t.support {
            Support::OnShell => true,
            Support::Interior { threshold } => threshold >= 0.0,
            _ => false,
        })
    }

    /// Parity under `k → -k` of every term's frequency factor:
    /// `Some(true)` even, `Some(false)` odd, `None` mixed.
    pub fn frequency_parity(&self) -> Option<bool> {
        let even = |t: &SpectralTerm| t.freq == FreqFactor::One;
        let odd = |t: &SpectralTerm| t.freq == FreqFactor::Sign;
        if self.terms.iter().all(even) {
            Some(true)
        } else if self.terms.iter().all(odd) {
            Some(false)
        } else {
            None
        }
    }

    /// `∫ ds dk₃ ρ(ω, s) w(s, k₃)` over the region allowed by each term at
    /// `k₀ = ω`, `k² = ω² - s`, for the terms with the given structure.
    ///
    /// Shell terms collapse onto `s = ω²` and integrate `k₃ ∈ [-ω, ω]`.
    /// Interior terms integrate `{k₃² <= s <= ω² - threshold}`.
    pub fn integrate_against(
        &self,
        structure: Structure,
        omega: f64,
        weight: impl Fn(f64, f64) -> f64,
        settings: &IntegrationSettings,
    ) -> Result<f64> {
        if !(omega.is_finite()) {
            return Err(Error::InvalidArgument(format!("omega must be finite, got {omega}")));
        }
        let w2 = omega * omega;
        let gl = GaussLegendre::new(settings.shell_nodes.max(1));
        let mut total = 0.0;
        for t in self.terms.iter().filter(|t| t.structure == structure) {
            match t.support {
                Support::OnShell => {
                    let c = t.shell_weight(omega);
                    if c == 0.0 || omega == 0.0 {
                        continue;
                    }
                    let w = omega.abs();
                    let value = if settings.shell_adaptive {
                        quadrature::adaptive(-w, w, settings.adaptive, |k3| weight(w2, k3))?.value
                    } else {
                        gl.integrate(-w, w, |k3| weight(w2, k3))
                    };
                    total += c * value;
                }
                Support::Interior { threshold } => {
                    let s_max = w2 - threshold;
                    if s_max <= 0.0 || t.freq.eval(omega) == 0.0 {
                        continue;
                    }
                    let edge = s_max.sqrt();
                    let est = quadrature::adaptive_2d(
                        -edge,
                        edge,
                        |k3| k3 * k3,
                        |_| s_max,
                        settings.adaptive,
                        |k3, s| t.eval_regular(omega, w2 - s) * weight(s, k3),
                    )?;
                    total += est.value;
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "only shell and interior terms can be integrated".into(),
                    ))
                }
            }
        }
        Ok(total)
    }
}

/// Dispersive and dissipative parts of a response density.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseParts {
    /// `χ̄`, even, real coefficients.
    pub dispersive: SpectralDensity,
    /// `σ`, the symmetrized correlation (imaginary part of the Feynman response).
    pub dissipative: SpectralDensity,
}

impl ResponseParts {
    /// Feynman response `χ = χ̄ + iσ`.
    pub fn feynman(&self) -> SpectralDensity {
        let mut terms = self.dispersive.terms.clone();
        terms.extend(self.dissipative.terms.iter().map(|t| t.clone().with_phase(Phase::Imaginary)));
        SpectralDensity { kind: DensityKind::Response, terms, hbar: self.dispersive.hbar }
    }

    /// Retarded response `χ̄ + iξ`.
    pub fn retarded(&self) -> Result<SpectralDensity> {
        let xi = self.dissipative.to_commutator()?;
        let mut terms = self.dispersive.terms.clone();
        terms.extend(xi.terms.into_iter().map(|t| t.with_phase(Phase::Imaginary)));
        Ok(SpectralDensity { kind: DensityKind::Response, terms, hbar: self.dispersive.hbar })
    }

    /// Advanced response `χ̄ - iξ`.
    pub fn advanced(&self) -> Result<SpectralDensity> {
        let xi = self.dissipative.to_commutator()?.scale(-1.0);
        let mut terms = self.dispersive.terms.clone();
        terms.extend(xi.terms.into_iter().map(|t| t.with_phase(Phase::Imaginary)));
        Ok(SpectralDensity { kind: DensityKind::Response, terms, hbar: self.dispersive.hbar })
    }
}

/// Splits a Feynman response into dispersive and dissipative parts, using
/// `1/(k² - iε) = PV 1/k² + iπ δ(k²)` for pole terms.
pub fn response_parts(chi: &SpectralDensity) -> Result<ResponseParts> {
    chi.require(DensityKind::Response)?;
    let mut dispersive = Vec::new();
    let mut dissipative = Vec::new();
    for t in &chi.terms {
        match (t.support, t.phase) {
            (Support::FeynmanPole, phase) => {
                let pv = SpectralTerm { support: Support::PrincipalValue, phase: Phase::Real, ..t.clone() };
                let shell = SpectralTerm {
                    support: Support::OnShell,
                    coeff: std::f64::consts::PI * t.coeff,
                    phase: Phase::Real,
                    ..t.clone()
                };
                match phase {
                    Phase::Real => {
                        dispersive.push(pv);
                        dissipative.push(shell);
                    }
                    // i·(PV + iπδ) = -πδ + i·PV
                    Phase::Imaginary => {
                        dispersive.push(SpectralTerm { coeff: -shell.coeff, ..shell });
                        dissipative.push(pv);
                    }
                }
            }
            (_, Phase::Real) => dispersive.push(t.clone()),
            (_, Phase::Imaginary) => dissipative.push(SpectralTerm { phase: Phase::Real, ..t.clone() }),
        }
    }
    Ok(ResponseParts {
        dispersive: SpectralDensity { kind: DensityKind::Response, terms: dispersive, hbar: chi.hbar },
        dissipative: SpectralDensity { kind: DensityKind::Symmetrized, terms: dissipative, hbar: chi.hbar },
    })
}

/// `ħ` and Newton's constant in natural units (`c = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    pub hbar: f64,
    pub g_newton: f64,
}

impl Default for PhysicalScales {
    fn default() -> Self {
        Self { hbar: 1.0, g_newton: 1.0 }
    }
}

impl PhysicalScales {
    pub fn new(hbar: f64, g_newton: f64) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite() && g_newton > 0.0 && g_newton.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "hbar and G must be positive and finite, got hbar = {hbar}, G = {g_newton}"
            )));
        }
        Ok(Self { hbar, g_newton })
    }

    /// Scales with a given Planck length: `G = l_P² / ħ`.
    pub fn from_planck_length(planck_length: f64, hbar: f64) -> Result<Self> {
        Self::new(hbar, planck_length * planck_length / hbar)
    }

    /// `κ = 8πG`.
    pub fn kappa(&self) -> f64 {
        8.0 * std::f64::consts::PI * self.g_newton
    }

    /// `l_P² = ħG`.
    pub fn planck_length_sq(&self) -> f64 {
        self.hbar * self.g_newton
    }

    pub fn planck_length(&self) -> f64 {
        self.planck_length_sq().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_interior() -> SpectralTerm {
        SpectralTerm::interior(0.0, Exponent::zero(), Structure::Scalar, 1.0)
    }

    #[test]
    fn to_full_doubles_with_step() {
        let s = SpectralDensity::symmetrized(1.0, vec![unit_interior()]);
        let c = s.to_full().unwrap();
        assert_eq!(c.terms[0].coeff, 2.0);
        assert_eq!(c.terms[0].freq, FreqFactor::StepPositive);
        assert!(c.has_only_positive_frequencies());
        let empty = SpectralDensity::symmetrized(1.0, vec![]).to_full().unwrap();
        assert!(empty.is_empty());
        assert!(matches!(c.to_full(), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn full_round_trip() {
        let s = SpectralDensity::symmetrized(
            0.7,
            vec![unit_interior(), SpectralTerm::on_shell(Structure::Channel(Channel::Trace), -3.5)],
        );
        assert_eq!(s.to_full().unwrap().symmetrize().unwrap(), s);
    }

    #[test]
    fn commutator_is_odd() {
        let s = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::interior(
            0.0,
            Exponent::from_integer(1),
            Structure::Scalar,
            1.5,
        )]);
        assert_eq!(s.frequency_parity(), Some(true));
        let xi = s.to_commutator().unwrap();
        assert_eq!(xi.frequency_parity(), Some(false));
        let v = s.regular_scalar(2.0, 1.0);
        assert_eq!(xi.regular_scalar(2.0, 1.0), v);
        assert_eq!(xi.regular_scalar(-2.0, 1.0), -v);
    }

    #[test]
    fn pole_splits_into_pv_and_shell() {
        let kappa = 3.0;
        let lam = -0.5;
        let chi = SpectralDensity {
            kind: DensityKind::Response,
            terms: vec![SpectralTerm::new(
                Support::FeynmanPole,
                Exponent::zero(),
                Structure::Channel(Channel::Trace),
                2.0 * kappa * lam,
            )],
            hbar: 1.0,
        };
        let parts = response_parts(&chi).unwrap();
        assert_eq!(parts.dissipative.terms.len(), 1);
        let t = &parts.dissipative.terms[0];
        assert_eq!(t.support, Support::OnShell);
        assert_eq!(t.coeff, 2.0 * std::f64::consts::PI * kappa * lam);
        assert_eq!(parts.dispersive.terms[0].support, Support::PrincipalValue);
    }

    #[test]
    fn real_constant_has_no_dissipation() {
        let chi = SpectralDensity {
            kind: DensityKind::Response,
            terms: vec![SpectralTerm::new(Support::Everywhere, Exponent::zero(), Structure::Scalar, 4.0)],
            hbar: 1.0,
        };
        assert!(response_parts(&chi).unwrap().dissipative.is_empty());
    }

    #[test]
    fn shell_collapse_weight_one() {
        let d = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::on_shell(Structure::Scalar, 0.25)]);
        let v = d.integrate_against(Structure::Scalar, 1.0, |_, _| 1.0, &Default::default()).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
    }

    #[test]
    fn shell_polynomial_weight() {
        let d = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::on_shell(Structure::Scalar, 1.0)]);
        for omega in [0.5, 1.0, 3.0] {
            let v = d
                .integrate_against(Structure::Scalar, omega, |s, k3| (s - k3 * k3).powi(2), &Default::default())
                .unwrap();
            let expect = 16.0 / 15.0 * omega.powi(5);
            assert!(((v - expect) / expect).abs() < 1e-13);
        }
    }

    #[test]
    fn interior_polynomial_matches_antiderivative() {
        // ∫_{-ω}^{ω} dk₃ ∫_{k₃²}^{ω²} ds (ω² - s) s = ω⁷ · 8/35 · ... computed symbolically:
        // inner = ω² (ω⁴ - k⁴)/2 - (ω⁶ - k⁶)/3, outer over k ∈ [-ω, ω]
        let omega: f64 = 1.7;
        let d = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::interior(
            0.0,
            Exponent::from_integer(1),
            Structure::Scalar,
            1.0,
        )]);
        let v = d.integrate_against(Structure::Scalar, omega, |s, _| s, &Default::default()).unwrap();
        let w = omega;
        let anti = |k: f64| {
            w * w * (w.powi(4) * k - k.powi(5) / 5.0) / 2.0 - (w.powi(6) * k - k.powi(7) / 7.0) / 3.0
        };
        let expect = anti(w) - anti(-w);
        assert!(((v - expect) / expect).abs() < 1e-9, "{v} vs {expect}");
    }

    #[test]
    fn anomaly_contraction_vanishes() {
        let d = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::on_shell(Structure::Anomaly, 1.0 / 12.0)]);
        assert!(d.contract_momentum().unwrap().is_empty());
    }

    #[test]
    fn planck_relation() {
        let s = PhysicalScales::new(1.3, 0.2).unwrap();
        let lhs = s.planck_length_sq();
        let rhs = s.hbar * s.kappa() / (8.0 * std::f64::consts::PI);
        assert!((lhs - rhs).abs() <= 1e-15 * lhs);
        let p = PhysicalScales::from_planck_length(1e-3, 1.0).unwrap();
        assert!((p.planck_length() - 1e-3).abs() < 1e-18);
    }
}
