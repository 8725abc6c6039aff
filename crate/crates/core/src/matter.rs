//! Channel coefficients `ζ_r` of vacuum stress-tensor noise for scalar,
//! Maxwell and neutrino fields in `d` dimensions.
//!
//! The symmetrized stress-tensor spectrum of a field content is
//! `σ_TT = (k²)² σ Σ_r ζ_r π^r` with `σ = ħπ (k²)^{d/2-2} θ(k²)`; at `d = 2`
//! massless scalars add the lightcone term `(ħ/12) k_μ k_ν k_ρ k_σ δ(k²)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exact::{stress_prefactor, PiRational};
use crate::spectral::{Exponent, PhysicalScales, Shape, SpectralDensity, SpectralTerm, Structure};
use crate::tensor::{lambda, Channel, ChannelScalar, Channels, Dimension};

/// Exact channel pair.
pub type ExactChannels = Channels<PiRational>;

impl ExactChannels {
    pub fn to_f64(&self) -> ChannelScalar {
        Channels::new(self.c0.to_f64(), self.c1.to_f64())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Scalar,
    Maxwell,
    /// Massless neutrino; contributes one fourth of a Maxwell field.
    Neutrino,
}

impl FieldKind {
    pub fn name(self) -> &'static str {
        match self {
            FieldKind::Scalar => "scalar",
            FieldKind::Maxwell => "maxwell",
            FieldKind::Neutrino => "neutrino",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSpecies {
    pub kind: FieldKind,
    pub mass: f64,
    pub multiplicity: u32,
}

impl FieldSpecies {
    pub fn new(kind: FieldKind, mass: f64, multiplicity: u32) -> Result<Self> {
        if multiplicity == 0 {
            return Err(Error::InvalidSpecies(format!("{} multiplicity must be >= 1", kind.name())));
        }
        if !(mass >= 0.0 && mass.is_finite()) {
            return Err(Error::InvalidSpecies(format!("{} mass must be finite and >= 0", kind.name())));
        }
        if kind != FieldKind::Scalar && mass != 0.0 {
            return Err(Error::InvalidSpecies(format!("{} fields are massless in this model", kind.name())));
        }
        Ok(Self { kind, mass, multiplicity })
    }

    pub fn scalar(multiplicity: u32) -> Self {
        Self { kind: FieldKind::Scalar, mass: 0.0, multiplicity }
    }

    pub fn massive_scalar(mass: f64, multiplicity: u32) -> Result<Self> {
        Self::new(FieldKind::Scalar, mass, multiplicity)
    }

    pub fn maxwell(multiplicity: u32) -> Self {
        Self { kind: FieldKind::Maxwell, mass: 0.0, multiplicity }
    }

    pub fn neutrinos(count: u32) -> Self {
        Self { kind: FieldKind::Neutrino, mass: 0.0, multiplicity: count }
    }

    /// Pair-production threshold `4μ²` on `k²`.
    pub fn threshold(&self) -> f64 {
        4.0 * self.mass * self.mass
    }

    /// Massless coefficients of one field of this kind, exact.
    pub fn exact_massless(&self, d: Dimension) -> ExactChannels {
        match self.kind {
            FieldKind::Scalar => zeta_scalar_massless_exact(d),
            FieldKind::Maxwell => zeta_maxwell_exact(d),
            FieldKind::Neutrino => {
                let q = BigRational::new(1.into(), 4.into());
                let m = zeta_maxwell_exact(d);
                Channels::new(m.c0.scale(&q), m.c1.scale(&q))
            }
        }
    }

    /// `multiplicity × ζ_r(k²)` for this species.
    pub fn zeta(&self, d: Dimension, k2: f64) -> Result<ChannelScalar> {
        let base = if self.mass > 0.0 {
            zeta_scalar_massive(d, self.mass, k2)?
        } else {
            self.exact_massless(d).to_f64()
        };
        Ok(base.scale(f64::from(self.multiplicity)))
    }

    fn shape(&self, d: Dimension, r: Channel) -> Result<Shape> {
        if self.mass == 0.0 {
            return Ok(Shape::Massless);
        }
        d.require_at_least("massive scalar coefficients", 3)?;
        Ok(Shape::MassThreshold {
            mu2: self.mass * self.mass,
            exponent: (d.as_f64() - 3.0) / 2.0,
            lambda: lambda(d)?.get(r),
        })
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Massless scalar: `ζ₀ = (4π)^{-d/2} Γ(d/2+1)/Γ(d+2)`, `ζ₁ = (d-2)²(d+1)/2 · ζ₀`.
pub fn zeta_scalar_massless_exact(d: Dimension) -> ExactChannels {
    let n = d.get() as i64;
    let z0 = stress_prefactor(d.get() as u64);
    let factor = BigRational::new(BigInt::from((n - 2) * (n - 2) * (n + 1)), BigInt::from(2));
    let z1 = z0.scale(&factor);
    Channels::new(z0, z1)
}

/// Maxwell: `ζ₀ = P·(2d² - 3d - 8)`, `ζ₁ = P/2 · (d-4)²(d-2)(d+1)` with the
/// common prefactor `P = (4π)^{-d/2} Γ(d/2+1)/Γ(d+2)`.
pub fn zeta_maxwell_exact(d: Dimension) -> ExactChannels {
    let n = d.get() as i64;
    let p = stress_prefactor(d.get() as u64);
    let z0 = p.scale(&rational(2 * n * n - 3 * n - 8));
    let z1 = p.scale(&BigRational::new(BigInt::from((n - 4) * (n - 4) * (n - 2) * (n + 1)), BigInt::from(2)));
    Channels::new(z0, z1)
}

pub fn zeta_scalar_massless(d: Dimension) -> ChannelScalar {
    zeta_scalar_massless_exact(d).to_f64()
}

pub fn zeta_maxwell(d: Dimension) -> ChannelScalar {
    zeta_maxwell_exact(d).to_f64()
}

/// Massive scalar of mass `μ`:
/// `ζ_r = ζ_r{μ=0} θ(k² - 4μ²) (1 - 4μ²/k²)^{(d-3)/2} (1 - 4λ_r μ²/k²)²`.
/// Zero at and below threshold (including `k² <= 0`). Requires `d >= 3`.
pub fn zeta_scalar_massive(d: Dimension, mu: f64, k2: f64) -> Result<ChannelScalar> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!("mass must be finite and >= 0, got {mu}")));
    }
    let massless = zeta_scalar_massless(d);
    if mu == 0.0 {
        return Ok(massless);
    }
    d.require_at_least("massive scalar coefficients", 3)?;
    let lam = lambda(d)?;
    let exponent = (d.as_f64() - 3.0) / 2.0;
    Ok(massless.map(|r, z| {
        z * Shape::MassThreshold { mu2: mu * mu, exponent, lambda: lam.get(r) }.eval(k2)
    }))
}

/// A multiset of field species in a given dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldContent {
    pub d: Dimension,
    pub species: Vec<FieldSpecies>,
}

impl FieldContent {
    pub fn new(d: Dimension, species: Vec<FieldSpecies>) -> Result<Self> {
        if species.is_empty() {
            return Err(Error::EmptyContent);
        }
        for s in &species {
            FieldSpecies::new(s.kind, s.mass, s.multiplicity)?;
            if s.mass > 0.0 {
                d.require_at_least("massive scalar coefficients", 3)?;
            }
        }
        Ok(Self { d, species })
    }

    /// One Maxwell field plus `n_nu` massless neutrinos.
    pub fn standard(d: Dimension, n_nu: u32) -> Self {
        let mut species = vec![FieldSpecies::maxwell(1)];
        if n_nu > 0 {
            species.push(FieldSpecies::neutrinos(n_nu));
        }
        Self { d, species }
    }

    pub fn is_massless(&self) -> bool {
        self.species.iter().all(|s| s.mass == 0.0)
    }

    /// Largest pair-production threshold.
    pub fn max_threshold(&self) -> f64 {
        self.species.iter().map(FieldSpecies::threshold).fold(0.0, f64::max)
    }

    /// Aggregate `ζ_r(k²)`.
    pub fn zeta(&self, k2: f64) -> Result<ChannelScalar> {
        if self.species.is_empty() {
            return Err(Error::EmptyContent);
        }
        self.species.iter().try_fold(ChannelScalar::default(), |acc, s| Ok(acc + s.zeta(self.d, k2)?))
    }

    /// Aggregate exact coefficients; `None` when the content has massive fields.
    pub fn exact_zeta(&self) -> Option<ExactChannels> {
        if !self.is_massless() {
            return None;
        }
        let mut acc = Channels::new(PiRational::zero(), PiRational::zero());
        for s in &self.species {
            let m = rational(i64::from(s.multiplicity));
            let z = s.exact_massless(self.d);
            acc = Channels::new((&acc.c0 + &z.c0.scale(&m))?, (&acc.c1 + &z.c1.scale(&m))?);
        }
        Some(acc)
    }

    /// Symmetrized stress-tensor spectrum `σ_TT` as a density over channel
    /// forms (plus the anomaly structure for massless scalars at `d = 2`).
    pub fn stress_spectrum(&self, scales: &PhysicalScales) -> Result<SpectralDensity> {
        if self.species.is_empty() {
            return Err(Error::EmptyContent);
        }
        let d = self.d;
        let hbar = scales.hbar;
        // (k²)² σ = ħπ (k²)^{d/2}
        let power = Exponent::new(d.get() as i64, 2);
        let mut density = SpectralDensity::symmetrized(hbar, Vec::new());
        for s in &self.species {
            let zeta = s.exact_massless(d).to_f64().scale(f64::from(s.multiplicity));
            for r in Channel::ALL {
                let coeff = hbar * std::f64::consts::PI * zeta.get(r);
                if coeff == 0.0 {
                    continue;
                }
                density.push(
                    SpectralTerm::interior(s.threshold(), power, Structure::Channel(r), coeff)
                        .with_shape(s.shape(d, r)?),
                );
            }
            if d.get() == 2 && s.kind == FieldKind::Scalar && s.mass == 0.0 {
                let mut t = d2_anomaly_term(d, hbar)?;
                t.coeff *= f64::from(s.multiplicity);
                density.push(t);
            }
        }
        Ok(density)
    }
}

/// The `d = 2` lightcone term `(ħ/12) k_μ k_ν k_ρ k_σ δ(k²)` of one massless scalar.
pub fn d2_anomaly_term(d: Dimension, hbar: f64) -> Result<SpectralTerm> {
    d.require_exactly("two-dimensional anomaly term", 2)?;
    Ok(SpectralTerm::on_shell(Structure::Anomaly, hbar / 12.0))
}
