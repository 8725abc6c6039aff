use proptest::prelude::*;

use vacnoise::matter::{FieldContent, FieldSpecies};
use vacnoise::spectral::{
    response_parts, DensityKind, Exponent, FreqFactor, PhysicalScales, SpectralDensity, SpectralTerm, Structure,
    Support,
};
use vacnoise::tensor::{Channel, Dimension};

fn content(d: usize, n_scalar: u32, n_nu: u32, mass: f64) -> FieldContent {
    let mut species = vec![FieldSpecies::maxwell(1), FieldSpecies::scalar(n_scalar.max(1))];
    if n_nu > 0 {
        species.push(FieldSpecies::neutrinos(n_nu));
    }
    if mass > 0.0 && d >= 3 {
        species.push(FieldSpecies::massive_scalar(mass, 1).unwrap());
    }
    FieldContent::new(Dimension::new(d).unwrap(), species).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `σ = (C[k] + C[-k]) / 2ħ` inverts `C = 2ħθ(k₀)σ`.
    #[test]
    fn full_then_symmetrize_round_trips(
        d in 2usize..=7, ns in 1u32..4, nn in 0u32..4, mass in 0.0f64..1.0, hbar in 0.1f64..3.0,
    ) {
        let scales = PhysicalScales::new(hbar, 1.0).unwrap();
        let sigma = content(d, ns, nn, mass).stress_spectrum(&scales).unwrap();
        let back = sigma.to_full().unwrap().symmetrize().unwrap();
        prop_assert_eq!(back.terms.len(), sigma.terms.len());
        for (a, b) in back.terms.iter().zip(&sigma.terms) {
            prop_assert!((a.coeff - b.coeff).abs() <= 1e-15 * b.coeff.abs());
            prop_assert_eq!(a.freq, b.freq);
        }
    }

    /// `C[k] - C[-k] = 2ħ ξ[k]` pointwise inside the light cone.
    #[test]
    fn full_and_commutator_agree(
        d in 3usize..=6, k0 in 0.1f64..4.0, frac in 0.05f64..1.0, hbar in 0.1f64..3.0,
    ) {
        let scales = PhysicalScales::new(hbar, 1.0).unwrap();
        let sigma = content(d, 1, 2, 0.1).stress_spectrum(&scales).unwrap();
        let full = sigma.to_full().unwrap();
        let xi = sigma.to_commutator().unwrap();
        let k2 = frac * k0 * k0;
        let lhs = full.regular_channels(k0, k2) + full.regular_channels(-k0, k2).scale(-1.0);
        let rhs = xi.regular_channels(k0, k2).scale(2.0 * hbar);
        for r in Channel::ALL {
            prop_assert!((lhs.get(r) - rhs.get(r)).abs() <= 1e-13 * rhs.get(r).abs().max(1e-300));
        }
        prop_assert_eq!(xi.frequency_parity(), Some(false));
        prop_assert_eq!(sigma.frequency_parity(), Some(true));
    }

    #[test]
    fn stress_spectra_vanish_outside_the_light_cone(d in 3usize..=8, k0 in -3.0f64..3.0, k2 in -5.0f64..0.0) {
        let scales = PhysicalScales::default();
        let sigma = content(d, 2, 1, 0.3).stress_spectrum(&scales).unwrap();
        prop_assert!(sigma.vanishes_for_spacelike());
        prop_assert_eq!(sigma.regular_channels(k0, k2), Default::default());
    }

    /// Interior integral of a constant density over `{k₃² <= s <= ω²}` is `4ω³/3`.
    #[test]
    fn interior_integration_matches_area(omega in 0.1f64..5.0, c in 0.1f64..3.0) {
        let t = SpectralTerm::interior(0.0, Exponent::from_integer(0), Structure::Scalar, c);
        let density = SpectralDensity::symmetrized(1.0, vec![t]);
        let v = density
            .integrate_against(Structure::Scalar, omega, |_, _| 1.0, &Default::default())
            .unwrap();
        let exact = c * 4.0 * omega.powi(3) / 3.0;
        prop_assert!((v - exact).abs() <= 1e-6 * exact);
    }
}

#[test]
fn kinds_are_enforced() {
    let sigma = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::on_shell(Structure::Scalar, 1.0)]);
    let full = sigma.to_full().unwrap();
    assert!(full.to_full().is_err());
    assert!(sigma.symmetrize().is_err());
    assert!(full.has_only_positive_frequencies());
    assert_eq!(full.shell_scalar(-1.0), 0.0);
    assert_eq!(full.shell_scalar(1.0), 2.0);
}

#[test]
fn feynman_pole_splits_into_principal_value_and_shell() {
    let pole = SpectralTerm::new(Support::FeynmanPole, Exponent::from_integer(0), Structure::Channel(Channel::Traceless), 3.0);
    let chi = SpectralDensity { kind: DensityKind::Response, terms: vec![pole], hbar: 1.0 };
    let parts = response_parts(&chi).unwrap();
    assert_eq!(parts.dispersive.terms.len(), 1);
    assert_eq!(parts.dispersive.terms[0].support, Support::PrincipalValue);
    let shell = parts.dissipative.shell_channels(1.0);
    assert!((shell.c0 - 3.0 * std::f64::consts::PI).abs() < 1e-15);
    let retarded = parts.retarded().unwrap();
    assert!(retarded.terms.iter().any(|t| t.freq == FreqFactor::Sign));
    let off = chi.response_channels(0.3, 2.0).unwrap();
    assert!((off.c0.re - 1.5).abs() < 1e-15);
    assert_eq!(off.c0.im, 0.0);
}

#[test]
fn shell_terms_drop_under_positive_k2_powers() {
    let t = SpectralTerm::on_shell(Structure::Channel(Channel::Trace), 1.0);
    assert!(t.times_k2_power(Exponent::from_integer(1)).is_none());
    assert!(t.times_k2_power(Exponent::from_integer(-1)).is_some());
}

#[test]
fn integration_rejects_nonfinite_frequency() {
    let density = SpectralDensity::symmetrized(1.0, vec![SpectralTerm::on_shell(Structure::Scalar, 1.0)]);
    assert!(density.integrate_against(Structure::Scalar, f64::NAN, |_, _| 1.0, &Default::default()).is_err());
}
