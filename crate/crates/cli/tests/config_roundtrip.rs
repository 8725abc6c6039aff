use proptest::prelude::*;
use vacnoise_cli::config::{Channels, Content, Format, Grid, Kind, Modified, Probe, RunConfig, Scales, Spacing, Species};

fn species() -> impl Strategy<Value = Species> {
    prop_oneof![
        (1u32..5, 0.0f64..3.0).prop_map(|(m, mass)| Species { kind: Kind::Scalar, multiplicity: m, mass }),
        (1u32..5).prop_map(|m| Species { kind: Kind::Maxwell, multiplicity: m, mass: 0.0 }),
        (1u32..5).prop_map(|m| Species { kind: Kind::Neutrino, multiplicity: m, mass: 0.0 }),
    ]
}

fn config() -> impl Strategy<Value = RunConfig> {
    let scales = (0.1f64..10.0, prop_oneof![Just(None), (0.01f64..10.0).prop_map(Some)], any::<bool>()).prop_map(
        |(hbar, x, newton)| match (x, newton) {
            (Some(g), true) => Scales { hbar, g_newton: Some(g), planck_length: None },
            (l, _) => Scales { hbar, g_newton: None, planck_length: l },
        },
    );
    let grid = (0.01f64..1.0, 1.5f64..100.0, 2usize..50, any::<bool>(), prop::option::of(prop::collection::vec(0.01f64..9.0, 1..6)))
        .prop_map(|(min, factor, points, log, values)| Grid {
            min,
            max: min * factor,
            points,
            spacing: if log { Spacing::Log } else { Spacing::Linear },
            values,
        });
    let modified = prop::option::of((prop::option::of(0.1f64..50.0), -2.9f64..2.9).prop_map(|(k, x)| Modified { kappa_eff: k, delta_gamma1: x }));
    (
        3usize..7,
        prop_oneof![Just(Channels::GwOnly), Just(Channels::GravityOfVacuum), Just(Channels::Both)],
        any::<bool>(),
        prop::option::of("[a-z]{1,8}\\.(csv|json)"),
        scales,
        (0.0f64..=1.0, 0.01f64..10.0),
        grid,
        (0u32..6, prop::collection::vec(species(), 1..4)),
        modified,
    )
        .prop_map(|(dimension, channels, json, output, scales, (v, tau), grid, (neutrinos, species), modified_gravity)| RunConfig {
            dimension,
            channels,
            format: if json { Format::Json } else { Format::Csv },
            output: output.map(Into::into),
            scales,
            probe: Probe { v, tau },
            grid,
            content: Content { neutrinos, species },
            modified_gravity,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_serialize_parse_is_identity(c in config()) {
        let text = c.to_toml();
        let parsed = RunConfig::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&parsed, &c);
        prop_assert_eq!(parsed.to_toml(), text);
    }
}
