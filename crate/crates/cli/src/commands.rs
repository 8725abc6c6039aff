use rayon::prelude::*;
use serde_json::{json, Value};
use vacnoise::{DeviationSolver, FieldKind, Momentum, PiRational};

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{csv_table, metadata, sci, to_json, SPECTRUM_HEADER};

/// A rendered document plus diagnostics meant for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub notices: Vec<String>,
}

const COEFF_HEADER: [&str; 8] = ["species", "multiplicity", "mass", "k2", "zeta0_exact", "zeta1_exact", "zeta0", "zeta1"];

struct CoeffRow {
    species: String,
    multiplicity: u32,
    mass: f64,
    k2: Option<f64>,
    exact: Option<(PiRational, PiRational)>,
    zeta: (f64, f64),
}

/// Per-species and aggregate `ζ₀, ζ₁`. Massless rows are exact; massive rows
/// are evaluated at `k² = ω_max²` of the configured grid.
pub fn coefficients(config: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let content = config.field_content()?;
    let d = content.d;
    let omega_max = config.omega_grid()?.into_iter().fold(0.0, f64::max);
    let k2 = omega_max * omega_max;
    let mut rows = Vec::new();
    let mut notices = Vec::new();
    for s in &content.species {
        let m = num_rational::BigRational::from_integer(s.multiplicity.into());
        let (exact, at) = if s.mass == 0.0 {
            let z = s.exact_massless(d);
            (Some((z.c0.scale(&m), z.c1.scale(&m))), None)
        } else {
            (None, Some(k2))
        };
        let z = s.zeta(d, at.unwrap_or(1.0))?;
        rows.push(CoeffRow {
            species: s.kind.name().into(),
            multiplicity: s.multiplicity,
            mass: s.mass,
            k2: at,
            exact,
            zeta: (z.c0, z.c1),
        });
        if d.get() == 2 && s.kind == FieldKind::Scalar && s.mass == 0.0 {
            notices.push("d = 2 massless scalars also carry the lightcone anomaly term (ħ/12) k_μ k_ν k_ρ k_σ δ(k²)".into());
        }
    }
    notices.dedup();
    let total = content.zeta(k2)?;
    let massless = content.is_massless();
    rows.push(CoeffRow {
        species: "total".into(),
        multiplicity: content.species.iter().map(|s| s.multiplicity).sum(),
        mass: 0.0,
        k2: (!massless).then_some(k2),
        exact: content.exact_zeta().map(|z| (z.c0, z.c1)),
        zeta: (total.c0, total.c1),
    });

    let text = match format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let (e0, e1) = r.exact.as_ref().map_or((String::new(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
                    vec![
                        r.species.clone(),
                        r.multiplicity.to_string(),
                        sci(r.mass),
                        r.k2.map(sci).unwrap_or_default(),
                        e0,
                        e1,
                        sci(r.zeta.0),
                        sci(r.zeta.1),
                    ]
                })
                .collect();
            csv_table(&COEFF_HEADER, &body)
        }
        Format::Json => {
            let body: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "species": r.species,
                        "multiplicity": r.multiplicity,
                        "mass": r.mass,
                        "k2": r.k2,
                        "zeta0_exact": r.exact.as_ref().map(|e| e.0.to_string()),
                        "zeta1_exact": r.exact.as_ref().map(|e| e.1.to_string()),
                        "zeta0": r.zeta.0,
                        "zeta1": r.zeta.1,
                    })
                })
                .collect();
            to_json(&json!({ "metadata": metadata(config, "coefficients"), "notices": notices, "rows": body }))
        }
    };
    Ok(Rendered { text, notices })
}

/// Deviation spectra on the configured grid. Grid points are evaluated on a
/// pool of `threads` workers; the rows are assembled in grid order. Nothing
/// is returned if any point fails.
pub fn spectrum(config: &RunConfig, format: Format, threads: usize) -> Result<Rendered, CliError> {
    let content = config.field_content()?;
    let grid = config.omega_grid()?;
    let solver = DeviationSolver::new(config.probe_config()?, &content, &config.physical_scales()?, config.channels.into())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    let values = pool.install(|| grid.par_iter().map(|&w| solver.at(w)).collect::<Result<Vec<_>, _>>())?;
    let rows: Vec<[f64; 7]> = values
        .iter()
        .map(|v| {
            let [a, b, c, d, e, f] = v.as_array();
            [v.omega, a, b, c, d, e, f]
        })
        .collect();
    if let Some(bad) = rows.iter().flatten().find(|x| !x.is_finite()) {
        return Err(CliError::Numerical(format!("non-finite spectrum value {bad}")));
    }
    let text = match format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&x| sci(x)).collect()).collect();
            csv_table(&SPECTRUM_HEADER, &body)
        }
        Format::Json => to_json(&json!({
            "metadata": metadata(config, "spectrum"),
            "columns": SPECTRUM_HEADER,
            "rows": rows,
        })),
    };
    Ok(Rendered { text, notices: Vec::new() })
}

/// Eddington parameter and the static point-mass metric, the latter as
/// coefficients of `κ_eff m / k²`.
pub fn eddington(config: &RunConfig, format: Format) -> Result<Rendered, CliError> {
    let modified = config.modified()?;
    if config.dimension != 4 {
        return Err(CliError::Usage(format!("eddington needs dimension = 4, config has {}", config.dimension)));
    }
    let gamma = modified.eddington_gamma()?;
    let k = Momentum::from_contravariant(&[0.0, 0.0, 0.0, 1.0])?;
    let pm = modified.point_mass_metric(1.0, &k)?;
    let unit = modified.kappa_eff / k.k2();
    let (h00, hii) = (pm.h00 / unit, pm.hii / unit);
    let text = match format {
        Format::Csv => csv_table(
            &["delta_gamma1", "kappa_eff", "gamma", "h00", "hii"],
            &[vec![sci(modified.delta_gamma1), sci(modified.kappa_eff), sci(gamma), sci(h00), sci(hii)]],
        ),
        Format::Json => to_json(&json!({
            "metadata": metadata(config, "eddington"),
            "delta_gamma1": modified.delta_gamma1,
            "kappa_eff": modified.kappa_eff,
            "gamma": gamma,
            "h00": h00,
            "hii": hii,
        })),
    };
    Ok(Rendered { text, notices: Vec::new() })
}
