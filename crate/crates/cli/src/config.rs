//! Run configuration, read from TOML.
//!
//! Every section has defaults, so an empty file is a valid configuration:
//! `d = 4`, one Maxwell field plus three neutrinos, `ħ = 1`, `l_P = 1`, a
//! static probe with `τ = 1` and 31 log-spaced frequencies on `[0.1, 10]`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use vacnoise::{ChannelSelect, Dimension, FieldContent, FieldKind, FieldSpecies, ModifiedGravity, PhysicalScales, ProbeConfig};

use crate::error::CliError;

pub const ENV_OUTPUT: &str = "VACNOISE_OUTPUT";
pub const ENV_THREADS: &str = "VACNOISE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Channels {
    GwOnly,
    GravityOfVacuum,
    #[default]
    Both,
}

impl From<Channels> for ChannelSelect {
    fn from(c: Channels) -> Self {
        match c {
            Channels::GwOnly => ChannelSelect::GwOnly,
            Channels::GravityOfVacuum => ChannelSelect::GravityOfVacuum,
            Channels::Both => ChannelSelect::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Scalar,
    Maxwell,
    Neutrino,
}

impl From<Kind> for FieldKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Scalar => FieldKind::Scalar,
            Kind::Maxwell => FieldKind::Maxwell,
            Kind::Neutrino => FieldKind::Neutrino,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Species {
    pub kind: Kind,
    #[serde(default = "one")]
    pub multiplicity: u32,
    #[serde(default)]
    pub mass: f64,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Content {
    /// Massless neutrinos, added to `species`.
    pub neutrinos: u32,
    pub species: Vec<Species>,
}

impl Default for Content {
    fn default() -> Self {
        Self { neutrinos: 3, species: vec![Species { kind: Kind::Maxwell, multiplicity: 1, mass: 0.0 }] }
    }
}

/// Either `planck_length` or `G`, each with `hbar`. Neither means `l_P = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scales {
    pub hbar: f64,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g_newton: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planck_length: Option<f64>,
}

impl Default for Scales {
    fn default() -> Self {
        Self { hbar: 1.0, g_newton: None, planck_length: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Probe {
    pub v: f64,
    pub tau: f64,
}

impl Default for Probe {
    fn default() -> Self {
        Self { v: 0.0, tau: 1.0 }
    }
}

/// Either an explicit `values` list, or `min`, `max`, `points` and `spacing`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
}

impl Default for Grid {
    fn default() -> Self {
        Self { min: 0.1, max: 10.0, points: 31, spacing: Spacing::Log, values: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Modified {
    /// Defaults to `8πG` from `[scales]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_eff: Option<f64>,
    pub delta_gamma1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dimension: usize,
    pub channels: Channels,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub scales: Scales,
    pub probe: Probe,
    pub grid: Grid,
    pub content: Content,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modified_gravity: Option<Modified>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dimension: 4,
            channels: Channels::default(),
            format: Format::default(),
            output: None,
            scales: Scales::default(),
            probe: Probe::default(),
            grid: Grid::default(),
            content: Content::default(),
            modified_gravity: None,
        }
    }
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("config field `{field}`: {msg}"))
}

impl RunConfig {
    /// Parses and validates; diagnostics carry line and column for syntax
    /// errors and the field path for value errors.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Usage(format!("config parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration is always representable in TOML")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.dim()?;
        self.physical_scales()?;
        self.field_content()?;
        self.probe_config()?;
        self.omega_grid()?;
        if let Some(m) = &self.modified_gravity {
            if !m.delta_gamma1.is_finite() {
                return Err(invalid("modified_gravity.delta_gamma1", "must be finite"));
            }
            if let Some(k) = m.kappa_eff {
                if !(k.is_finite() && k > 0.0) {
                    return Err(invalid("modified_gravity.kappa_eff", "must be positive and finite"));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> Result<Dimension, CliError> {
        Dimension::new(self.dimension).map_err(|e| invalid("dimension", e))
    }

    pub fn physical_scales(&self) -> Result<PhysicalScales, CliError> {
        let s = &self.scales;
        let out = match (s.g_newton, s.planck_length) {
            (Some(_), Some(_)) => return Err(invalid("scales", "give either `G` or `planck_length`, not both")),
            (Some(g), None) => PhysicalScales::new(s.hbar, g),
            (None, l) => {
                let l = l.unwrap_or(1.0);
                if !(l.is_finite() && l > 0.0) {
                    return Err(invalid("scales.planck_length", "must be positive and finite"));
                }
                PhysicalScales::from_planck_length(l, s.hbar)
            }
        };
        out.map_err(|e| invalid("scales", e))
    }

    pub fn field_content(&self) -> Result<FieldContent, CliError> {
        let d = self.dim()?;
        let mut species = Vec::new();
        for (i, s) in self.content.species.iter().enumerate() {
            let sp = FieldSpecies::new(s.kind.into(), s.mass, s.multiplicity)
                .map_err(|e| invalid(&format!("content.species[{i}]"), e))?;
            species.push(sp);
        }
        if self.content.neutrinos > 0 {
            species.push(FieldSpecies::neutrinos(self.content.neutrinos));
        }
        FieldContent::new(d, species).map_err(|e| invalid("content", e))
    }

    pub fn probe_config(&self) -> Result<ProbeConfig, CliError> {
        let p = &self.probe;
        if !(p.tau.is_finite() && p.tau > 0.0) {
            return Err(invalid("probe.tau", "must be positive and finite"));
        }
        ProbeConfig::new(p.v, p.tau).map_err(|e| invalid("probe.v", e))
    }

    pub fn omega_grid(&self) -> Result<Vec<f64>, CliError> {
        let g = &self.grid;
        if let Some(values) = &g.values {
            if values.is_empty() {
                return Err(invalid("grid.values", "empty frequency grid"));
            }
            if let Some(bad) = values.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return Err(invalid("grid.values", format!("frequencies must be positive and finite, got {bad}")));
            }
            return Ok(values.clone());
        }
        if g.points == 0 {
            return Err(invalid("grid.points", "empty frequency grid"));
        }
        if g.points < 2 {
            return Err(invalid("grid.points", "need at least 2 points (use grid.values for a single frequency)"));
        }
        if !(g.min.is_finite() && g.min > 0.0) {
            return Err(invalid("grid.min", "must be positive and finite"));
        }
        if !(g.max.is_finite() && g.max > g.min) {
            return Err(invalid("grid.max", "must be finite and greater than grid.min"));
        }
        let n = (g.points - 1) as f64;
        Ok((0..g.points)
            .map(|i| {
                let t = i as f64 / n;
                match g.spacing {
                    Spacing::Log => g.min * (g.max / g.min).powf(t),
                    Spacing::Linear => g.min + (g.max - g.min) * t,
                }
            })
            .collect())
    }

    pub fn modified(&self) -> Result<ModifiedGravity, CliError> {
        let m = self
            .modified_gravity
            .as_ref()
            .ok_or_else(|| CliError::Usage("config has no [modified_gravity] block".into()))?;
        let kappa = match m.kappa_eff {
            Some(k) => k,
            None => self.physical_scales()?.kappa(),
        };
        ModifiedGravity::new(kappa, m.delta_gamma1).map_err(|e| invalid("modified_gravity", e))
    }
}

/// Output path and worker count after applying flags, then environment, then file.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub output: Option<PathBuf>,
    pub threads: usize,
    pub format: Format,
}

pub fn resolve(
    config: &RunConfig,
    output_flag: Option<PathBuf>,
    threads_flag: Option<usize>,
    format_flag: Option<Format>,
    env: impl Fn(&str) -> Option<String>,
) -> Result<Resolved, CliError> {
    let output = output_flag
        .or_else(|| env(ENV_OUTPUT).filter(|s| !s.is_empty()).map(PathBuf::from))
        .or_else(|| config.output.clone());
    let threads = match threads_flag {
        Some(n) => n,
        None => match env(ENV_THREADS).filter(|s| !s.is_empty()) {
            Some(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{ENV_THREADS} must be a positive integer, got {s:?}")))?,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if threads == 0 {
        return Err(CliError::Usage("thread count must be at least 1".into()));
    }
    Ok(Resolved { output, threads, format: format_flag.unwrap_or(config.format) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_the_default() {
        assert_eq!(RunConfig::parse("").unwrap(), RunConfig::default());
    }

    #[test]
    fn default_round_trips() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::parse(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn syntax_errors_report_lines() {
        let e = RunConfig::parse("dimension = 4\n[grid\nmin = 1").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = RunConfig::parse("[probe]\nspeed = 0.5").unwrap_err();
        assert!(e.to_string().contains("speed"), "{e}");
    }

    #[test]
    fn value_errors_name_the_field() {
        let e = RunConfig::parse("[grid]\nmin = -1.0").unwrap_err();
        assert!(e.to_string().contains("grid.min"), "{e}");
        let e = RunConfig::parse("[probe]\nv = 1.5").unwrap_err();
        assert!(e.to_string().contains("probe.v"), "{e}");
        let e = RunConfig::parse("[scales]\nG = 1.0\nplanck_length = 1.0").unwrap_err();
        assert!(e.to_string().contains("scales"), "{e}");
    }

    #[test]
    fn planck_length_or_newton() {
        let a = RunConfig::parse("[scales]\nhbar = 2.0\nplanck_length = 0.5").unwrap();
        let b = RunConfig::parse("[scales]\nhbar = 2.0\nG = 0.125").unwrap();
        let (sa, sb) = (a.physical_scales().unwrap(), b.physical_scales().unwrap());
        assert_eq!(sa.planck_length(), 0.5);
        assert_eq!(sa, sb);
    }

    #[test]
    fn grids() {
        let c = RunConfig::parse("[grid]\nmin = 1.0\nmax = 100.0\npoints = 3").unwrap();
        let g = c.omega_grid().unwrap();
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 10.0).abs() < 1e-12);
        assert!((g[2] - 100.0).abs() < 1e-12);
        let c = RunConfig::parse("[grid]\nmin = 1.0\nmax = 3.0\npoints = 3\nspacing = \"linear\"").unwrap();
        assert_eq!(c.omega_grid().unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(RunConfig::parse("[grid]\nvalues = []").is_err());
        assert!(RunConfig::parse("[grid]\npoints = 0").is_err());
    }

    #[test]
    fn precedence_flag_env_file() {
        let c = RunConfig { output: Some("file.csv".into()), ..RunConfig::default() };
        let env = |k: &str| match k {
            ENV_OUTPUT => Some("env.csv".to_string()),
            ENV_THREADS => Some("3".to_string()),
            _ => None,
        };
        let r = resolve(&c, None, None, None, env).unwrap();
        assert_eq!(r.output, Some("env.csv".into()));
        assert_eq!(r.threads, 3);
        let r = resolve(&c, Some("flag.csv".into()), Some(2), Some(Format::Json), env).unwrap();
        assert_eq!((r.output, r.threads, r.format), (Some("flag.csv".into()), 2, Format::Json));
        let r = resolve(&c, None, Some(1), None, |_| None).unwrap();
        assert_eq!(r.output, Some("file.csv".into()));
        assert!(resolve(&c, None, Some(0), None, |_| None).is_err());
        assert!(resolve(&c, None, None, None, |_| Some("many".into())).is_err());
    }
}
