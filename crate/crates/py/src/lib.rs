//! Python bindings: field content, scales, probes, coefficient tables,
//! tidal spectra and deviation spectra.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use vacnoise::{
    ChannelSelect, DeviationSolver, Dimension, FieldKind, FieldSpecies, ModifiedGravity as CoreModified, Momentum,
    Tensor2,
};

fn to_py(e: vacnoise::Error) -> PyErr {
    use vacnoise::Error as E;
    match e {
        E::Quadrature { .. } | E::Resonance { .. } | E::EddingtonPole => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn dimension(d: usize) -> PyResult<Dimension> {
    Dimension::new(d).map_err(to_py)
}

fn kind(name: &str) -> PyResult<FieldKind> {
    match name {
        "scalar" => Ok(FieldKind::Scalar),
        "maxwell" => Ok(FieldKind::Maxwell),
        "neutrino" => Ok(FieldKind::Neutrino),
        other => Err(PyValueError::new_err(format!("unknown field kind {other:?} (scalar, maxwell, neutrino)"))),
    }
}

fn channels(name: &str) -> PyResult<ChannelSelect> {
    match name {
        "gw-only" => Ok(ChannelSelect::GwOnly),
        "gravity-of-vacuum" => Ok(ChannelSelect::GravityOfVacuum),
        "both" => Ok(ChannelSelect::Both),
        other => Err(PyValueError::new_err(format!("unknown channel selector {other:?}"))),
    }
}

fn tensor(h: &[Vec<f64>], d: Dimension) -> PyResult<Tensor2> {
    if h.len() != d.get() || h.iter().any(|row| row.len() != d.get()) {
        return Err(PyValueError::new_err(format!("metric perturbation must be {0}x{0}", d.get())));
    }
    Ok(Tensor2::from_fn(d, |m, n| h[m][n]))
}

fn rows(t: &Tensor2) -> Vec<Vec<f64>> {
    let d = t.dim().get();
    (0..d).map(|m| (0..d).map(|n| t[(m, n)]).collect()).collect()
}

/// `ħ` with either `G` or the Planck length; neither means `l_P = 1`.
#[pyclass(frozen, module = "vacnoise_py")]
pub struct PhysicalScales {
    inner: vacnoise::PhysicalScales,
}

#[pymethods]
impl PhysicalScales {
    #[new]
    #[pyo3(signature = (hbar = 1.0, g_newton = None, planck_length = None))]
    fn new(hbar: f64, g_newton: Option<f64>, planck_length: Option<f64>) -> PyResult<Self> {
        let inner = match (g_newton, planck_length) {
            (Some(_), Some(_)) => return Err(PyValueError::new_err("give either g_newton or planck_length")),
            (Some(g), None) => vacnoise::PhysicalScales::new(hbar, g),
            (None, l) => vacnoise::PhysicalScales::from_planck_length(l.unwrap_or(1.0), hbar),
        }
        .map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.inner.hbar
    }

    #[getter]
    fn g_newton(&self) -> f64 {
        self.inner.g_newton
    }

    #[getter]
    fn kappa(&self) -> f64 {
        self.inner.kappa()
    }

    #[getter]
    fn planck_length(&self) -> f64 {
        self.inner.planck_length()
    }

    fn __repr__(&self) -> String {
        format!("PhysicalScales(hbar={}, g_newton={})", self.inner.hbar, self.inner.g_newton)
    }
}

#[pyclass(frozen, module = "vacnoise_py")]
pub struct FieldContent {
    inner: vacnoise::FieldContent,
}

#[pymethods]
impl FieldContent {
    /// `species` is a list of `(kind, multiplicity, mass)` tuples.
    #[new]
    fn new(d: usize, species: Vec<(String, u32, f64)>) -> PyResult<Self> {
        let d = dimension(d)?;
        let species = species
            .iter()
            .map(|(k, m, mass)| FieldSpecies::new(kind(k)?, *mass, *m).map_err(to_py))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: vacnoise::FieldContent::new(d, species).map_err(to_py)? })
    }

    /// One Maxwell field plus `n_nu` neutrinos.
    #[staticmethod]
    #[pyo3(signature = (d = 4, n_nu = 3))]
    fn standard(d: usize, n_nu: u32) -> PyResult<Self> {
        Ok(Self { inner: vacnoise::FieldContent::standard(dimension(d)?, n_nu) })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.d.get()
    }

    /// Aggregate `(ζ₀, ζ₁)` at `k²`.
    #[pyo3(signature = (k2 = 1.0))]
    fn zeta(&self, k2: f64) -> PyResult<(f64, f64)> {
        let z = self.inner.zeta(k2).map_err(to_py)?;
        Ok((z.c0, z.c1))
    }

    /// Exact `(ζ₀, ζ₁)` strings, or `None` for massive content.
    fn exact_zeta(&self) -> Option<(String, String)> {
        self.inner.exact_zeta().map(|z| (z.c0.to_string(), z.c1.to_string()))
    }

    fn stress_polarization(&self, h: Vec<Vec<f64>>, k: Vec<f64>, scales: &PhysicalScales) -> PyResult<Vec<Vec<f64>>> {
        let k = Momentum::new(k).map_err(to_py)?;
        let h = tensor(&h, k.dim())?;
        Ok(rows(&vacnoise::stress_polarization(&h, &k, &self.inner, &scales.inner).map_err(to_py)?))
    }

    fn particle_density(&self, h: Vec<Vec<f64>>, k: Vec<f64>, scales: &PhysicalScales) -> PyResult<f64> {
        let k = Momentum::new(k).map_err(to_py)?;
        let h = tensor(&h, k.dim())?;
        vacnoise::particle_density(&h, &k, &self.inner, &scales.inner).map_err(to_py)
    }

    /// Whether `σ_GG = κ²σ_TT` and `σ_GT = κσ_TT` hold to `tol`.
    #[pyo3(signature = (scales, tol = 1e-12))]
    fn stochastic_identities_hold(&self, scales: &PhysicalScales, tol: f64) -> PyResult<bool> {
        Ok(vacnoise::stochastic_identities_check(&self.inner, &scales.inner).map_err(to_py)?.holds(tol))
    }
}

#[pyclass(frozen, module = "vacnoise_py")]
pub struct ProbeConfig {
    inner: vacnoise::ProbeConfig,
}

#[pymethods]
impl ProbeConfig {
    #[new]
    #[pyo3(signature = (v = 0.0, tau = 1.0))]
    fn new(v: f64, tau: f64) -> PyResult<Self> {
        Ok(Self { inner: vacnoise::ProbeConfig::new(v, tau).map_err(to_py)? })
    }

    #[getter]
    fn v(&self) -> f64 {
        self.inner.v()
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.inner.tau()
    }
}

#[pyclass(frozen, module = "vacnoise_py")]
pub struct ModifiedGravity {
    inner: CoreModified,
}

#[pymethods]
impl ModifiedGravity {
    #[new]
    fn new(kappa_eff: f64, delta_gamma1: f64) -> PyResult<Self> {
        Ok(Self { inner: CoreModified::new(kappa_eff, delta_gamma1).map_err(to_py)? })
    }

    fn eddington_gamma(&self) -> PyResult<f64> {
        self.inner.eddington_gamma().map_err(to_py)
    }

    /// `(h₀₀, h_ii)` of a static point mass at spatial wavevector `k`.
    fn point_mass_metric(&self, m: f64, k: Vec<f64>) -> PyResult<(f64, f64)> {
        let mut upper = vec![0.0];
        upper.extend(k);
        let k = Momentum::from_contravariant(&upper).map_err(to_py)?;
        let pm = self.inner.point_mass_metric(m, &k).map_err(to_py)?;
        Ok((pm.h00, pm.hii))
    }
}

/// Single-field `(ζ₀, ζ₁)` for one species kind; massive scalars need `k2`.
#[pyfunction]
#[pyo3(signature = (d, kind_name, mass = 0.0, k2 = 1.0))]
fn zeta(d: usize, kind_name: &str, mass: f64, k2: f64) -> PyResult<(f64, f64)> {
    let s = FieldSpecies::new(kind(kind_name)?, mass, 1).map_err(to_py)?;
    let z = s.zeta(dimension(d)?, k2).map_err(to_py)?;
    Ok((z.c0, z.c1))
}

#[pyfunction]
fn zeta_exact(d: usize, kind_name: &str) -> PyResult<(String, String)> {
    let z = FieldSpecies::new(kind(kind_name)?, 0.0, 1).map_err(to_py)?.exact_massless(dimension(d)?);
    Ok((z.c0.to_string(), z.c1.to_string()))
}

fn tidal_map(t: &vacnoise::TidalSpectra) -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("q33", t.q33),
        ("q13", t.q13),
        ("q23", t.q23),
        ("q12", t.q12),
        ("q12p", t.q12p),
        ("q33_q", t.q33_q),
        ("qq", t.qq),
    ])
}

/// Closed-form azimuth-averaged tidal spectra at `(ω, s = k₀²-k_⊥², k₃)`.
#[pyfunction]
fn tidal_spectra(omega: f64, s: f64, k3: f64, probe: &ProbeConfig, alpha: f64, beta: f64) -> BTreeMap<&'static str, f64> {
    tidal_map(&vacnoise::tidal_spectra_closed(omega, s, k3, &probe.inner, alpha, beta))
}

/// Same quantity by direct quadrature over the azimuth.
#[pyfunction]
#[pyo3(signature = (omega, s, k3, probe, alpha, beta, nodes = 64))]
fn tidal_spectra_oracle(
    omega: f64,
    s: f64,
    k3: f64,
    probe: &ProbeConfig,
    alpha: f64,
    beta: f64,
    nodes: usize,
) -> PyResult<BTreeMap<&'static str, f64>> {
    Ok(tidal_map(&vacnoise::tidal_spectra_oracle(omega, s, k3, &probe.inner, alpha, beta, nodes).map_err(to_py)?))
}

/// Deviation spectra on `omegas`, keyed by the CSV column names.
#[pyfunction]
#[pyo3(signature = (probe, content, scales, omegas, channel_select = "both"))]
fn deviation_spectrum(
    py: Python<'_>,
    probe: &ProbeConfig,
    content: &FieldContent,
    scales: &PhysicalScales,
    omegas: Vec<f64>,
    channel_select: &str,
) -> PyResult<BTreeMap<&'static str, Vec<f64>>> {
    let select = channels(channel_select)?;
    let solver = DeviationSolver::new(probe.inner, &content.inner, &scales.inner, select).map_err(to_py)?;
    let values = py
        .detach(|| omegas.iter().map(|&w| solver.at(w)).collect::<vacnoise::Result<Vec<_>>>())
        .map_err(to_py)?;
    let column = |f: fn(&vacnoise::geodesic::DeviationValues) -> f64| values.iter().map(f).collect::<Vec<_>>();
    Ok(BTreeMap::from([
        ("omega", column(|v| v.omega)),
        ("C_d33", column(|v| v.d33)),
        ("C_d13", column(|v| v.d13)),
        ("C_d23", column(|v| v.d23)),
        ("C_d12", column(|v| v.d12)),
        ("C_d12p", column(|v| v.d12p)),
        ("C_trace", column(|v| v.trace)),
    ]))
}

/// Gravity-of-vacuum over GW ratio at `ω`, and that ratio over `(ωl_P)²`.
#[pyfunction]
fn scaling_ratio(omega: f64, scales: &PhysicalScales, content: &FieldContent) -> PyResult<(f64, f64)> {
    let r = vacnoise::scaling_report(omega, &scales.inner, &content.inner).map_err(to_py)?;
    Ok((r.ratio, r.normalized))
}

#[pyfunction]
fn eddington_gamma(delta_gamma1: f64) -> PyResult<f64> {
    CoreModified::new(1.0, delta_gamma1).and_then(|m| m.eddington_gamma()).map_err(to_py)
}

#[pymodule]
fn vacnoise_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", vacnoise::VERSION)?;
    m.add_class::<PhysicalScales>()?;
    m.add_class::<FieldContent>()?;
    m.add_class::<ProbeConfig>()?;
    m.add_class::<ModifiedGravity>()?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_exact, m)?)?;
    m.add_function(wrap_pyfunction!(tidal_spectra, m)?)?;
    m.add_function(wrap_pyfunction!(tidal_spectra_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(deviation_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(eddington_gamma, m)?)?;
    Ok(())
}
