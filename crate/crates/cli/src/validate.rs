//! Seeded invariant suite behind `vacnoise validate`.
//!
//! Each check draws from its own ChaCha stream (`seed`, check index), so the
//! report depends only on the seed and the configuration. A named fault
//! scales the library-side quantity of one check by 1.1 before the
//! comparison, which must then fail.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::function::gamma::gamma;
use vacnoise::coupling::{self, couple, stochastic_identities_check, DispersivePart};
use vacnoise::geodesic::{self, slow_probe_longitudinal, slow_probe_trace};
use vacnoise::matter::{zeta_maxwell_exact, zeta_scalar_massless_exact};
use vacnoise::tensor::{channel_form, linearized_riemann};
use vacnoise::{
    Channel, ChannelSelect, DensityKind, DeviationSolver, Dimension, FieldContent, FieldSpecies, ModifiedGravity,
    Momentum, PhysicalScales, PiRational, ProbeConfig, Tensor2,
};

use crate::config::RunConfig;
use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;
const FAULT_SCALE: f64 = 1.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub description: &'static str,
    pub tolerance: f64,
    pub deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub library_version: &'static str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub injected_fault: Option<String>,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Ctx<'a> {
    config: &'a RunConfig,
    scales: PhysicalScales,
    skew: f64,
}

impl Ctx<'_> {
    fn skew(&self, x: f64) -> f64 {
        x * self.skew
    }

    fn skew_exact(&self, x: &PiRational) -> PiRational {
        if self.skew == 1.0 {
            x.clone()
        } else {
            x.scale(&BigRational::new(11.into(), 10.into()))
        }
    }
}

type CheckFn = fn(&mut ChaCha8Rng, &Ctx) -> vacnoise::Result<f64>;

struct Check {
    name: &'static str,
    description: &'static str,
    tolerance: f64,
    run: CheckFn,
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

const CHECKS: &[Check] = &[
    Check { name: "zeta_exact_d4", description: "exact d=4 scalar and Maxwell coefficients", tolerance: 0.0, run: zeta_exact_d4 },
    Check { name: "zeta_general_d", description: "general-d coefficients vs gamma-function oracle, d=2..12", tolerance: 1e-13, run: zeta_general_d },
    Check { name: "channel_algebra", description: "channel forms idempotent and orthogonal", tolerance: 1e-10, run: channel_algebra },
    Check { name: "gauge_zeros", description: "Riemann, polarization and particle density vanish on pure gauge", tolerance: 1e-12, run: gauge_zeros },
    Check { name: "polarization_dual_path", description: "channel formula vs direct stress contraction", tolerance: 1e-10, run: polarization_dual_path },
    Check { name: "particle_density_dual_path", description: "quadratic form vs direct contraction", tolerance: 1e-10, run: particle_density_dual_path },
    Check { name: "coupled_linear_solve", description: "gamma and coupled responses solve the 2x2 system", tolerance: 1e-12, run: coupled_linear_solve },
    Check { name: "stochastic_identities", description: "sigma_GG = kappa^2 sigma_TT and sigma_GT = kappa sigma_TT", tolerance: 1e-12, run: stochastic_identities },
    Check { name: "tidal_closed_forms", description: "closed tidal spectra vs azimuth quadrature", tolerance: 1e-6, run: tidal_closed_forms },
    Check { name: "gw_ricci_flat", description: "trace tidal spectra vanish on the shell with beta = alpha", tolerance: 0.0, run: gw_ricci_flat },
    Check { name: "slow_probe_longitudinal", description: "C_d33 vs (32/15) w^3 l_P^2 sin^2(w tau/2)", tolerance: 5e-3, run: slow_probe_longitudinal_check },
    Check { name: "slow_probe_transverse_ratio", description: "transverse and shear components at 3/4 of C_d33", tolerance: 5e-3, run: slow_probe_ratio },
    Check { name: "slow_probe_trace", description: "C_trace vs 8(4+N_nu)/(105 pi) w^5 l_P^4 sin^2(w tau/2)", tolerance: 1e-2, run: slow_probe_trace_check },
    Check { name: "scaling_law", description: "vacuum/GW ratio over (w l_P)^2 constant on [1e-3, 1e-1]", tolerance: 5e-2, run: scaling_law },
    Check { name: "eddington_point_mass", description: "h_ii/h_00 of a point mass equals gamma", tolerance: 1e-12, run: eddington_point_mass },
    Check { name: "positive_frequency_support", description: "full spectra vanish for k0 < 0 and spacelike k", tolerance: 0.0, run: positive_frequency_support },
];

pub fn run(config: &RunConfig, seed: u64, fault: Option<&str>) -> Result<Report, CliError> {
    if let Some(f) = fault {
        if !CHECKS.iter().any(|c| c.name == f) {
            return Err(CliError::Usage(format!("unknown check `{f}` for fault injection; known: {}", check_names().join(", "))));
        }
    }
    let scales = config.physical_scales()?;
    let mut checks = Vec::with_capacity(CHECKS.len());
    for (i, c) in CHECKS.iter().enumerate() {
        let ctx = Ctx { config, scales, skew: if fault == Some(c.name) { FAULT_SCALE } else { 1.0 } };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let deviation = match (c.run)(&mut rng, &ctx) {
            Ok(x) if x.is_nan() => f64::INFINITY,
            Ok(x) => x,
            Err(vacnoise::Error::Quadrature { .. } | vacnoise::Error::Resonance { .. }) => f64::INFINITY,
            Err(e) => return Err(e.into()),
        };
        checks.push(CheckResult {
            name: c.name,
            description: c.description,
            tolerance: c.tolerance,
            deviation,
            passed: deviation <= c.tolerance,
        });
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    Ok(Report {
        library_version: vacnoise::VERSION,
        seed,
        injected_fault: fault.map(str::to_string),
        failed: checks.len() - passed,
        passed,
        checks,
    })
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

fn dim(d: usize) -> Dimension {
    Dimension::new(d).expect("fixed dimensions are valid")
}

fn random_symmetric(rng: &mut ChaCha8Rng, d: Dimension) -> Tensor2 {
    let mut h = Tensor2::zeros(d);
    for m in 0..d.get() {
        for n in m..d.get() {
            let x = rng.gen_range(-1.0..1.0);
            h[(m, n)] = x;
            h[(n, m)] = x;
        }
    }
    h
}

fn random_timelike(rng: &mut ChaCha8Rng, d: Dimension) -> Momentum {
    let mut c: Vec<f64> = (0..d.get()).map(|_| rng.gen_range(-1.5..1.5)).collect();
    let spatial: f64 = c[1..].iter().map(|x| x * x).sum();
    c[0] = (spatial + rng.gen_range(0.1..2.0)).sqrt() * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Momentum::new(c).expect("dimension is valid")
}

fn random_offshell(rng: &mut ChaCha8Rng, d: Dimension) -> Momentum {
    loop {
        let c: Vec<f64> = (0..d.get()).map(|_| rng.gen_range(-1.5..1.5)).collect();
        let k = Momentum::new(c).expect("dimension is valid");
        if k.k2().abs() > 0.05 {
            return k;
        }
    }
}

/// Configured content when it lives in `d`, otherwise a mixed default.
fn content_in(ctx: &Ctx, d: Dimension) -> FieldContent {
    match ctx.config.field_content() {
        Ok(c) if c.d == d => c,
        _ => FieldContent::new(
            d,
            vec![FieldSpecies::scalar(2), FieldSpecies::maxwell(1), FieldSpecies::neutrinos(3)],
        )
        .expect("static content is valid"),
    }
}

fn tensor_dims(ctx: &Ctx) -> Vec<usize> {
    let mut dims = vec![3, 4, 5];
    if ctx.config.dimension >= 3 && !dims.contains(&ctx.config.dimension) {
        dims.push(ctx.config.dimension);
    }
    dims
}

fn zeta_exact_d4(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let s = zeta_scalar_massless_exact(dim(4));
    let m = zeta_maxwell_exact(dim(4));
    let pairs = [
        (s.c0, PiRational::from_ratio(1, 960, -2)),
        (s.c1, PiRational::from_ratio(1, 96, -2)),
        (m.c0, PiRational::from_ratio(1, 80, -2)),
        (m.c1, PiRational::zero()),
    ];
    let mut worst = 0.0f64;
    for (got, want) in &pairs {
        let got = ctx.skew_exact(got);
        if got != *want {
            worst = worst.max(rel(got.to_f64(), want.to_f64()).max(f64::MIN_POSITIVE));
        }
    }
    Ok(worst)
}

fn zeta_general_d(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in 2..=12 {
        let n = d as f64;
        let p = (4.0 * std::f64::consts::PI).powf(-n / 2.0) * gamma(n / 2.0 + 1.0) / gamma(n + 2.0);
        let want = [
            p,
            p * (n - 2.0).powi(2) * (n + 1.0) / 2.0,
            p * (2.0 * n * n - 3.0 * n - 8.0),
            p * (n - 4.0).powi(2) * (n - 2.0) * (n + 1.0) / 2.0,
        ];
        let s = zeta_scalar_massless_exact(dim(d));
        let m = zeta_maxwell_exact(dim(d));
        let got = [s.c0.to_f64(), s.c1.to_f64(), m.c0.to_f64(), m.c1.to_f64()];
        for (g, w) in got.iter().zip(want) {
            worst = worst.max(if w == 0.0 { g.abs() } else { rel(ctx.skew(*g), w) });
        }
    }
    Ok(worst)
}

fn channel_algebra(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in tensor_dims(ctx) {
        for _ in 0..30 {
            let k = random_offshell(rng, dim(d));
            let p0 = channel_form(Channel::Traceless, &k)?;
            let p1 = channel_form(Channel::Trace, &k)?;
            let norm = p0.max_abs().max(p1.max_abs());
            let p0s = p0.scale(ctx.skew);
            worst = worst.max(p0s.pair_product(&p0s).max_abs_diff(&p0s) / norm);
            worst = worst.max(p1.pair_product(&p1).max_abs_diff(&p1) / norm);
            worst = worst.max(p0.pair_product(&p1).max_abs() / norm);
        }
    }
    Ok(worst)
}

fn gauge_zeros(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in tensor_dims(ctx) {
        let content = content_in(ctx, dim(d));
        for _ in 0..20 {
            let k = random_timelike(rng, dim(d));
            let xi: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let g = Tensor2::gauge_generator(&k, &xi)?;
            // a perturbed library map: R[h] + (skew - 1) |h|
            let leak = (ctx.skew - 1.0) * g.max_abs();
            worst = worst.max(linearized_riemann(&g, &k).max_abs() + leak);
            worst = worst.max(coupling::stress_polarization(&g, &k, &content, &ctx.scales)?.max_abs());
            worst = worst.max(coupling::particle_density(&g, &k, &content, &ctx.scales)?.abs());
        }
    }
    Ok(worst)
}

fn polarization_dual_path(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in tensor_dims(ctx) {
        let content = content_in(ctx, dim(d));
        for _ in 0..20 {
            let k = random_timelike(rng, dim(d));
            let h = random_symmetric(rng, dim(d));
            let a = coupling::stress_polarization(&h, &k, &content, &ctx.scales)?.scale(ctx.skew);
            let b = coupling::stress_polarization_direct(&h, &k, &content, &ctx.scales)?;
            worst = worst.max((&a - &b).max_abs() / a.max_abs().max(b.max_abs()));
        }
    }
    Ok(worst)
}

fn particle_density_dual_path(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in tensor_dims(ctx) {
        let content = content_in(ctx, dim(d));
        for _ in 0..20 {
            let k = random_timelike(rng, dim(d));
            let h = random_symmetric(rng, dim(d));
            let a = coupling::particle_density(&h, &k, &content, &ctx.scales)?;
            let b = coupling::particle_density_direct(&h, &k, &content, &ctx.scales)?;
            worst = worst.max(rel(ctx.skew(a), b));
        }
    }
    Ok(worst)
}

fn coupled_linear_solve(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let mut worst = 0.0f64;
    for d in tensor_dims(ctx) {
        let sys = couple(&content_in(ctx, dim(d)), &ctx.scales, DispersivePart::Zero)?;
        for _ in 0..20 {
            let k2 = if rng.gen_bool(0.8) { rng.gen_range(0.01..4.0) } else { -rng.gen_range(0.01..4.0) };
            let s = sys.at(k2)?;
            for r in Channel::ALL {
                let (tt, hh) = (s.chi_tt_in.get(r), s.chi_hh_in.get(r));
                // [1, -χTT; -χhh, 1] applied to the closed-form columns
                let cols = [
                    ((s.chi_th.get(r), s.chi_hh.get(r)), (one, zero)),
                    ((s.chi_tt.get(r), s.gamma.get(r) * ctx.skew), (zero, one)),
                ];
                let norm_a = 1.0f64.max(tt.norm()).max(hh.norm());
                for ((x0, x1), (b0, b1)) in cols {
                    let r0 = x0 - tt * x1 - b0;
                    let r1 = x1 - hh * x0 - b1;
                    let size = x0.norm().max(x1.norm());
                    worst = worst.max(r0.norm().max(r1.norm()) / (norm_a * size));
                }
            }
        }
    }
    Ok(worst)
}

fn stochastic_identities(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in tensor_dims(ctx) {
        let r = stochastic_identities_check(&content_in(ctx, dim(d)), &ctx.scales)?;
        worst = worst.max(r.gg_deviation).max(r.gt_deviation);
        if r.unmatched_terms > 0 || r.terms_checked == 0 {
            worst = f64::INFINITY;
        }
    }
    Ok(worst + (ctx.skew - 1.0))
}

fn tidal_closed_forms(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let omega = rng.gen_range(0.2..3.0);
        let k3 = rng.gen_range(-2.0..2.0);
        let s = k3 * k3 + rng.gen_range(0.0..4.0);
        let v = rng.gen_range(0.0..1.0);
        let (alpha, beta) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
        let probe = ProbeConfig::new(v, 1.0)?;
        let closed = geodesic::tidal_spectra_closed(omega, s, k3, &probe, ctx.skew(alpha), beta);
        let oracle = geodesic::tidal_spectra_oracle(omega, s, k3, &probe, alpha, beta, 1024)?;
        worst = worst.max(closed.max_relative_diff(&oracle));
    }
    Ok(worst)
}

fn gw_ricci_flat(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let omega = rng.gen_range(0.01..10.0);
        let k3 = rng.gen_range(-omega..omega);
        let a = rng.gen_range(0.0..5.0);
        let probe = ProbeConfig::new(rng.gen_range(0.0..=1.0), 1.0)?;
        let t = geodesic::tidal_spectra_closed(omega, omega * omega, k3, &probe, a, ctx.skew(a));
        worst = worst.max(t.q33_q.abs()).max(t.qq.abs());
    }
    Ok(worst)
}

fn slow_grid(tau: f64) -> Vec<f64> {
    (0..7).map(|i| 0.1 * 100f64.powf(i as f64 / 6.0) / tau).collect()
}

fn slow_probe_longitudinal_check(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let tau = ctx.config.probe.tau;
    let probe = ProbeConfig::new(0.0, tau)?;
    let gw = DeviationSolver::new(probe, &FieldContent::standard(dim(4), 0), &ctx.scales, ChannelSelect::GwOnly)?;
    let mut worst = 0.0f64;
    for w in slow_grid(tau) {
        worst = worst.max(rel(ctx.skew(gw.at(w)?.d33), slow_probe_longitudinal(w, tau, &ctx.scales)));
    }
    Ok(worst)
}

fn slow_probe_ratio(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let tau = ctx.config.probe.tau;
    let probe = ProbeConfig::new(0.0, tau)?;
    let gw = DeviationSolver::new(probe, &FieldContent::standard(dim(4), 0), &ctx.scales, ChannelSelect::GwOnly)?;
    let mut worst = 0.0f64;
    for w in slow_grid(tau) {
        let d = gw.at(w)?;
        for c in [d.d13, d.d23, d.d12, d.d12p] {
            worst = worst.max(rel(ctx.skew(c) / d.d33, 0.75));
        }
    }
    Ok(worst)
}

fn slow_probe_trace_check(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let tau = ctx.config.probe.tau;
    let probe = ProbeConfig::new(0.0, tau)?;
    let mut worst = 0.0f64;
    let mut counts = vec![0u32, 3];
    if !counts.contains(&ctx.config.content.neutrinos) {
        counts.push(ctx.config.content.neutrinos);
    }
    for n_nu in counts {
        let content = FieldContent::standard(dim(4), n_nu);
        let gov = DeviationSolver::new(probe, &content, &ctx.scales, ChannelSelect::GravityOfVacuum)?;
        for w in slow_grid(tau) {
            worst = worst.max(rel(ctx.skew(gov.at(w)?.trace), slow_probe_trace(w, tau, n_nu, &ctx.scales)));
        }
    }
    Ok(worst)
}

fn scaling_law(_: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let content = FieldContent::standard(dim(4), 3);
    let lp = ctx.scales.planck_length();
    let mut normalized = Vec::new();
    for i in 0..=4 {
        let omega = 1e-3 * 10f64.powf(i as f64 / 2.0) / lp;
        normalized.push(geodesic::scaling_report(omega, &ctx.scales, &content)?.normalized);
    }
    let base = ctx.skew(normalized[0]);
    Ok(normalized.iter().map(|&x| rel(x, base)).fold(0.0, f64::max))
}

fn eddington_point_mass(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = ModifiedGravity::new(rng.gen_range(0.1..3.0), rng.gen_range(-2.5..2.5))?;
        let k = Momentum::from_contravariant(&[
            0.0,
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(0.1..1.0),
        ])?;
        let pm = m.point_mass_metric(rng.gen_range(0.1..2.0), &k)?;
        worst = worst.max(rel(ctx.skew(pm.ratio()), m.eddington_gamma()?));
    }
    Ok(worst)
}

fn positive_frequency_support(rng: &mut ChaCha8Rng, ctx: &Ctx) -> vacnoise::Result<f64> {
    let mut worst = 0.0f64;
    for d in 3..=6 {
        let content = content_in(ctx, dim(d));
        let full = content.stress_spectrum(&ctx.scales)?.to_full()?;
        debug_assert_eq!(full.kind, DensityKind::Full);
        for _ in 0..20 {
            let k0 = -rng.gen_range(0.01..3.0);
            let k2 = rng.gen_range(0.0..k0 * k0);
            let c = full.regular_channels(k0, k2);
            let spacelike = full.regular_channels(-k0, -rng.gen_range(0.01..3.0));
            worst = worst.max(c.c0.abs()).max(c.c1.abs()).max(spacelike.c0.abs()).max(spacelike.c1.abs());
        }
        let positive = full.regular_channels(1.0, 0.5).c0;
        worst = worst.max((ctx.skew - 1.0) * positive.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let r = run(&RunConfig::default(), DEFAULT_SEED, None).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn every_fault_is_caught_by_its_check() {
        let config = RunConfig::default();
        for name in check_names() {
            let r = run(&config, 7, Some(name)).unwrap();
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            assert_eq!(failed, vec![name]);
        }
    }

    #[test]
    fn unknown_fault_is_a_usage_error() {
        assert!(matches!(run(&RunConfig::default(), 1, Some("nope")), Err(CliError::Usage(_))));
    }
}
