//! Minkowski tensor algebra in `d` spacetime dimensions.
//!
//! Signature is `(+, -, ..., -)`. Tensors are stored densely in row-major
//! order; each index carries a [`Variance`] flag. Since the metric is diagonal
//! with entries `±1`, raising or lowering an index only flips signs and is
//! exact in floating point.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Spacetime dimension, `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        Ok(Self(d))
    }

    pub const fn get(self) -> usize {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }

    /// Fails unless `d >= min`.
    pub fn require_at_least(self, op: &'static str, min: usize) -> Result<()> {
        if self.0 < min {
            return Err(Error::UnsupportedDimension { op, d: self.0, min });
        }
        Ok(())
    }

    pub fn require_exactly(self, op: &'static str, expected: usize) -> Result<()> {
        if self.0 != expected {
            return Err(Error::WrongDimension { op, d: self.0, expected });
        }
        Ok(())
    }
}

/// Diagonal entry `η_μμ` (equal to `η^μμ`).
#[inline]
pub fn eta(mu: usize) -> f64 {
    if mu == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A `d`-component wavevector stored with lower (covariant) indices `k_μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Momentum {
    lower: Vec<f64>,
    k2: f64,
}

impl Momentum {
    /// Builds a momentum from covariant components `k_μ`.
    pub fn new(lower: Vec<f64>) -> Result<Self> {
        Dimension::new(lower.len())?;
        let k2 = invariant(&lower);
        Ok(Self { lower, k2 })
    }

    /// Builds a momentum from contravariant components `k^μ = (k^0, k^1, ...)`,
    /// i.e. frequency followed by the physical spatial wavevector.
    pub fn from_contravariant(upper: &[f64]) -> Result<Self> {
        let lower = upper.iter().enumerate().map(|(mu, &x)| eta(mu) * x).collect();
        Self::new(lower)
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.lower.len())
    }

    pub fn d(&self) -> usize {
        self.lower.len()
    }

    /// Frequency component `k_0 = k^0`.
    pub fn k0(&self) -> f64 {
        self.lower[0]
    }

    /// Invariant `k² = k_0² - Σ k_i²`.
    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn lower(&self, mu: usize) -> f64 {
        self.lower[mu]
    }

    pub fn upper(&self, mu: usize) -> f64 {
        eta(mu) * self.lower[mu]
    }

    pub fn components(&self) -> &[f64] {
        &self.lower
    }

    /// Recomputes `k²` from the components.
    pub fn recompute_k2(&self) -> f64 {
        invariant(&self.lower)
    }

    pub fn negated(&self) -> Self {
        Self { lower: self.lower.iter().map(|x| -x).collect(), k2: self.k2 }
    }

    pub fn is_timelike(&self) -> bool {
        self.k2 > 0.0
    }
}

fn invariant(lower: &[f64]) -> f64 {
    lower.iter().enumerate().map(|(mu, &x)| eta(mu) * x * x).sum()
}

/// Whether an index is written down (covariant) or up (contravariant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Lower,
    Upper,
}

impl Variance {
    fn flip(self) -> Self {
        match self {
            Variance::Lower => Variance::Upper,
            Variance::Upper => Variance::Lower,
        }
    }
}

/// Rank-2 tensor with dense `d × d` storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor2 {
    d: usize,
    data: Vec<f64>,
    variance: [Variance; 2],
}

impl Tensor2 {
    pub fn zeros(d: Dimension) -> Self {
        let d = d.get();
        Self { d, data: vec![0.0; d * d], variance: [Variance::Lower; 2] }
    }

    pub fn from_fn(d: Dimension, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(d);
        for mu in 0..t.d {
            for nu in 0..t.d {
                t[(mu, nu)] = f(mu, nu);
            }
        }
        t
    }

    /// Covariant tensor from row-major entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let d = Dimension::new(rows.len())?;
        if rows.iter().any(|r| r.len() != d.get()) {
            return Err(Error::InvalidArgument("rank-2 tensor rows must be square".into()));
        }
        Ok(Self::from_fn(d, |mu, nu| rows[mu][nu]))
    }

    /// Symmetric covariant tensor `k_μ ξ_ν + k_ν ξ_μ`: a pure-gauge metric
    /// perturbation generated by the vector `ξ_μ` (the factor `-i` dropped).
    pub fn gauge_generator(k: &Momentum, xi: &[f64]) -> Result<Self> {
        if xi.len() != k.d() {
            return Err(Error::DimensionMismatch(xi.len(), k.d()));
        }
        Ok(Self::from_fn(k.dim(), |mu, nu| k.lower(mu) * xi[nu] + k.lower(nu) * xi[mu]))
    }

    /// Outer product `k_μ k_ν`.
    pub fn outer(k: &Momentum) -> Self {
        Self::from_fn(k.dim(), |mu, nu| k.lower(mu) * k.lower(nu))
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.d)
    }

    pub fn variance(&self) -> [Variance; 2] {
        self.variance
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.d).map(<[f64]>::to_vec).collect()
    }

    /// Flips the variance of index `slot`, applying the metric.
    pub fn toggle_index(&self, slot: usize) -> Self {
        let mut out = self.clone();
        for mu in 0..self.d {
            for nu in 0..self.d {
                let s = if slot == 0 { eta(mu) } else { eta(nu) };
                out[(mu, nu)] *= s;
            }
        }
        out.variance[slot] = self.variance[slot].flip();
        out
    }

    /// Returns the tensor with both indices lowered.
    pub fn lowered(&self) -> Self {
        let mut t = self.clone();
        for slot in 0..2 {
            if t.variance[slot] == Variance::Upper {
                t = t.toggle_index(slot);
            }
        }
        t
    }

    /// Mixed trace `T^μ_μ`.
    pub fn trace(&self) -> f64 {
        let t = self.lowered();
        (0..self.d).map(|mu| eta(mu) * t[(mu, mu)]).sum()
    }

    /// Full contraction `A^{μν} B_{μν}`.
    pub fn contract(&self, other: &Self) -> f64 {
        let a = self.lowered();
        let b = other.lowered();
        let mut acc = 0.0;
        for mu in 0..self.d {
            for nu in 0..self.d {
                acc += eta(mu) * eta(nu) * a[(mu, nu)] * b[(mu, nu)];
            }
        }
        acc
    }

    /// Matrix-style product `A_μ^λ B_λν`.
    pub fn dot(&self, other: &Self) -> Self {
        let a = self.lowered();
        let b = other.lowered();
        Self::from_fn(self.dim(), |mu, nu| {
            (0..self.d).map(|l| eta(l) * a[(mu, l)] * b[(l, nu)]).sum()
        })
    }

    /// Contraction `k^μ T_μν`.
    pub fn contract_momentum(&self, k: &Momentum) -> Vec<f64> {
        let t = self.lowered();
        (0..self.d).map(|nu| (0..self.d).map(|mu| k.upper(mu) * t[(mu, nu)]).sum()).collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        (0..self.d).all(|mu| (0..self.d).all(|nu| (self[(mu, nu)] - self[(nu, mu)]).abs() <= tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut t = self.clone();
        t.data.iter_mut().for_each(|x| *x *= s);
        t
    }
}

impl Index<(usize, usize)> for Tensor2 {
    type Output = f64;
    fn index(&self, (mu, nu): (usize, usize)) -> &f64 {
        &self.data[mu * self.d + nu]
    }
}

impl IndexMut<(usize, usize)> for Tensor2 {
    fn index_mut(&mut self, (mu, nu): (usize, usize)) -> &mut f64 {
        &mut self.data[mu * self.d + nu]
    }
}

impl Add for &Tensor2 {
    type Output = Tensor2;
    fn add(self, rhs: &Tensor2) -> Tensor2 {
        let (a, b) = (self.lowered(), rhs.lowered());
        let mut out = a.clone();
        out.data.iter_mut().zip(&b.data).for_each(|(x, y)| *x += y);
        out
    }
}

impl Sub for &Tensor2 {
    type Output = Tensor2;
    fn sub(self, rhs: &Tensor2) -> Tensor2 {
        self + &(-rhs)
    }
}

impl Neg for &Tensor2 {
    type Output = Tensor2;
    fn neg(self) -> Tensor2 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Tensor2 {
    type Output = Tensor2;
    fn mul(self, s: f64) -> Tensor2 {
        self.scale(s)
    }
}

/// Rank-4 tensor with dense `d⁴` storage, all indices covariant.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor4 {
    d: usize,
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn zeros(d: Dimension) -> Self {
        let d = d.get();
        Self { d, data: vec![0.0; d * d * d * d] }
    }

    pub fn from_fn(d: Dimension, mut f: impl FnMut(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zeros(d);
        let n = t.d;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        t.data[((a * n + b) * n + c) * n + e] = f(a, b, c, e);
                    }
                }
            }
        }
        t
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> Dimension {
        Dimension(self.d)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Pair product `(A·B)_{μνρσ} = A_{μν}^{λτ} B_{λτρσ}`.
    pub fn pair_product(&self, other: &Self) -> Self {
        let n = self.d;
        Self::from_fn(self.dim(), |m, v, r, s| {
            let mut acc = 0.0;
            for l in 0..n {
                for t in 0..n {
                    acc += eta(l) * eta(t) * self[(m, v, l, t)] * other[(l, t, r, s)];
                }
            }
            acc
        })
    }

    /// Trace over the first pair `A^μ_{μρσ}`.
    pub fn first_pair_trace(&self) -> Tensor2 {
        Tensor2::from_fn(self.dim(), |r, s| (0..self.d).map(|m| eta(m) * self[(m, m, r, s)]).sum())
    }

    /// Contraction over the first and third index `η^{μρ} A_{μνρσ}`
    /// (Ricci-type contraction).
    pub fn ricci_contraction(&self) -> Tensor2 {
        Tensor2::from_fn(self.dim(), |v, s| (0..self.d).map(|m| eta(m) * self[(m, v, m, s)]).sum())
    }

    /// `(A·h)_{μν} = A_{μνρσ} h^{ρσ}`.
    pub fn apply(&self, h: &Tensor2) -> Tensor2 {
        let h = h.lowered();
        let n = self.d;
        Tensor2::from_fn(self.dim(), |m, v| {
            let mut acc = 0.0;
            for r in 0..n {
                for s in 0..n {
                    acc += eta(r) * eta(s) * self[(m, v, r, s)] * h[(r, s)];
                }
            }
            acc
        })
    }

    /// Quadratic form `a^{μν} A_{μνρσ} b^{ρσ}`.
    pub fn quadratic_form(&self, a: &Tensor2, b: &Tensor2) -> f64 {
        a.contract(&self.apply(b))
    }

    /// Full contraction `A^{μνρσ} B_{μνρσ}`.
    pub fn contract(&self, other: &Self) -> f64 {
        let n = self.d;
        let mut acc = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        acc += eta(a) * eta(b) * eta(c) * eta(e) * self[(a, b, c, e)] * other[(a, b, c, e)];
                    }
                }
            }
        }
        acc
    }

    /// Contraction of `k^μ` into the first index.
    pub fn contract_momentum_first(&self, k: &Momentum) -> Vec<f64> {
        let n = self.d;
        let mut out = vec![0.0; n * n * n];
        for m in 0..n {
            let km = k.upper(m);
            for v in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        out[(v * n + r) * n + s] += km * self[(m, v, r, s)];
                    }
                }
            }
        }
        out
    }

    /// Contraction of `k^ρ` into the third index.
    pub fn contract_momentum_third(&self, k: &Momentum) -> Vec<f64> {
        let n = self.d;
        let mut out = vec![0.0; n * n * n];
        for m in 0..n {
            for v in 0..n {
                for r in 0..n {
                    let kr = k.upper(r);
                    for s in 0..n {
                        out[(m * n + v) * n + s] += kr * self[(m, v, r, s)];
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { d: self.d, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { d: self.d, data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect() }
    }

    /// `(μν)(ρσ)` pair symmetry plus pair exchange.
    pub fn has_pair_symmetry(&self, tol: f64) -> bool {
        let n = self.d;
        let mut ok = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let x = self[(a, b, c, e)];
                        ok &= (x - self[(b, a, c, e)]).abs() <= tol;
                        ok &= (x - self[(a, b, e, c)]).abs() <= tol;
                        ok &= (x - self[(c, e, a, b)]).abs() <= tol;
                    }
                }
            }
        }
        ok
    }

    /// Antisymmetry within each pair plus pair exchange.
    pub fn has_riemann_symmetry(&self, tol: f64) -> bool {
        let n = self.d;
        let mut ok = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let x = self[(a, b, c, e)];
                        ok &= (x + self[(b, a, c, e)]).abs() <= tol;
                        ok &= (x + self[(a, b, e, c)]).abs() <= tol;
                        ok &= (x - self[(c, e, a, b)]).abs() <= tol;
                        ok &= (x + self[(a, c, e, b)] + self[(a, e, b, c)]).abs() <= tol;
                    }
                }
            }
        }
        ok
    }
}

impl Index<(usize, usize, usize, usize)> for Tensor4 {
    type Output = f64;
    fn index(&self, (a, b, c, e): (usize, usize, usize, usize)) -> &f64 {
        let n = self.d;
        &self.data[((a * n + b) * n + c) * n + e]
    }
}

impl IndexMut<(usize, usize, usize, usize)> for Tensor4 {
    fn index_mut(&mut self, (a, b, c, e): (usize, usize, usize, usize)) -> &mut f64 {
        let n = self.d;
        &mut self.data[((a * n + b) * n + c) * n + e]
    }
}

/// The two channels of transverse symmetric-pair tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Channel {
    /// `r = 0`, traceless part.
    Traceless,
    /// `r = 1`, trace part.
    Trace,
}

impl Channel {
    pub const ALL: [Channel; 2] = [Channel::Traceless, Channel::Trace];

    pub fn index(self) -> usize {
        match self {
            Channel::Traceless => 0,
            Channel::Trace => 1,
        }
    }

    pub fn from_index(r: usize) -> Result<Self> {
        match r {
            0 => Ok(Channel::Traceless),
            1 => Ok(Channel::Trace),
            _ => Err(Error::InvalidArgument(format!("channel index must be 0 or 1, got {r}"))),
        }
    }
}

/// A value per channel; `c0` is `r = 0`, `c1` is `r = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Channels<T> {
    pub c0: T,
    pub c1: T,
}

/// Real channel pair (`λ_r`, `ζ_r`, `α_r`, ...).
pub type ChannelScalar = Channels<f64>;

impl<T> Channels<T> {
    pub const fn new(c0: T, c1: T) -> Self {
        Self { c0, c1 }
    }
}

impl<T: Copy> Channels<T> {
    pub fn get(&self, r: Channel) -> T {
        match r {
            Channel::Traceless => self.c0,
            Channel::Trace => self.c1,
        }
    }

    pub fn map<U>(self, mut f: impl FnMut(Channel, T) -> U) -> Channels<U> {
        Channels { c0: f(Channel::Traceless, self.c0), c1: f(Channel::Trace, self.c1) }
    }

    pub fn zip<U: Copy, V>(self, other: Channels<U>, mut f: impl FnMut(T, U) -> V) -> Channels<V> {
        Channels { c0: f(self.c0, other.c0), c1: f(self.c1, other.c1) }
    }
}

impl ChannelScalar {
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.c0 * s, self.c1 * s)
    }

    pub fn is_finite(&self) -> bool {
        self.c0.is_finite() && self.c1.is_finite()
    }
}

impl Add for ChannelScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

/// Minkowski metric `diag(1, -1, ..., -1)`.
pub fn minkowski(d: Dimension) -> Tensor2 {
    Tensor2::from_fn(d, |mu, nu| if mu == nu { eta(mu) } else { 0.0 })
}

/// `π_μν = η_μν - k_μ k_ν / k²`.
pub fn transverse_projector(k: &Momentum) -> Result<Tensor2> {
    let k2 = k.k2();
    if k2 == 0.0 || !k2.is_finite() {
        return Err(Error::ProjectorUndefined(k2));
    }
    Ok(Tensor2::from_fn(k.dim(), |mu, nu| {
        let e = if mu == nu { eta(mu) } else { 0.0 };
        e - k.lower(mu) * k.lower(nu) / k2
    }))
}

/// Coefficients `(α_r, β_r)` of the channel forms.
pub fn channel_coefficients(d: Dimension, r: Channel) -> (f64, f64) {
    let inv = 1.0 / (d.as_f64() - 1.0);
    match r {
        Channel::Trace => (inv, 0.0),
        Channel::Traceless => (-inv, 0.5),
    }
}

/// Rank-4 form `α_r π_μν π_ρσ + β_r (π_μρ π_νσ + π_μσ π_νρ)` built from
/// an arbitrary symmetric rank-2 tensor.
pub fn pair_form(p: &Tensor2, alpha: f64, beta: f64) -> Tensor4 {
    Tensor4::from_fn(p.dim(), |m, v, r, s| {
        alpha * p[(m, v)] * p[(r, s)] + beta * (p[(m, r)] * p[(v, s)] + p[(m, s)] * p[(v, r)])
    })
}

/// The orthogonal channel projector `π^r_{μνρσ}` at momentum `k`.
pub fn channel_form(r: Channel, k: &Momentum) -> Result<Tensor4> {
    let p = transverse_projector(k)?;
    let (alpha, beta) = channel_coefficients(k.dim(), r);
    Ok(pair_form(&p, alpha, beta))
}

/// Eigenvalues of the linearized Einstein response, `(λ₀, λ₁) = (1, -1/(d-2))`.
pub fn lambda(d: Dimension) -> Result<ChannelScalar> {
    if d.get() == 2 {
        return Err(Error::SingularChannel);
    }
    Ok(Channels::new(1.0, -1.0 / (d.as_f64() - 2.0)))
}

/// `η_{μνρσ} = ½(η_μρ η_νσ + η_μσ η_νρ - η_μν η_ρσ)`, mapping Ricci to Einstein.
pub fn einstein_operator(d: Dimension) -> Tensor4 {
    pair_form(&minkowski(d), -0.5, 0.5)
}

/// `η̄^{μνρσ} = ½(η^μρ η^νσ + η^μσ η^νρ - 2/(d-2) η^μν η^ρσ)` with indices lowered.
pub fn inverse_einstein_operator(d: Dimension) -> Result<Tensor4> {
    if d.get() == 2 {
        return Err(Error::SingularChannel);
    }
    Ok(pair_form(&minkowski(d), -1.0 / (d.as_f64() - 2.0), 0.5))
}

/// Riemann tensor of the conformal perturbation `h = η`:
/// `𝓡_μνρσ = ½(k_μ k_ρ η_νσ + k_ν k_σ η_μρ - k_ν k_ρ η_μσ - k_μ k_σ η_νρ)`.
pub fn conformal_riemann(k: &Momentum) -> Tensor4 {
    linearized_riemann(&minkowski(k.dim()), k)
}

/// Linearized Riemann tensor
/// `½(k_μ k_ρ h_νσ + k_ν k_σ h_μρ - k_ν k_ρ h_μσ - k_μ k_σ h_νρ)`.
pub fn linearized_riemann(h: &Tensor2, k: &Momentum) -> Tensor4 {
    let h = h.lowered();
    let kl = |m| k.lower(m);
    Tensor4::from_fn(k.dim(), |m, v, r, s| {
        0.5 * (kl(m) * kl(r) * h[(v, s)] + kl(v) * kl(s) * h[(m, r)]
            - kl(v) * kl(r) * h[(m, s)]
            - kl(m) * kl(s) * h[(v, r)])
    })
}

/// Linearized Ricci tensor `½(k² h_μν + k_μ k_ν h - k_μ k^σ h_νσ - k_ν k^σ h_μσ)`.
pub fn linearized_ricci(h: &Tensor2, k: &Momentum) -> Tensor2 {
    let h = h.lowered();
    let trace = h.trace();
    let kh = h.contract_momentum(k);
    let k2 = k.k2();
    Tensor2::from_fn(k.dim(), |m, v| {
        0.5 * (k2 * h[(m, v)] + k.lower(m) * k.lower(v) * trace - k.lower(m) * kh[v] - k.lower(v) * kh[m])
    })
}

/// All first-order curvatures of a metric perturbation at a given momentum.
#[derive(Debug, Clone)]
pub struct Curvatures {
    pub riemann: Tensor4,
    pub ricci: Tensor2,
    pub einstein: Tensor2,
    pub scalar: f64,
    /// Present only for `d >= 4`.
    pub weyl: Option<Tensor4>,
}

/// Computes the linearized curvatures of `h`. Weyl is produced for `d >= 4`;
/// use [`weyl`] to get an error for lower dimensions.
pub fn linearized_curvatures(h: &Tensor2, k: &Momentum) -> Result<Curvatures> {
    if h.d() != k.d() {
        return Err(Error::DimensionMismatch(h.d(), k.d()));
    }
    let riemann = linearized_riemann(h, k);
    let ricci = linearized_ricci(h, k);
    let scalar = ricci.trace();
    let einstein = &ricci - &minkowski(k.dim()).scale(0.5 * scalar);
    let weyl = if k.d() >= 4 { Some(weyl_from(&riemann, &ricci, scalar)) } else { None };
    Ok(Curvatures { riemann, ricci, einstein, scalar, weyl })
}

/// Weyl tensor `W_μρνσ` of `h`; rejects `d < 4`.
pub fn weyl(h: &Tensor2, k: &Momentum) -> Result<Tensor4> {
    k.dim().require_at_least("weyl", 4)?;
    let c = linearized_curvatures(h, k)?;
    Ok(c.weyl.expect("d >= 4"))
}

fn weyl_from(riemann: &Tensor4, ricci: &Tensor2, scalar: f64) -> Tensor4 {
    let d = riemann.d() as f64;
    let g = minkowski(riemann.dim());
    let c1 = 1.0 / (d - 2.0);
    let c2 = 1.0 / ((d - 1.0) * (d - 2.0));
    // index names follow W_{μρνσ}
    Tensor4::from_fn(riemann.dim(), |m, r, n, s| {
        riemann[(m, r, n, s)]
            - c1 * (g[(r, s)] * ricci[(m, n)] + g[(m, n)] * ricci[(r, s)]
                - g[(r, n)] * ricci[(m, s)]
                - g[(m, s)] * ricci[(r, n)])
            + c2 * (g[(m, n)] * g[(r, s)] - g[(m, s)] * g[(r, n)]) * scalar
    })
}

/// Channel parts `G^r = π^r · G` of an Einstein tensor.
pub fn einstein_channels(einstein: &Tensor2, k: &Momentum) -> Result<Channels<Tensor2>> {
    let g0 = channel_form(Channel::Traceless, k)?.apply(einstein);
    let g1 = channel_form(Channel::Trace, k)?.apply(einstein);
    Ok(Channels { c0: g0, c1: g1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4(c: [f64; 4]) -> Momentum {
        Momentum::new(c.to_vec()).unwrap()
    }

    #[test]
    fn minkowski_d4_and_d2() {
        let d4 = minkowski(Dimension::new(4).unwrap());
        assert_eq!(d4.rows(), vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0, 0.0],
            vec![0.0, 0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.0, -1.0],
        ]);
        assert_eq!(d4.trace(), 4.0);
        let d2 = minkowski(Dimension::new(2).unwrap());
        assert_eq!(d2.rows(), vec![vec![1.0, 0.0], vec![0.0, -1.0]]);
        assert!(matches!(Dimension::new(1), Err(Error::DimensionTooSmall(1))));
    }

    #[test]
    fn projector_rest_frame() {
        let p = transverse_projector(&k4([1.0, 0.0, 0.0, 0.0])).unwrap();
        let expect = [0.0, -1.0, -1.0, -1.0];
        for mu in 0..4 {
            for nu in 0..4 {
                let e = if mu == nu { expect[mu] } else { 0.0 };
                assert_eq!(p[(mu, nu)], e);
            }
        }
    }

    #[test]
    fn projector_rejects_lightlike() {
        let err = transverse_projector(&k4([1.0, 0.0, 0.0, 1.0])).unwrap_err();
        assert!(matches!(err, Error::ProjectorUndefined(_)));
        assert!(channel_form(Channel::Trace, &k4([0.0; 4])).is_err());
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(Dimension::new(4).unwrap()).unwrap(), Channels::new(1.0, -0.5));
        assert_eq!(lambda(Dimension::new(3).unwrap()).unwrap(), Channels::new(1.0, -1.0));
        assert_eq!(lambda(Dimension::new(2).unwrap()), Err(Error::SingularChannel));
    }

    #[test]
    fn channel_coefficients_d4() {
        let d = Dimension::new(4).unwrap();
        assert_eq!(channel_coefficients(d, Channel::Trace), (1.0 / 3.0, 0.0));
        assert_eq!(channel_coefficients(d, Channel::Traceless), (-1.0 / 3.0, 0.5));
    }

    #[test]
    fn conformal_riemann_component() {
        let r = conformal_riemann(&k4([1.0, 0.0, 0.0, 1.0]));
        assert_eq!(r[(0, 1, 0, 1)], -0.5);
        assert!(r.has_riemann_symmetry(0.0));
    }

    #[test]
    fn weyl_requires_d4() {
        let k = Momentum::new(vec![1.0, 0.2, 0.1]).unwrap();
        let h = minkowski(k.dim());
        assert!(matches!(weyl(&h, &k), Err(Error::UnsupportedDimension { .. })));
        assert!(linearized_curvatures(&h, &k).unwrap().weyl.is_none());
    }

    #[test]
    fn index_toggle_round_trip_is_exact() {
        let t = Tensor2::from_fn(Dimension::new(4).unwrap(), |m, n| (m * 4 + n) as f64 + 0.25);
        let back = t.toggle_index(0).toggle_index(1).toggle_index(0).toggle_index(1);
        assert_eq!(back, t);
        assert_eq!(t.toggle_index(1).lowered(), t);
    }

    #[test]
    fn contravariant_momentum() {
        let k = Momentum::from_contravariant(&[2.0, 1.0, 0.0, 0.5]).unwrap();
        assert_eq!(k.lower(1), -1.0);
        assert_eq!(k.upper(3), 0.5);
        assert_eq!(k.k2(), 4.0 - 1.0 - 0.25);
        assert_eq!(k.recompute_k2(), k.k2());
    }
}
