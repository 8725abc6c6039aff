//! Exact coefficients of the form `q · π^n` with `q` rational.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `rational × π^pi_power`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiRational {
    pub rational: BigRational,
    pub pi_power: i32,
}

impl PiRational {
    pub fn new(rational: BigRational, pi_power: i32) -> Self {
        let mut v = Self { rational, pi_power };
        if v.rational.is_zero() {
            v.pi_power = 0;
        }
        v
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), 0)
    }

    pub fn from_ratio(num: i64, den: i64, pi_power: i32) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), pi_power)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.rational.is_negative()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::new(&self.rational * q, self.pi_power)
    }

    pub fn to_f64(&self) -> f64 {
        let q = self.rational.to_f64().unwrap_or(f64::NAN);
        q * std::f64::consts::PI.powi(self.pi_power)
    }
}

impl Add for &PiRational {
    type Output = Option<PiRational>;

    /// Sum, defined when the π powers agree or one side is zero.
    fn add(self, rhs: &PiRational) -> Option<PiRational> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        (self.pi_power == rhs.pi_power)
            .then(|| PiRational::new(&self.rational + &rhs.rational, self.pi_power))
    }
}

impl Mul for &PiRational {
    type Output = PiRational;
    fn mul(self, rhs: &PiRational) -> PiRational {
        PiRational::new(&self.rational * &rhs.rational, self.pi_power + rhs.pi_power)
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 1 {
        return String::new();
    }
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for PiRational {
    /// Renders e.g. `1/(80π²)`, `-1/(4π)`, `3/(256π)`, `2π³/5`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let num = self.rational.numer();
        let den = self.rational.denom();
        let sign = if num.is_negative() { "-" } else { "" };
        let num = num.abs();
        let pi = format!("π{}", superscript(self.pi_power.unsigned_abs()));
        match self.pi_power.signum() {
            0 if den.is_one() => write!(f, "{sign}{num}"),
            0 => write!(f, "{sign}{num}/{den}"),
            1 => {
                let head = if num.is_one() { pi } else { format!("{num}{pi}") };
                if den.is_one() {
                    write!(f, "{sign}{head}")
                } else {
                    write!(f, "{sign}{head}/{den}")
                }
            }
            _ => {
                if den.is_one() {
                    write!(f, "{sign}{num}/{pi}")
                } else {
                    write!(f, "{sign}{num}/({den}{pi})")
                }
            }
        }
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `Γ(m/2)` for a positive integer `m`, as `q · π^{0 or 1/2}`.
/// Returns `(q, has_sqrt_pi)`.
pub fn gamma_half(m: u64) -> (BigRational, bool) {
    assert!(m > 0, "gamma_half needs a positive argument");
    if m.is_multiple_of(2) {
        (BigRational::from_integer(factorial(m / 2 - 1)), false)
    } else {
        // Γ(n + 1/2) = (2n)! / (4^n n!) √π
        let n = (m - 1) / 2;
        let num = factorial(2 * n);
        let den = BigInt::from(4u8).pow(n as u32) * factorial(n);
        (BigRational::new(num, den), true)
    }
}

/// The common prefactor `(4π)^{-d/2} Γ(d/2 + 1) / Γ(d + 2)` of every
/// stress-tensor channel coefficient, as an exact `q · π^n`.
pub fn stress_prefactor(d: u64) -> PiRational {
    let (gamma_num, sqrt_pi) = gamma_half(d + 2);
    let gamma_den = BigRational::from_integer(factorial(d + 1));
    // (4π)^{-d/2} = 2^{-d} π^{-d/2}
    let two_pow = BigRational::from_integer(BigInt::from(2u8).pow(d as u32));
    let q = gamma_num / gamma_den / two_pow;
    // π exponent: -d/2 (+1/2 when the gamma carries √π); always an integer
    let twice = -(d as i32) + i32::from(sqrt_pi);
    debug_assert!(twice % 2 == 0);
    PiRational::new(q, twice / 2)
}
