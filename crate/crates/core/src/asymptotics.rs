//! Asymptotic machinery behind the spiral: harmonic-number expansions,
//! Euler-Maclaurin sums of orders 1 and 3, the complex power sums
//! `Σ (k + 1/2)^{p + iπ/2}` with their closed forms, the closed-form
//! approximant of the scaled center sequence, and the radial gap between a
//! point and the spiral `r = e^{4θ/π}`.
//!
//! Complex powers of positive reals are always taken with the real
//! logarithm, `t^{p+iq} = e^{(p+iq) ln t}`, so no branch cut is involved.

use crate::numeric::{gauss_legendre_8, nearest_branch, real_pow, CompensatedComplexSum};
use crate::{Error, Parity, Result};
use num_complex::Complex64;
use num_rational::Rational64;
use std::f64::consts::{LN_2, PI};

/// Euler-Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Growth rate `4/π` of the limiting spiral.
pub const SPIRAL_GROWTH: f64 = 4.0 / PI;

const HALF_PI_I: Complex64 = Complex64::new(0.0, PI / 2.0);

/// `γ + ln(n + 1/2) + 1/(24 n²)`.
pub fn harmonic_expansion(n: u64) -> f64 {
    let n = n as f64;
    EULER_GAMMA + (n + 0.5).ln() + 1.0 / (24.0 * n * n)
}

/// DeTemple's bracket `(1/(24(n+1)²), 1/(24n²))` for `H_n - γ - ln(n + 1/2)`.
pub fn detemple_bounds(n: u64) -> (f64, f64) {
    let n = n as f64;
    (1.0 / (24.0 * (n + 1.0) * (n + 1.0)), 1.0 / (24.0 * n * n))
}

/// `ln 2 + (-1)^(n-1)/(2n) + (-1)^n/(4n²)`.
pub fn alt_harmonic_expansion(n: u64) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let n = n as f64;
    LN_2 - sign / (2.0 * n) + sign / (4.0 * n * n)
}

/// The Bernoulli polynomials used by the Euler-Maclaurin remainders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliPoly {
    /// `x - 1/2`
    B1,
    /// `x³ - (3/2)x² + (1/2)x`
    B3,
}

impl BernoulliPoly {
    pub fn degree(self) -> u32 {
        match self {
            BernoulliPoly::B1 => 1,
            BernoulliPoly::B3 => 3,
        }
    }

    /// Coefficients in ascending powers of `x`.
    pub fn coefficients(self) -> Vec<Rational64> {
        let r = Rational64::new;
        match self {
            BernoulliPoly::B1 => vec![r(-1, 2), r(1, 1)],
            BernoulliPoly::B3 => vec![r(0, 1), r(1, 2), r(-3, 2), r(1, 1)],
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            BernoulliPoly::B1 => x - 0.5,
            BernoulliPoly::B3 => x * (x * (x - 1.5) + 0.5),
        }
    }

    /// Periodic extension `B(t - ⌊t⌋)`.
    pub fn periodic(self, t: f64) -> f64 {
        self.eval(t - t.floor())
    }

    /// Exact `∫_0^1 B(x) dx`.
    pub fn unit_integral(self) -> Rational64 {
        self.coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| c / Rational64::from_integer(k as i64 + 1))
            .sum()
    }

    /// `sup_{[0,1]} |B(x)|`; for `B3` this is the constant bounding the
    /// order-3 remainder, `√3/36`, attained at `x = 1/2 ± √3/6`.
    pub fn sup_norm(self) -> f64 {
        match self {
            BernoulliPoly::B1 => 0.5,
            BernoulliPoly::B3 => 3f64.sqrt() / 36.0,
        }
    }
}

/// A function with the derivatives the Euler-Maclaurin remainders need.
pub trait EmIntegrand {
    fn value(&self, t: f64) -> Complex64;
    fn d1(&self, t: f64) -> Complex64;
    fn d3(&self, t: f64) -> Complex64;
}

/// `(t + shift)^exponent` for `t + shift > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedPower {
    pub shift: f64,
    pub exponent: Complex64,
}

impl ShiftedPower {
    pub fn new(shift: f64, exponent: Complex64) -> Self {
        Self { shift, exponent }
    }

    fn pow(&self, t: f64, e: Complex64) -> Complex64 {
        real_pow(t + self.shift, e.re, e.im)
    }

    /// An antiderivative, `(t + shift)^{e+1} / (e + 1)`; requires `e ≠ -1`.
    pub fn antiderivative(&self, t: f64) -> Complex64 {
        let e1 = self.exponent + 1.0;
        self.pow(t, e1) / e1
    }
}

impl EmIntegrand for ShiftedPower {
    fn value(&self, t: f64) -> Complex64 {
        self.pow(t, self.exponent)
    }

    fn d1(&self, t: f64) -> Complex64 {
        self.exponent * self.pow(t, self.exponent - 1.0)
    }

    fn d3(&self, t: f64) -> Complex64 {
        let e = self.exponent;
        e * (e - 1.0) * (e - 2.0) * self.pow(t, e - 3.0)
    }
}

/// Real polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial(pub Vec<f64>);

impl RealPolynomial {
    fn horner(coeffs: &[f64], t: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    fn derivative(coeffs: &[f64]) -> Vec<f64> {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect()
    }
}

impl EmIntegrand for RealPolynomial {
    fn value(&self, t: f64) -> Complex64 {
        Complex64::new(Self::horner(&self.0, t), 0.0)
    }

    fn d1(&self, t: f64) -> Complex64 {
        Complex64::new(Self::horner(&Self::derivative(&self.0), t), 0.0)
    }

    fn d3(&self, t: f64) -> Complex64 {
        let d = Self::derivative(&Self::derivative(&Self::derivative(&self.0)));
        Complex64::new(Self::horner(&d, t), 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmOrder {
    One,
    Three,
}

/// `Σ_{i=m}^{n} f(i) - ∫_m^n f` through the Euler-Maclaurin formula of the
/// given order. The periodic-Bernoulli remainder integral is evaluated with
/// 8-point Gauss-Legendre on every unit interval.
pub fn em_sum_minus_integral<F: EmIntegrand + ?Sized>(
    f: &F,
    m: i64,
    n: i64,
    order: EmOrder,
) -> Result<Complex64> {
    if m >= n {
        return Err(Error::invalid(format!("Euler-Maclaurin needs m < n, got m = {m}, n = {n}")));
    }
    let (mf, nf) = (m as f64, n as f64);
    let endpoints = (f.value(mf) + f.value(nf)) * 0.5;
    let mut remainder = CompensatedComplexSum::new();
    for j in m..n {
        let a = j as f64;
        let piece = match order {
            EmOrder::One => gauss_legendre_8(a, a + 1.0, |t| f.d1(t) * BernoulliPoly::B1.eval(t - a)),
            EmOrder::Three => gauss_legendre_8(a, a + 1.0, |t| f.d3(t) * BernoulliPoly::B3.eval(t - a)),
        };
        remainder.add(piece);
    }
    Ok(match order {
        EmOrder::One => endpoints + remainder.value(),
        EmOrder::Three => endpoints + (f.d1(nf) - f.d1(mf)) / 12.0 + remainder.value() / 6.0,
    })
}

/// The three power sums `Σ_{k=2}^{n-1} (±1)^k (k + 1/2)^{p + iπ/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerSum {
    /// `p = 1`
    Linear,
    /// `p = 0`, with the alternating sign `(-1)^k`
    Alternating,
    /// `p = -1`
    Reciprocal,
}

impl PowerSum {
    /// Only `(1, false)`, `(0, true)` and `(-1, false)` occur.
    pub fn from_parts(p: i32, alternating: bool) -> Result<Self> {
        match (p, alternating) {
            (1, false) => Ok(PowerSum::Linear),
            (0, true) => Ok(PowerSum::Alternating),
            (-1, false) => Ok(PowerSum::Reciprocal),
            _ => Err(Error::invalid(format!(
                "no power sum with p = {p}, alternating = {alternating}"
            ))),
        }
    }

    pub fn real_exponent(self) -> i32 {
        match self {
            PowerSum::Linear => 1,
            PowerSum::Alternating => 0,
            PowerSum::Reciprocal => -1,
        }
    }

    /// Weight of this sum in the expansion of the center sequence, up to
    /// the common rotation `e^{iπ(γ + ln 2)/2}`.
    pub fn weight(self) -> PiComplex {
        let r = Rational64::new;
        match self {
            PowerSum::Linear => PiComplex::new(PiTerm::new(r(1, 1), -1), PiTerm::zero()),
            PowerSum::Alternating => PiComplex::new(PiTerm::zero(), PiTerm::new(r(-1, 4), 0)),
            PowerSum::Reciprocal => PiComplex::new(PiTerm::new(r(-35, 96), 1), PiTerm::new(r(1, 48), 0)),
        }
    }
}

/// `coeff · π^power` with a rational coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiTerm {
    pub coeff: Rational64,
    pub pi_power: i32,
}

impl PiTerm {
    pub fn new(coeff: Rational64, pi_power: i32) -> Self {
        Self { coeff, pi_power }
    }

    pub fn zero() -> Self {
        Self::new(Rational64::from_integer(0), 0)
    }

    pub fn value(self) -> f64 {
        *self.coeff.numer() as f64 / *self.coeff.denom() as f64 * PI.powi(self.pi_power)
    }
}

/// Complex number whose parts are single rational multiples of powers of π.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiComplex {
    pub re: PiTerm,
    pub im: PiTerm,
}

impl PiComplex {
    pub fn new(re: PiTerm, im: PiTerm) -> Self {
        Self { re, im }
    }

    pub fn value(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Direct summation of the power sum up to `k = n - 1`.
pub fn power_sum_exact(kind: PowerSum, n: u64) -> Result<Complex64> {
    if n < 3 {
        return Err(Error::invalid(format!("power sums need n >= 3, got {n}")));
    }
    let p = kind.real_exponent() as f64;
    let mut acc = CompensatedComplexSum::new();
    for k in 2..n {
        let term = real_pow(k as f64 + 0.5, p, PI / 2.0);
        if kind == PowerSum::Alternating && k % 2 == 1 {
            acc.add(-term);
        } else {
            acc.add(term);
        }
    }
    Ok(acc.value())
}

/// Closed asymptotic form of the power sum, valid up to an additive
/// constant and an `O(1/n)` error.
pub fn power_sum_closed(kind: PowerSum, n: u64) -> Result<Complex64> {
    if n < 3 {
        return Err(Error::invalid(format!("power sums need n >= 3, got {n}")));
    }
    let u = n as f64 - 0.5;
    let pow = |p: f64| real_pow(u, p, PI / 2.0);
    Ok(match kind {
        PowerSum::Linear => {
            pow(2.0) / (HALF_PI_I + 2.0) + pow(1.0) * 0.5 + (HALF_PI_I + 1.0) / 12.0 * pow(0.0)
        }
        PowerSum::Reciprocal => pow(0.0) / HALF_PI_I,
        PowerSum::Alternating => {
            let sign = Parity::of(n).sign();
            pow(0.0) * (-sign / 2.0)
        }
    })
}

/// Coefficients `(a, b)` of the closed-form approximant for one parity of
/// `n`. The approximant is [`lemma7_f`]`(n - 1/2, a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Approximant {
    pub parity: Parity,
    pub a: Rational64,
    pub b: Rational64,
}

impl Approximant {
    pub fn for_parity(parity: Parity) -> Self {
        let b = match parity {
            Parity::Even => Rational64::new(43, 6),
            Parity::Odd => Rational64::new(31, 6),
        };
        Self {
            parity,
            a: Rational64::new(1, 4),
            b,
        }
    }

    /// `a + b π i / 4`.
    pub fn coefficient(&self) -> Complex64 {
        Complex64::new(ratio_f64(self.a), ratio_f64(self.b) * PI / 4.0)
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        lemma7_f(t, ratio_f64(self.a), ratio_f64(self.b))
    }

    /// `(1/2 - b)(1 + π²/16)`, the limiting radial gap.
    pub fn gap_limit(&self) -> f64 {
        gap_limit(ratio_f64(self.b))
    }
}

fn ratio_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `A(n) = u^{2+iπ/2} + (1 + iπ/4)(u^{1+iπ/2} + (1/4 + (37/24 + (-1)^n/4)πi) u^{iπ/2})`
/// with `u = n - 1/2`.
pub fn approximant(n: u64) -> Result<Complex64> {
    if n < 3 {
        return Err(Error::invalid(format!("approximant needs n >= 3, got {n}")));
    }
    let u = n as f64 - 0.5;
    let pow = |p: f64| real_pow(u, p, PI / 2.0);
    let tilt = Complex64::new(1.0, PI / 4.0);
    let coeff = Complex64::new(0.25, (37.0 / 24.0 + Parity::of(n).sign() / 4.0) * PI);
    Ok(pow(2.0) + tilt * (pow(1.0) + coeff * pow(0.0)))
}

/// `f(t) = t^{2+iπ/2} + (1 + iπ/4)(t^{1+iπ/2} + (a + bπi/4) t^{iπ/2})`.
pub fn lemma7_f(t: f64, a: f64, b: f64) -> Result<Complex64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::invalid(format!("lemma7_f needs t > 0, got {t}")));
    }
    let pow = |p: f64| real_pow(t, p, PI / 2.0);
    let tilt = Complex64::new(1.0, PI / 4.0);
    Ok(pow(2.0) + tilt * (pow(1.0) + Complex64::new(a, b * PI / 4.0) * pow(0.0)))
}

/// `(1/2 - b)(1 + π²/16)`.
pub fn gap_limit(b: f64) -> f64 {
    (0.5 - b) * (1.0 + PI * PI / 16.0)
}

/// `|z| - e^{(4/π)θ}` where `θ` is the branch of `arg z` closest to
/// `theta_hint`.
pub fn spiral_gap(z: Complex64, theta_hint: f64) -> Result<f64> {
    if z.norm() == 0.0 {
        return Err(Error::PointAtOrigin);
    }
    let theta = nearest_branch(z.arg(), theta_hint);
    Ok(z.norm() - (SPIRAL_GROWTH * theta).exp())
}

/// Natural branch hint for `f(t)`: `(π/2) ln t`.
pub fn gap_hint(t: f64) -> f64 {
    PI / 2.0 * t.ln()
}
