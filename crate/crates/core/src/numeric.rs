//! Low-level numerical helpers shared by the geometry, asymptotics and
//! metrics modules.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Neumaier compensated accumulator for real sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Componentwise compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `(sin(πx), cos(πx))` with the argument reduced modulo 2 first, so that
/// integer and half-integer multiples of π give exact results.
pub fn sin_cos_pi(x: f64) -> (f64, f64) {
    let r = x - 2.0 * (x * 0.5).round();
    // r in [-1, 1]
    if r == 0.0 {
        return (0.0, 1.0);
    }
    if r.abs() == 1.0 {
        return (0.0, -1.0);
    }
    if r == 0.5 {
        return (1.0, 0.0);
    }
    if r == -0.5 {
        return (-1.0, 0.0);
    }
    (PI * r).sin_cos()
}

/// `e^{iπx}`.
pub fn unit_pi(x: f64) -> Complex64 {
    let (s, c) = sin_cos_pi(x);
    Complex64::new(c, s)
}

/// `t^{p + iq}` for a positive real base, evaluated as `e^{(p + iq) ln t}`
/// with the real logarithm.
#[inline]
pub fn real_pow(t: f64, p: f64, q: f64) -> Complex64 {
    debug_assert!(t > 0.0);
    let l = t.ln();
    Complex64::from_polar((p * l).exp(), q * l)
}

/// Nodes and weights of the 8-point Gauss-Legendre rule on [-1, 1].
const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Integrates `f` over `[a, b]` with the fixed 8-point Gauss-Legendre rule.
pub fn gauss_legendre_8<F>(a: f64, b: f64, mut f: F) -> Complex64
where
    F: FnMut(f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
        acc += (f(mid - half * x) + f(mid + half * x)) * *w;
    }
    acc * half
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_two_pi(angle: f64) -> f64 {
    let w = angle.rem_euclid(2.0 * PI);
    if w >= 2.0 * PI {
        0.0
    } else {
        w
    }
}

/// Representative of `angle + 2πk` closest to `hint`.
pub fn nearest_branch(angle: f64, hint: f64) -> f64 {
    angle + 2.0 * PI * ((hint - angle) / (2.0 * PI)).round()
}

/// Circular mean of a set of angles. Returns `None` when the resultant
/// vector vanishes.
pub fn circular_mean<I: IntoIterator<Item = f64>>(angles: I) -> Option<f64> {
    let mut acc = CompensatedComplexSum::new();
    let mut count = 0usize;
    for a in angles {
        acc.add(Complex64::from_polar(1.0, a));
        count += 1;
    }
    let r = acc.value();
    if count == 0 || r.norm() == 0.0 {
        None
    } else {
        Some(r.arg())
    }
}
