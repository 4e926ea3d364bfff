//! Distances to logarithmic spirals and the convergence tables built on them.
//!
//! The targets are curves `r = e^{βθ} - c`. Points are compared with the
//! curve through [`nearest_distance`], a branch-scanning solver. The rigid
//! motion carrying the center sequence onto the spiral is estimated in
//! [`motion`] and the per-index distances are assembled in [`table`].

pub mod motion;
pub mod table;

pub use motion::{
    fit_motion_to_approximant, fit_motion_to_spiral, fit_rigid_to_reference, lift_factor,
    normalization_map, normalization_scale, normalized_embedding, ApproximantFit, GroupMean,
    Grouping, RigidMotion, SimilarityMap, SpiralFit, SpiralFitOptions,
};
pub use table::{
    distance_rows, distance_table, inner_side_fraction, richardson_extrapolate, ConvergenceRecord,
    DistanceRow, Extrapolation,
};

use crate::asymptotics::SPIRAL_GROWTH;
use crate::numeric::nearest_branch;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Polar curve `r = e^{βθ} - offset`, defined for `e^{βθ} ≥ offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogSpiral {
    beta: f64,
    offset: f64,
}

impl LogSpiral {
    pub fn new(beta: f64, offset: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(format!("spiral growth rate must be positive, got {beta}")));
        }
        if !(offset >= 0.0 && offset.is_finite()) {
            return Err(Error::invalid(format!("spiral offset must be non-negative, got {offset}")));
        }
        Ok(Self { beta, offset })
    }

    /// `r = e^{4θ/π}`.
    pub fn standard() -> Self {
        Self {
            beta: SPIRAL_GROWTH,
            offset: 0.0,
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Smallest admissible angle, `ln(offset)/β` (or `-∞` without offset).
    pub fn min_theta(&self) -> f64 {
        if self.offset > 0.0 {
            self.offset.ln() / self.beta
        } else {
            f64::NEG_INFINITY
        }
    }

    pub fn radius(&self, theta: f64) -> f64 {
        (self.beta * theta).exp() - self.offset
    }

    /// Point and first two derivatives with respect to `θ`.
    pub(crate) fn frame(&self, theta: f64) -> (Complex64, Complex64, Complex64) {
        let e = (self.beta * theta).exp();
        let u = Complex64::from_polar(1.0, theta);
        let r = e - self.offset;
        let i = Complex64::i();
        let s = u * r;
        let s1 = u * (self.beta * e) + i * s;
        let s2 = u * (self.beta * self.beta * e) + i * u * (2.0 * self.beta * e) - s;
        (s, s1, s2)
    }
}

/// `(e^{βθ} - offset) e^{iθ}`.
pub fn spiral_point(spiral: &LogSpiral, theta: f64) -> Result<Complex64> {
    if theta < spiral.min_theta() {
        return Err(Error::invalid(format!(
            "θ = {theta} is below the admissible minimum {}",
            spiral.min_theta()
        )));
    }
    Ok(spiral.frame(theta).0)
}

const SAMPLES_PER_TURN: usize = 16;

/// Distance from `z` to the spiral and the parameter `θ*` of the nearest
/// point. Branches `θ₀ + 2πj`, `|j| ≤ turns`, around the seed
/// `θ₀ ≈ ln(|z| + offset)/β` (matched to `arg z`) are scanned; each is
/// sampled and its local minima polished with safeguarded Newton steps on
/// the perpendicularity condition `Re[(S - z) conj(S')] = 0`.
pub fn nearest_distance(spiral: &LogSpiral, z: Complex64, turns: u32) -> Result<(f64, f64)> {
    if turns == 0 {
        return Err(Error::invalid("nearest_distance needs turns >= 1"));
    }
    let r = z.norm();
    if r == 0.0 || !r.is_finite() {
        return Err(Error::PointAtOrigin);
    }
    let theta_min = spiral.min_theta();
    let theta0 = nearest_branch(z.arg(), (r + spiral.offset).ln() / spiral.beta);
    let dist2 = |t: f64| (spiral.frame(t).0 - z).norm_sqr();

    let mut best = (f64::INFINITY, f64::NAN);
    let order = std::iter::once(0i64).chain((1..=turns as i64).flat_map(|j| [-j, j]));
    for j in order {
        let centre = theta0 + 2.0 * PI * j as f64;
        let lo = (centre - PI).max(theta_min);
        let hi = centre + PI;
        if hi <= lo {
            continue;
        }
        let (r_lo, r_hi) = (spiral.radius(lo).max(0.0), spiral.radius(hi));
        let bound = if r < r_lo {
            r_lo - r
        } else if r > r_hi {
            r - r_hi
        } else {
            0.0
        };
        if bound * bound >= best.0 {
            continue;
        }
        let h = (hi - lo) / SAMPLES_PER_TURN as f64;
        let ts: Vec<f64> = (0..=SAMPLES_PER_TURN).map(|i| lo + h * i as f64).collect();
        let fs: Vec<f64> = ts.iter().map(|&t| dist2(t)).collect();
        for i in 0..=SAMPLES_PER_TURN {
            let left = if i == 0 { f64::INFINITY } else { fs[i - 1] };
            let right = if i == SAMPLES_PER_TURN { f64::INFINITY } else { fs[i + 1] };
            if fs[i] > left || fs[i] > right {
                continue;
            }
            let a = ts[i.saturating_sub(1)];
            let b = ts[(i + 1).min(SAMPLES_PER_TURN)];
            let t = polish(spiral, z, a, b, ts[i]);
            let f = dist2(t);
            if f < best.0 {
                best = (f, t);
            }
        }
    }
    Ok(((spiral.frame(best.1).0 - z).norm(), best.1))
}

/// Locates the minimum of `|S(θ) - z|²` on `[a, b]`.
fn polish(spiral: &LogSpiral, z: Complex64, mut a: f64, mut b: f64, guess: f64) -> f64 {
    let g = |t: f64| {
        let (s, s1, s2) = spiral.frame(t);
        let d = s - z;
        ((d * s1.conj()).re, s1.norm_sqr() + (d * s2.conj()).re)
    };
    let (ga, gb) = (g(a).0, g(b).0);
    if ga < 0.0 && gb > 0.0 {
        let mut t = guess;
        for _ in 0..100 {
            let (gt, dgt) = g(t);
            if gt == 0.0 {
                return t;
            }
            if gt < 0.0 {
                a = t;
            } else {
                b = t;
            }
            let newton = t - gt / dgt;
            let next = if dgt > 0.0 && newton > a && newton < b {
                newton
            } else {
                0.5 * (a + b)
            };
            let step = (next - t).abs();
            t = next;
            if step <= 4.0 * f64::EPSILON * t.abs().max(1.0) || b - a <= 4.0 * f64::EPSILON * t.abs().max(1.0) {
                break;
            }
        }
        return t;
    }
    // no sign change: the minimum sits at a bracket end; golden section
    let f = |t: f64| (spiral.frame(t).0 - z).norm_sqr();
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [a, mid, b]
        .into_iter()
        .min_by(|x, y| f(*x).total_cmp(&f(*y)))
        .unwrap_or(mid)
}

/// One row of [`theorem10_profile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRow {
    pub r: f64,
    pub distance: f64,
    pub predicted: f64,
}

/// For each `r`, the point of `r = e^{βθ} - c` at radius `r` is measured
/// against `r = e^{βθ}` and paired with the limit `c/√(1+β²)`.
pub fn theorem10_profile(beta: f64, c: f64, r_values: &[f64]) -> Result<Vec<ProfileRow>> {
    let inner = LogSpiral::new(beta, c)?;
    let outer = LogSpiral::new(beta, 0.0)?;
    let predicted = c / (1.0 + beta * beta).sqrt();
    r_values
        .iter()
        .map(|&r| {
            if r.is_nan() || r <= 0.0 {
                return Err(Error::invalid(format!("profile radius must be positive, got {r}")));
            }
            let theta = (r + c).ln() / beta;
            let q = spiral_point(&inner, theta)?;
            let (distance, _) = nearest_distance(&outer, q, 2)?;
            Ok(ProfileRow {
                r,
                distance,
                predicted,
            })
        })
        .collect()
}
