//! Plane motions and their estimation from the center sequences.
//!
//! Centers are first lifted by `L = 2π(1 + πi/4)`. A rigid motion
//! `M(w) = e^{iφ}w + c` is fitted so that `M⁻¹(L P_n)` lines up with the
//! model curve, and the normalization `w ↦ w / s^{1+iπ/4}`,
//! `s = |L| = 2π√(1+π²/16)`, brings the result onto `r = e^{4θ/π}`. The
//! composite `z ↦ N(M⁻¹(L z))` is again an isometry.

use super::{nearest_distance, LogSpiral};
use crate::asymptotics::approximant;
use crate::geometry::{CenterSequence, Family};
use crate::numeric::{circular_mean, wrap_two_pi};
use crate::optimize::{nelder_mead, SimplexOptions};
use crate::{Error, Parity, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `z ↦ e^{iφ}z + c` with `φ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    rotation: f64,
    translation: Complex64,
}

impl RigidMotion {
    pub fn new(rotation: f64, translation: Complex64) -> Self {
        Self {
            rotation: wrap_two_pi(rotation),
            translation,
        }
    }

    pub fn identity() -> Self {
        Self::new(0.0, Complex64::new(0.0, 0.0))
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn translation(&self) -> Complex64 {
        self.translation
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, self.rotation) * z + self.translation
    }

    /// `e^{-iφ}(w - c)`.
    pub fn apply_inverse(&self, w: Complex64) -> Complex64 {
        Complex64::from_polar(1.0, -self.rotation) * (w - self.translation)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.rotation, -Complex64::from_polar(1.0, -self.rotation) * self.translation)
    }
}

/// `z ↦ scale · e^{i rotation} z + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityMap {
    pub scale: f64,
    pub rotation: f64,
    pub translation: Complex64,
}

impl SimilarityMap {
    pub fn new(scale: f64, rotation: f64, translation: Complex64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::invalid(format!("similarity scale must be positive, got {scale}")));
        }
        Ok(Self {
            scale,
            rotation,
            translation,
        })
    }

    pub fn linear(&self) -> Complex64 {
        Complex64::from_polar(self.scale, self.rotation)
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.linear() * z + self.translation
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimilarityMap) -> SimilarityMap {
        SimilarityMap {
            scale: self.scale * inner.scale,
            rotation: self.rotation + inner.rotation,
            translation: self.linear() * inner.translation + self.translation,
        }
    }
}

impl From<RigidMotion> for SimilarityMap {
    fn from(m: RigidMotion) -> Self {
        SimilarityMap {
            scale: 1.0,
            rotation: m.rotation,
            translation: m.translation,
        }
    }
}

/// `L = 2π(1 + πi/4)`.
pub fn lift_factor() -> Complex64 {
    Complex64::new(2.0 * PI, PI * PI / 2.0)
}

/// `s = 2π√(1 + π²/16) = |L|`.
pub fn normalization_scale() -> f64 {
    2.0 * PI * (1.0 + PI * PI / 16.0).sqrt()
}

/// `w ↦ w / s^{1+iπ/4}`.
pub fn normalization_map() -> SimilarityMap {
    let s = normalization_scale();
    SimilarityMap {
        scale: 1.0 / s,
        rotation: -PI / 4.0 * s.ln(),
        translation: Complex64::new(0.0, 0.0),
    }
}

/// `z ↦ N(M⁻¹(L z))`, the isometry placing centers next to `r = e^{4θ/π}`.
pub fn normalized_embedding(motion: &RigidMotion) -> SimilarityMap {
    let lift = lift_factor();
    let lift = SimilarityMap {
        scale: lift.norm(),
        rotation: lift.arg(),
        translation: Complex64::new(0.0, 0.0),
    };
    normalization_map()
        .compose(&SimilarityMap::from(motion.inverse()))
        .compose(&lift)
}

/// Rigid motion `M` with `observed ≈ M(reference)`: the rotation is the
/// circular mean of the angles between consecutive differences, the
/// translation the mean remaining offset.
pub fn fit_rigid_to_reference(reference: &[Complex64], observed: &[Complex64]) -> Result<RigidMotion> {
    if reference.len() != observed.len() {
        return Err(Error::invalid("reference and observed lengths differ"));
    }
    if reference.len() < 2 {
        return Err(Error::invalid("rigid fit needs at least two points"));
    }
    let angles = reference
        .windows(2)
        .zip(observed.windows(2))
        .filter_map(|(b, a)| {
            let db = b[1] - b[0];
            let da = a[1] - a[0];
            (db.norm() > 0.0 && da.norm() > 0.0).then(|| (da / db).arg())
        });
    let phi = circular_mean(angles).ok_or_else(|| Error::FitFailed("degenerate point set".into()))?;
    let e = Complex64::from_polar(1.0, phi);
    let c = reference
        .iter()
        .zip(observed)
        .map(|(b, a)| a - e * b)
        .sum::<Complex64>()
        / reference.len() as f64;
    Ok(RigidMotion::new(phi, c))
}

fn check_window(seq: &CenterSequence, window: (usize, usize), min_len: usize) -> Result<()> {
    let (lo, hi) = window;
    let last = seq.last_index().unwrap_or(0);
    if lo < seq.first_index() || hi > last || lo > hi {
        return Err(Error::invalid(format!(
            "window {lo}:{hi} is not inside the sequence range {}:{last}",
            seq.first_index()
        )));
    }
    if hi - lo + 1 < min_len {
        return Err(Error::invalid(format!(
            "window {lo}:{hi} is shorter than {min_len} indices"
        )));
    }
    Ok(())
}

/// Residual statistics of [`fit_motion_to_approximant`].
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximantFit {
    /// `(n, |L P_n - M(A(n))|)` over the window.
    pub residuals: Vec<(usize, f64)>,
    pub max_residual: f64,
    /// `max n · residual`.
    pub max_scaled_residual: f64,
    pub first_half_max: f64,
    pub second_half_max: f64,
    /// Least-squares slope of `ln residual` against `ln n`.
    pub decay_slope: f64,
}

/// Fits `L P_n ≈ e^{iφ} A(n) + c` over `window` (inclusive).
///
/// Fails when the residual does not shrink from the first half of the
/// window to the second, unless it is already at rounding level.
pub fn fit_motion_to_approximant(
    seq: &CenterSequence,
    window: (usize, usize),
) -> Result<(RigidMotion, ApproximantFit)> {
    if seq.family() != Family::AllPolygons {
        return Err(Error::invalid("the approximant describes the all-polygon sequence"));
    }
    check_window(seq, window, 8)?;
    let (lo, hi) = window;
    let lift = lift_factor();
    let mut reference = Vec::with_capacity(hi - lo + 1);
    let mut observed = Vec::with_capacity(hi - lo + 1);
    for n in lo..=hi {
        reference.push(approximant(n as u64)?);
        observed.push(lift * seq.get(n).expect("window checked"));
    }
    let motion = fit_rigid_to_reference(&reference, &observed)?;

    let residuals: Vec<(usize, f64)> = (lo..=hi)
        .zip(reference.iter().zip(&observed))
        .map(|(n, (b, a))| (n, (a - motion.apply(*b)).norm()))
        .collect();
    let half = residuals.len() / 2;
    let max_of = |rs: &[(usize, f64)]| rs.iter().map(|r| r.1).fold(0.0, f64::max);
    let first_half_max = max_of(&residuals[..half]);
    let second_half_max = max_of(&residuals[half..]);
    let max_residual = first_half_max.max(second_half_max);
    let max_scaled_residual = residuals.iter().map(|&(n, r)| n as f64 * r).fold(0.0, f64::max);
    let decay_slope = log_log_slope(&residuals);

    let magnitude = observed.iter().map(|a| a.norm()).fold(1.0, f64::max);
    let noise_floor = 1e-12 * magnitude;
    if second_half_max >= first_half_max && second_half_max > noise_floor {
        return Err(Error::FitFailed(format!(
            "residual does not decay across the window ({first_half_max:.3e} -> {second_half_max:.3e})"
        )));
    }
    Ok((
        motion,
        ApproximantFit {
            residuals,
            max_residual,
            max_scaled_residual,
            first_half_max,
            second_half_max,
            decay_slope,
        },
    ))
}

fn log_log_slope(points: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.1 > 0.0)
        .map(|&(n, r)| ((n as f64).ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// How distances are grouped when measuring their spread.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    /// Separate groups for even and odd indices.
    ByParity,
    /// One group.
    Pooled,
}

impl Grouping {
    /// Parity groups for the all-polygon sequence, a single group for the
    /// odd-polygon one.
    pub fn for_family(family: Family) -> Self {
        match family {
            Family::AllPolygons => Grouping::ByParity,
            Family::OddPolygons => Grouping::Pooled,
        }
    }

    fn key(self, n: usize) -> Option<Parity> {
        match self {
            Grouping::ByParity => Some(Parity::of(n as u64)),
            Grouping::Pooled => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpiralFitOptions {
    /// Largest acceptable objective (mean within-group variance).
    pub max_objective: f64,
    /// `None` picks [`Grouping::for_family`].
    pub grouping: Option<Grouping>,
    /// Points used while screening starting guesses.
    pub screen_points: usize,
    /// Points used in the final refinement.
    pub refine_points: usize,
    pub turns: u32,
    pub screen: SimplexOptions,
    pub refine: SimplexOptions,
}

impl Default for SpiralFitOptions {
    fn default() -> Self {
        Self {
            max_objective: 1e-8,
            grouping: None,
            screen_points: 32,
            refine_points: 160,
            turns: 2,
            screen: SimplexOptions {
                f_tol: 1e-24,
                x_tol: 1e-8,
                max_evals: 600,
            },
            refine: SimplexOptions {
                f_tol: 1e-26,
                x_tol: 1e-9,
                max_evals: 10_000,
            },
        }
    }
}

/// Mean and spread of the distances in one group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupMean {
    /// `None` for a pooled group.
    pub parity: Option<Parity>,
    pub mean: f64,
    pub std_dev: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpiralFit {
    pub objective: f64,
    /// Over the whole window.
    pub means: Vec<GroupMean>,
    pub starts: usize,
    pub evals: usize,
}

struct SpiralObjective<'a> {
    lifted: Vec<(usize, Complex64)>,
    spiral: &'a LogSpiral,
    grouping: Grouping,
    turns: u32,
}

impl SpiralObjective<'_> {
    fn distances(&self, motion: &RigidMotion) -> Option<Vec<(usize, f64)>> {
        let norm = normalization_map();
        self.lifted
            .iter()
            .map(|&(n, a)| {
                let w = norm.apply(motion.apply_inverse(a));
                nearest_distance(self.spiral, w, self.turns).ok().map(|(d, _)| (n, d))
            })
            .collect()
    }

    fn groups(&self, dists: &[(usize, f64)]) -> Vec<GroupMean> {
        let keys: &[Option<Parity>] = match self.grouping {
            Grouping::ByParity => &[Some(Parity::Even), Some(Parity::Odd)],
            Grouping::Pooled => &[None],
        };
        keys.iter()
            .filter_map(|&key| {
                let vals: Vec<f64> = dists
                    .iter()
                    .filter(|(n, _)| self.grouping.key(*n) == key)
                    .map(|p| p.1)
                    .collect();
                if vals.is_empty() {
                    return None;
                }
                let k = vals.len() as f64;
                let mean = vals.iter().sum::<f64>() / k;
                let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / k;
                Some(GroupMean {
                    parity: key,
                    mean,
                    std_dev: var.sqrt(),
                    count: vals.len(),
                })
            })
            .collect()
    }

    fn value(&self, motion: &RigidMotion) -> f64 {
        match self.distances(motion) {
            Some(d) => {
                let g = self.groups(&d);
                g.iter().map(|m| m.std_dev * m.std_dev).sum::<f64>() / g.len() as f64
            }
            None => f64::INFINITY,
        }
    }

    /// Largest lifted radius; rotation steps are scaled by it so that all
    /// three search coordinates move points by comparable amounts.
    fn radius(&self) -> f64 {
        self.lifted.iter().map(|p| p.1.norm()).fold(1.0, f64::max)
    }

    /// Local simplex search around `start`.
    fn search(&self, start: &RigidMotion, step: f64, opts: SimplexOptions) -> (RigidMotion, f64, usize) {
        let r = self.radius();
        let at = |y: &[f64]| {
            RigidMotion::new(
                start.rotation() + y[0] / r,
                start.translation() + Complex64::new(y[1], y[2]),
            )
        };
        let res = nelder_mead(|y| self.value(&at(y)), &[0.0; 3], &[step; 3], opts);
        (at(&res.x), res.value, res.evals)
    }
}

fn subsample(seq: &CenterSequence, window: (usize, usize), count: usize) -> Vec<(usize, Complex64)> {
    let (lo, hi) = window;
    let len = hi - lo + 1;
    let lift = lift_factor();
    let mut idx: Vec<usize> = if count >= len || count < 2 {
        (lo..=hi).collect()
    } else {
        (0..count)
            .map(|i| lo + ((len - 1) as f64 * i as f64 / (count - 1) as f64).round() as usize)
            .collect()
    };
    idx.dedup();
    idx.into_iter()
        .map(|n| (n, lift * seq.get(n).expect("window checked")))
        .collect()
}

/// `arg(a - c) - ln|a - c|/β`, which is constant (up to `2π`) along a lifted
/// copy of the spiral only when `c` is its pole.
fn pole_phases(points: &[(usize, Complex64)], c: Complex64, beta: f64) -> Option<Vec<f64>> {
    points
        .iter()
        .map(|&(_, a)| {
            let w = a - c;
            (w.norm() > 0.0).then(|| w.arg() - w.norm().ln() / beta)
        })
        .collect()
}

fn circular_spread(phases: &[f64]) -> f64 {
    let k = phases.len() as f64;
    let m = phases.iter().map(|&p| Complex64::from_polar(1.0, p)).sum::<Complex64>() / k;
    1.0 - m.norm()
}

/// Rotation consistent with pole `c`: the lifted spiral is
/// `e^{iφ} s^{1+iπ/4} e^{(β+i)θ} + c`, so the pole phase equals
/// `φ + (π/4 - 1/β) ln s`.
fn rotation_for_pole(points: &[(usize, Complex64)], c: Complex64, beta: f64) -> Option<f64> {
    let phases = pole_phases(points, c, beta)?;
    let mean = circular_mean(phases)?;
    Some(mean - (PI / 4.0 - 1.0 / beta) * normalization_scale().ln())
}

/// Fits the motion minimizing the within-group variance of the distances
/// from `N(M⁻¹(L z_n))` to `spiral`, `n` in `window`.
///
/// Without `init`, the pole of the lifted point cloud is estimated first
/// and starts are spread around it at radii 1, 2, 4 and 8 in eight
/// directions; the best start after a short screening search is refined on
/// a denser set of points.
pub fn fit_motion_to_spiral(
    seq: &CenterSequence,
    spiral: &LogSpiral,
    window: (usize, usize),
    init: Option<RigidMotion>,
    opts: &SpiralFitOptions,
) -> Result<(RigidMotion, SpiralFit)> {
    check_window(seq, window, 16)?;
    let grouping = opts.grouping.unwrap_or_else(|| Grouping::for_family(seq.family()));
    let make = |count| SpiralObjective {
        lifted: subsample(seq, window, count),
        spiral,
        grouping,
        turns: opts.turns,
    };
    let screen = make(opts.screen_points);
    let refine = make(opts.refine_points);
    let beta = spiral.beta();

    let mut evals = 0;
    let mut starts = 0;
    let start = match init {
        Some(m) => m,
        None => {
            let pts = &screen.lifted;
            let pole_cost = |x: &[f64]| {
                pole_phases(pts, Complex64::new(x[0], x[1]), beta)
                    .map(|p| circular_spread(&p))
                    .unwrap_or(f64::INFINITY)
            };
            let pole = nelder_mead(
                pole_cost,
                &[0.0, 0.0],
                &[1.0, 1.0],
                SimplexOptions {
                    f_tol: 1e-30,
                    x_tol: 1e-10,
                    max_evals: 4000,
                },
            );
            evals += pole.evals;
            let pole = Complex64::new(pole.x[0], pole.x[1]);
            let mut best: Option<(RigidMotion, f64)> = None;
            let seeds = std::iter::once(pole).chain([1.0, 2.0, 4.0, 8.0].into_iter().flat_map(|r| {
                (0..8).map(move |k| pole + Complex64::from_polar(r, PI * k as f64 / 4.0))
            }));
            for c in seeds {
                let Some(phi) = rotation_for_pole(pts, c, beta) else { continue };
                starts += 1;
                let (m, v, e) = screen.search(&RigidMotion::new(phi, c), 0.3, opts.screen);
                evals += e;
                if best.is_none_or(|b| v < b.1) {
                    best = Some((m, v));
                }
            }
            best.ok_or_else(|| Error::FitFailed("no usable starting point".into()))?.0
        }
    };
    starts = starts.max(1);
    let (mut motion, mut objective, e) = refine.search(&start, 0.05, opts.refine);
    evals += e;
    // a restart from the result guards against a collapsed simplex
    let (m2, v2, e2) = refine.search(&motion, 1e-3, opts.refine);
    evals += e2;
    if v2 < objective {
        motion = m2;
        objective = v2;
    }
    if objective.is_nan() || objective > opts.max_objective {
        return Err(Error::FitFailed(format!(
            "best objective {objective:.3e} exceeds the threshold {:.3e}",
            opts.max_objective
        )));
    }
    let full = make(usize::MAX);
    let dists = full
        .distances(&motion)
        .ok_or_else(|| Error::FitFailed("a mapped point fell on the spiral pole".into()))?;
    let means = full.groups(&dists);
    Ok((
        motion,
        SpiralFit {
            objective,
            means,
            starts,
            evals,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::centers_all;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rigid_round_trip_and_inverse() {
        let m = RigidMotion::new(-0.4, Complex64::new(2.0, -1.5));
        assert!((0.0..2.0 * PI).contains(&m.rotation()));
        let z = Complex64::new(0.3, 7.0);
        assert!((m.apply_inverse(m.apply(z)) - z).norm() < 1e-12);
        assert!((m.inverse().apply(m.apply(z)) - z).norm() < 1e-12);
    }

    #[test]
    fn similarity_composition() {
        let a = SimilarityMap::new(2.0, 0.3, Complex64::new(1.0, 0.0)).unwrap();
        let b = SimilarityMap::new(0.5, -1.1, Complex64::new(0.0, 2.0)).unwrap();
        let c = SimilarityMap::new(3.0, 0.7, Complex64::new(-1.0, 1.0)).unwrap();
        let z = Complex64::new(0.25, -0.75);
        assert!((a.compose(&b).apply(z) - a.apply(b.apply(z))).norm() < 1e-14);
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        assert!((left.apply(z) - right.apply(z)).norm() < 1e-13);
        let m = RigidMotion::new(1.0, Complex64::new(0.5, 0.5));
        assert!((SimilarityMap::from(m).apply(z) - m.apply(z)).norm() < 1e-15);
        assert!(SimilarityMap::new(0.0, 0.0, z).is_err());
    }

    #[test]
    fn normalization_constants() {
        let s = normalization_scale();
        assert_abs_diff_eq!(s, 7.989_41, epsilon = 1e-5);
        assert_abs_diff_eq!(lift_factor().norm(), s, epsilon = 1e-13);
        let composite = normalized_embedding(&RigidMotion::identity());
        assert_abs_diff_eq!(composite.scale, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            composite.rotation,
            (PI / 4.0).atan() - PI / 4.0 * s.ln(),
            epsilon = 1e-14
        );
        let n = normalization_map();
        let w = Complex64::new(3.0, 4.0);
        let direct = w / Complex64::new(s, 0.0).powc(Complex64::new(1.0, PI / 4.0));
        assert!((n.apply(w) - direct).norm() < 1e-14);
    }

    fn synthetic(motion: RigidMotion, perturb: impl Fn(usize) -> Complex64) -> CenterSequence {
        let lift = lift_factor();
        let pts = (3..=1200)
            .map(|n| (motion.apply(approximant(n as u64).unwrap()) + perturb(n)) / lift)
            .collect();
        CenterSequence::from_points(Family::AllPolygons, 3, pts)
    }

    #[test]
    fn exact_model_recovery() {
        let truth = RigidMotion::new(0.7, Complex64::new(3.0, -2.0));
        let seq = synthetic(truth, |_| Complex64::new(0.0, 0.0));
        let (m, diag) = fit_motion_to_approximant(&seq, (500, 1000)).unwrap();
        assert_abs_diff_eq!(m.rotation(), 0.7, epsilon = 1e-10);
        assert!((m.translation() - Complex64::new(3.0, -2.0)).norm() < 1e-8);
        assert!(diag.max_residual < 1e-7);
    }

    #[test]
    fn perturbed_model_recovery() {
        let truth = RigidMotion::new(0.7, Complex64::new(3.0, -2.0));
        let seq = synthetic(truth, |n| Complex64::from_polar(40.0 / n as f64, n as f64));
        let (m, diag) = fit_motion_to_approximant(&seq, (500, 1000)).unwrap();
        assert!((m.rotation() - 0.7).abs() <= 5.0 / 500.0);
        assert!(diag.decay_slope < -0.5);
    }

    #[test]
    fn growing_residual_is_rejected() {
        let truth = RigidMotion::new(0.7, Complex64::new(3.0, -2.0));
        let seq = synthetic(truth, |n| Complex64::from_polar(1e-3 * n as f64, n as f64));
        assert!(matches!(
            fit_motion_to_approximant(&seq, (500, 1000)),
            Err(Error::FitFailed(_))
        ));
    }

    #[test]
    fn approximant_fit_on_centers() {
        let seq = centers_all(1000).unwrap();
        let (_, diag) = fit_motion_to_approximant(&seq, (500, 1000)).unwrap();
        assert!(diag.max_scaled_residual < 10.0, "{}", diag.max_scaled_residual);
        assert!(fit_motion_to_approximant(&seq, (500, 504)).is_err());
        assert!(fit_motion_to_approximant(&seq, (500, 1001)).is_err());
    }

    #[test]
    fn spiral_fit_recovers_synthetic_motion() {
        // points at a constant inward offset from the spiral, then moved
        let spiral = LogSpiral::standard();
        let truth = RigidMotion::new(2.2, Complex64::new(1.5, -0.5));
        let norm = normalization_map();
        let lift = lift_factor();
        let pts: Vec<Complex64> = (0..400)
            .map(|i| {
                let theta = 8.0 + 0.013 * i as f64;
                let (s, s1, _) = spiral.frame(theta);
                let inward = Complex64::i() * s1 / s1.norm();
                let w = s + inward * 0.4;
                let a = truth.apply((w - norm.translation) / norm.linear());
                a / lift
            })
            .collect();
        let seq = CenterSequence::from_points(Family::OddPolygons, 2, pts);
        let (m, fit) =
            fit_motion_to_spiral(&seq, &spiral, (2, 401), None, &SpiralFitOptions::default()).unwrap();
        assert!(fit.objective <= 1e-10, "{}", fit.objective);
        assert_abs_diff_eq!(fit.means[0].mean, 0.4, epsilon = 1e-6);
        assert!((m.translation() - truth.translation()).norm() < 1e-3);
    }
}
