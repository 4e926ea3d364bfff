//! Polygon-center sequences.
//!
//! The chain starts with a unit equilateral triangle whose right edge has its
//! midpoint at the origin; every following regular polygon (unit side) is
//! glued edge-to-edge so that the path through the centers turns as little as
//! possible, bending left on ties. The centers of the resulting chain are
//! available in closed summation form, which is what this module computes.
//! [`chain`] builds the same structure vertex by vertex.

pub mod chain;

use crate::numeric::{unit_pi, CompensatedComplexSum, CompensatedSum};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub use chain::{build_chain, build_odd_chain, validate_chain, Polygon, PolygonChain, ValidationReport, Violation};

/// Which polygons participate in a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Triangle, square, pentagon, ... (every side count from 3).
    #[serde(rename = "all")]
    AllPolygons,
    /// Triangle, pentagon, heptagon, ... (odd side counts only).
    #[serde(rename = "odd")]
    OddPolygons,
}

impl Family {
    /// Index of the first stored center.
    pub fn first_index(self) -> usize {
        match self {
            Family::AllPolygons => 3,
            Family::OddPolygons => 2,
        }
    }
}

/// Ordered polygon centers, indexed from [`CenterSequence::first_index`].
///
/// For [`Family::AllPolygons`] entry `n` is the center of the regular
/// `n`-gon. For [`Family::OddPolygons`] entry `n` is the center of the
/// regular `(2n+1)`-gon, measured from the triangle's center.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSequence {
    family: Family,
    first_index: usize,
    centers: Vec<Complex64>,
}

impl CenterSequence {
    /// Wraps an arbitrary list of points. Used for synthetic fitting inputs.
    pub fn from_points(family: Family, first_index: usize, centers: Vec<Complex64>) -> Self {
        Self {
            family,
            first_index,
            centers,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn first_index(&self) -> usize {
        self.first_index
    }

    /// Largest stored index, or `None` for an empty sequence.
    pub fn last_index(&self) -> Option<usize> {
        (!self.centers.is_empty()).then(|| self.first_index + self.centers.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[Complex64] {
        &self.centers
    }

    /// Center with index `n`.
    pub fn get(&self, n: usize) -> Option<Complex64> {
        n.checked_sub(self.first_index)
            .and_then(|i| self.centers.get(i))
            .copied()
    }

    /// `(n, center)` pairs in index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.centers
            .iter()
            .enumerate()
            .map(move |(i, z)| (i + self.first_index, *z))
    }
}

/// Partial sums of the two harmonic series at the same index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPair {
    pub n: u64,
    /// `Σ 1/j`
    pub full: f64,
    /// `Σ (-1)^(j-1)/j`
    pub alternating: f64,
}

impl HarmonicPair {
    pub fn new(n: u64) -> Self {
        Self {
            n,
            full: harmonic(n),
            alternating: alt_harmonic(n),
        }
    }
}

/// `H_n = Σ_{j=1}^{n} 1/j`, summed from the smallest term up.
pub fn harmonic(n: u64) -> f64 {
    let mut s = CompensatedSum::new();
    for j in (1..=n).rev() {
        s.add(1.0 / j as f64);
    }
    s.value()
}

/// `h_n = Σ_{j=1}^{n} (-1)^(j-1)/j`, summed from the smallest term up.
pub fn alt_harmonic(n: u64) -> f64 {
    let mut s = CompensatedSum::new();
    for j in (1..=n).rev() {
        let t = 1.0 / j as f64;
        s.add(if j % 2 == 1 { t } else { -t });
    }
    s.value()
}

/// `Σ_{odd j ≤ k} 1/j`, which equals `(H_k + h_k)/2`.
pub fn odd_harmonic(k: u64) -> f64 {
    let mut s = CompensatedSum::new();
    let top = if k % 2 == 1 { k } else { k.saturating_sub(1) };
    let mut j = top;
    while j >= 1 {
        s.add(1.0 / j as f64);
        if j < 2 {
            break;
        }
        j -= 2;
    }
    s.value()
}

/// `cot(π/k)` for `k ≥ 2`, exact zero at `k = 2`.
pub(crate) fn cot_pi_over(k: u64) -> f64 {
    if k == 2 {
        0.0
    } else {
        1.0 / (PI / k as f64).tan()
    }
}

/// Apothem of the unit-side regular `k`-gon, `cot(π/k)/2`.
pub fn apothem(k: u64) -> f64 {
    0.5 * cot_pi_over(k)
}

/// Circumradius of the unit-side regular `k`-gon, `1/(2 sin(π/k))`.
pub fn circumradius(k: u64) -> f64 {
    0.5 / (PI / k as f64).sin()
}

/// Distance between the centers of the `k`-gon and the `(k+1)`-gon.
pub fn step_magnitude(k: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("step_magnitude needs k >= 2, got {k}")));
    }
    Ok(0.5 * (cot_pi_over(k) + cot_pi_over(k + 1)))
}

/// Direction (radians from the real axis) of the step from the `k`-gon to the
/// `(k+1)`-gon: `(π/2)(H_k + h_k)`.
pub fn step_angle(k: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("step_angle needs k >= 2, got {k}")));
    }
    Ok(PI * odd_harmonic(k))
}

/// Centers `P_3, ..., P_{n_max}` of the all-polygon chain.
pub fn centers_all(n_max: usize) -> Result<CenterSequence> {
    if n_max < 3 {
        return Err(Error::invalid(format!("centers_all needs n_max >= 3, got {n_max}")));
    }
    let mut centers = Vec::with_capacity(n_max - 2);
    let mut acc = CompensatedComplexSum::new();
    // Σ_{odd j ≤ k} 1/j, the step angle in units of π
    let mut turn = CompensatedSum::new();
    turn.add(1.0);
    for k in 2..n_max as u64 {
        if k % 2 == 1 {
            turn.add(1.0 / k as f64);
        }
        let mag = 0.5 * (cot_pi_over(k) + cot_pi_over(k + 1));
        acc.add(unit_pi(turn.value()) * mag);
        centers.push(acc.value());
    }
    Ok(CenterSequence::from_points(Family::AllPolygons, 3, centers))
}

/// Centers `Q_2, ..., Q_{n_max}` of the odd-polygon chain, where `Q_n` is the
/// center of the `(2n+1)`-gon relative to the triangle's center.
pub fn centers_odd(n_max: usize) -> Result<CenterSequence> {
    if n_max < 2 {
        return Err(Error::invalid(format!("centers_odd needs n_max >= 2, got {n_max}")));
    }
    let mut centers = Vec::with_capacity(n_max - 1);
    let mut acc = CompensatedComplexSum::new();
    // Σ_{odd j ≤ 2k-1} 1/j = H_{2k} - H_k/2
    let mut turn = CompensatedSum::new();
    turn.add(1.0);
    for k in 2..=n_max as u64 {
        turn.add(1.0 / (2 * k - 1) as f64);
        let mag = 0.5 * (cot_pi_over(2 * k - 1) + cot_pi_over(2 * k + 1));
        acc.add(unit_pi(turn.value()) * mag);
        centers.push(acc.value());
    }
    Ok(CenterSequence::from_points(Family::OddPolygons, 2, centers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_rational::Ratio;

    type Big = Ratio<i128>;

    fn rational_harmonic(n: i128, alternating: bool) -> Big {
        (1..=n).fold(Big::from_integer(0), |acc, j| {
            let t = Big::new(1, j);
            if alternating && j % 2 == 0 {
                acc - t
            } else {
                acc + t
            }
        })
    }

    fn to_f64(r: Big) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1), 1.0);
        assert_eq!(harmonic(2), 1.5);
        assert_eq!(rational_harmonic(10, false), Big::new(7381, 2520));
        assert_abs_diff_eq!(harmonic(10), 2.928_968_253_968_253_8, epsilon = 1e-15);
        for n in [3i128, 17, 30] {
            assert_abs_diff_eq!(harmonic(n as u64), to_f64(rational_harmonic(n, false)), epsilon = 1e-15);
        }
    }

    #[test]
    fn alt_harmonic_values() {
        assert_eq!(alt_harmonic(1), 1.0);
        assert_eq!(alt_harmonic(2), 0.5);
        assert_eq!(rational_harmonic(4, true), Big::new(7, 12));
        assert_abs_diff_eq!(alt_harmonic(4), 0.583_333_333_333_333_3, epsilon = 1e-15);
        for n in [5i128, 16, 29] {
            assert_abs_diff_eq!(alt_harmonic(n as u64), to_f64(rational_harmonic(n, true)), epsilon = 1e-15);
        }
    }

    #[test]
    fn harmonic_pair_ordering() {
        let mut prev = 0.0;
        for n in 1..200 {
            let p = HarmonicPair::new(n);
            assert!(p.full >= p.alternating && p.alternating > 0.0);
            assert!(p.full > prev);
            prev = p.full;
        }
    }

    #[test]
    fn step_magnitude_values() {
        assert_abs_diff_eq!(step_magnitude(2).unwrap(), 3f64.sqrt() / 6.0, epsilon = 1e-15);
        let three = (1.0 / 3f64.sqrt() + 1.0) / 2.0;
        assert_abs_diff_eq!(step_magnitude(3).unwrap(), three, epsilon = 1e-15);
        assert_abs_diff_eq!(step_magnitude(3).unwrap(), 0.788_675_134_59, epsilon = 1e-11);
        let cot36 = (PI / 5.0).cos() / (PI / 5.0).sin();
        assert_abs_diff_eq!(step_magnitude(4).unwrap(), (1.0 + cot36) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(step_magnitude(4).unwrap(), 1.188_190_960_24, epsilon = 1e-11);
        assert!(step_magnitude(1).is_err());
        assert!(step_magnitude(0).is_err());
    }

    #[test]
    fn step_angle_values() {
        assert_abs_diff_eq!(step_angle(2).unwrap(), PI, epsilon = 1e-15);
        // H_3 + h_3 = 11/6 + 5/6 = 8/3
        assert_eq!(rational_harmonic(3, false) + rational_harmonic(3, true), Big::new(8, 3));
        assert_abs_diff_eq!(step_angle(3).unwrap(), 4.0 * PI / 3.0, epsilon = 1e-15);
        assert_eq!(rational_harmonic(4, false) + rational_harmonic(4, true), Big::new(8, 3));
        assert_abs_diff_eq!(step_angle(4).unwrap(), 4.0 * PI / 3.0, epsilon = 1e-15);
        for k in 2..300 {
            let p = HarmonicPair::new(k);
            assert_abs_diff_eq!(step_angle(k).unwrap(), PI / 2.0 * (p.full + p.alternating), epsilon = 1e-12);
        }
        assert!(step_angle(1).is_err());
    }

    #[test]
    fn first_centers() {
        let p = centers_all(3).unwrap();
        assert_eq!(p.len(), 1);
        let p3 = p.get(3).unwrap();
        assert_abs_diff_eq!(p3.re, -(3f64.sqrt()) / 6.0, epsilon = 1e-15);
        assert_eq!(p3.im, 0.0);
        let p = centers_all(4).unwrap();
        // P_4 = -(1 + √3)/4 (1 + i)
        let v = -(1.0 + 3f64.sqrt()) / 4.0;
        assert_abs_diff_eq!(p.get(4).unwrap().re, v, epsilon = 1e-15);
        assert_abs_diff_eq!(p.get(4).unwrap().im, v, epsilon = 1e-15);
        assert_abs_diff_eq!(v, -0.683_012_7, epsilon = 1e-7);
        assert_abs_diff_eq!((p.get(4).unwrap() - p.get(3).unwrap()).norm(), step_magnitude(3).unwrap(), epsilon = 1e-15);
        assert!(centers_all(2).is_err());
        assert_eq!(p.last_index(), Some(4));
        assert_eq!(p.get(2), None);
        assert_eq!(p.get(5), None);
    }

    #[test]
    fn first_odd_center() {
        let q = centers_odd(2).unwrap();
        assert_eq!(q.first_index(), 2);
        let mag = (1.0 / 3f64.sqrt() + (PI / 5.0).cos() / (PI / 5.0).sin()) / 2.0;
        assert_abs_diff_eq!(mag, 0.976_866_094_830_399_7, epsilon = 1e-15);
        // H_4 - H_2/2 = 25/12 - 3/4 = 4/3
        assert_eq!(rational_harmonic(4, false) - rational_harmonic(2, false) / Big::from_integer(2), Big::new(4, 3));
        let expected = Complex64::from_polar(mag, 4.0 * PI / 3.0);
        assert_abs_diff_eq!(q.get(2).unwrap().re, expected.re, epsilon = 1e-15);
        assert_abs_diff_eq!(q.get(2).unwrap().im, expected.im, epsilon = 1e-15);
        assert!(centers_odd(1).is_err());
    }

    #[test]
    fn odd_harmonic_matches_mean_of_pair() {
        for k in 1..100 {
            let p = HarmonicPair::new(k);
            assert_abs_diff_eq!(odd_harmonic(k), 0.5 * (p.full + p.alternating), epsilon = 1e-14);
        }
        assert_eq!(odd_harmonic(0), 0.0);
    }
}
