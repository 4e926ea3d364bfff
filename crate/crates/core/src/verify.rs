//! Named invariant sweeps.
//!
//! Every suite returns a list of [`Check`]s. A check compares one measured
//! quantity with a threshold; thresholds can be overridden by check name.

use crate::asymptotics::{
    alt_harmonic_expansion, detemple_bounds, em_sum_minus_integral, gap_hint, gap_limit, lemma7_f,
    power_sum_closed, spiral_gap, EmIntegrand, EmOrder, PowerSum, RealPolynomial, ShiftedPower,
    EULER_GAMMA,
};
use crate::geometry::{alt_harmonic, centers_all, harmonic};
use crate::metrics::{fit_motion_to_approximant, theorem10_profile};
use crate::numeric::{real_pow, CompensatedComplexSum};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma3,
    Lemma4,
    Em,
    PowerSums,
    Lemma7,
    Thm6,
    Thm10,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lemma3,
        Suite::Lemma4,
        Suite::Em,
        Suite::PowerSums,
        Suite::Lemma7,
        Suite::Thm6,
        Suite::Thm10,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma3 => "lemma3",
            Suite::Lemma4 => "lemma4",
            Suite::Em => "em",
            Suite::PowerSums => "powersums",
            Suite::Lemma7 => "lemma7",
            Suite::Thm6 => "thm6",
            Suite::Thm10 => "thm10",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Passes when `value <= threshold`.
    AtMost,
    /// Passes when `value > threshold`.
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl Check {
    /// Distance to the threshold; positive when passing.
    pub fn margin(&self) -> f64 {
        match self.comparison {
            Comparison::AtMost => self.threshold - self.value,
            Comparison::Above => self.value - self.threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    /// Upper end of the index sweeps.
    pub n_max: u64,
    /// Fitting window of the `thm6` suite.
    pub window: (usize, usize),
    /// Threshold overrides by check name.
    pub overrides: BTreeMap<String, f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n_max: 10_000,
            window: (500, 1000),
            overrides: BTreeMap::new(),
        }
    }
}

struct Checks<'a> {
    overrides: &'a BTreeMap<String, f64>,
    out: Vec<Check>,
}

impl Checks<'_> {
    fn push(&mut self, name: &str, value: f64, threshold: f64, comparison: Comparison) {
        let threshold = self.overrides.get(name).copied().unwrap_or(threshold);
        let passed = match comparison {
            Comparison::AtMost => value <= threshold,
            Comparison::Above => value > threshold,
        };
        self.out.push(Check {
            name: name.to_string(),
            value,
            threshold,
            comparison,
            passed,
        });
    }

    fn at_most(&mut self, name: &str, value: f64, threshold: f64) {
        self.push(name, value, threshold, Comparison::AtMost);
    }

    fn above(&mut self, name: &str, value: f64, threshold: f64) {
        self.push(name, value, threshold, Comparison::Above);
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    if cfg.n_max < 10 {
        return Err(Error::invalid(format!("verification sweeps need n_max >= 10, got {}", cfg.n_max)));
    }
    let mut checks = Checks {
        overrides: &cfg.overrides,
        out: Vec::new(),
    };
    match suite {
        Suite::Lemma3 => lemma3(cfg, &mut checks),
        Suite::Lemma4 => lemma4(cfg, &mut checks),
        Suite::Em => em(&mut checks)?,
        Suite::PowerSums => powersums(cfg, &mut checks)?,
        Suite::Lemma7 => lemma7(&mut checks)?,
        Suite::Thm6 => thm6(cfg, &mut checks)?,
        Suite::Thm10 => thm10(&mut checks)?,
    }
    Ok(Report {
        suite,
        checks: checks.out,
    })
}

/// Position of `H_n - γ - ln(n + 1/2)` inside its DeTemple bracket, as
/// fractions of the bracket width measured from either end.
fn lemma3(cfg: &VerifyConfig, checks: &mut Checks) {
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    for n in 1..=cfg.n_max {
        let core = harmonic(n) - EULER_GAMMA - (n as f64 + 0.5).ln();
        let (lo, hi) = detemple_bounds(n);
        lower = lower.min((core - lo) / (hi - lo));
        upper = upper.min((hi - core) / (hi - lo));
    }
    checks.above("lemma3.lower_margin", lower, 0.0);
    checks.above("lemma3.upper_margin", upper, 0.0);
}

fn lemma4(cfg: &VerifyConfig, checks: &mut Checks) {
    let scaled = (10..=cfg.n_max)
        .map(|n| (n as f64).powi(3) * (alt_harmonic(n) - alt_harmonic_expansion(n)).abs())
        .fold(0.0, f64::max);
    checks.at_most("lemma4.scaled_residual", scaled, 2.0);
}

fn em(checks: &mut Checks) -> Result<()> {
    let polys = [
        vec![1.0],
        vec![-2.0, 3.0],
        vec![0.5, -1.0, 2.0],
        vec![1.0, -0.5, 0.25, 1.5],
        vec![0.0, 0.0, 0.0, -2.0],
    ];
    let ranges = [(0i64, 1i64), (0, 5), (-3, 4), (2, 40)];
    let mut order3 = 0.0f64;
    let mut order1 = 0.0f64;
    for coeffs in &polys {
        let p = RealPolynomial(coeffs.clone());
        for &(m, n) in &ranges {
            let exact = poly_sum_minus_integral(coeffs, m, n);
            let scale = exact.abs().max(1.0);
            let v3 = em_sum_minus_integral(&p, m, n, EmOrder::Three)?;
            order3 = order3.max((v3.re - exact).abs().max(v3.im.abs()) / scale);
            if coeffs.len() <= 2 {
                let v1 = em_sum_minus_integral(&p, m, n, EmOrder::One)?;
                order1 = order1.max((v1.re - exact).abs().max(v1.im.abs()) / scale);
            }
        }
    }
    checks.at_most("em.order3_cubic", order3, 1e-12);
    checks.at_most("em.order1_linear", order1, 1e-12);

    let mut agreement = 0.0f64;
    for p in [-1.0, 0.0, 1.0] {
        let f = ShiftedPower::new(0.5, Complex64::new(p, PI / 2.0));
        let a = em_sum_minus_integral(&f, 2, 1000, EmOrder::One)?;
        let b = em_sum_minus_integral(&f, 2, 1000, EmOrder::Three)?;
        agreement = agreement.max((a - b).norm());
    }
    checks.at_most("em.order_agreement", agreement, 1e-10);

    let f = ShiftedPower::new(0.5, Complex64::new(1.0, PI / 2.0));
    let mut direct = CompensatedComplexSum::new();
    for i in 2..=99 {
        direct.add(f.value(i as f64));
    }
    let direct = direct.value() - (f.antiderivative(99.0) - f.antiderivative(2.0));
    let v = em_sum_minus_integral(&f, 2, 99, EmOrder::Three)?;
    checks.at_most("em.direct_sum", (v - direct).norm(), 1e-10);
    Ok(())
}

/// `Σ_{i=m}^n p(i) - ∫_m^n p` for a polynomial, term by term.
fn poly_sum_minus_integral(coeffs: &[f64], m: i64, n: i64) -> f64 {
    let eval = |t: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c);
    let anti = |t: f64| {
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * t.powi(k as i32 + 1) / (k as f64 + 1.0))
            .sum::<f64>()
    };
    let sum: f64 = (m..=n).map(|i| eval(i as f64)).sum();
    sum - (anti(n as f64) - anti(m as f64))
}

/// Prefix table of `power_sum_exact(kind, n)` for `n = 3..=n_max`, built
/// incrementally; index `n - 3`.
fn power_sum_prefix(kind: PowerSum, n_max: u64) -> Vec<Complex64> {
    let p = kind.real_exponent() as f64;
    let mut acc = CompensatedComplexSum::new();
    (2..n_max)
        .map(|k| {
            let term = real_pow(k as f64 + 0.5, p, PI / 2.0);
            if kind == PowerSum::Alternating && k % 2 == 1 {
                acc.add(-term);
            } else {
                acc.add(term);
            }
            acc.value()
        })
        .collect()
}

/// `max_n n |D(2n) - D(n)|` over `n ∈ [lo, hi]`, `D = exact - closed`.
pub fn power_sum_difference_constant(kind: PowerSum, lo: u64, hi: u64) -> Result<f64> {
    if lo < 3 || lo > hi {
        return Err(Error::invalid(format!("bad sweep range {lo}:{hi}")));
    }
    let prefix = power_sum_prefix(kind, 2 * hi);
    let d = |n: u64| -> Result<Complex64> { Ok(prefix[(n - 3) as usize] - power_sum_closed(kind, n)?) };
    let mut worst = 0.0f64;
    for n in lo..=hi {
        worst = worst.max(n as f64 * (d(2 * n)? - d(n)?).norm());
    }
    Ok(worst)
}

fn powersums(cfg: &VerifyConfig, checks: &mut Checks) -> Result<()> {
    let hi = 5000.min(cfg.n_max / 2).max(50);
    for (kind, name) in [
        (PowerSum::Linear, "powersums.s1_difference"),
        (PowerSum::Reciprocal, "powersums.sm1_difference"),
        (PowerSum::Alternating, "powersums.s0_difference"),
    ] {
        checks.at_most(name, power_sum_difference_constant(kind, 50, hi)?, 10.0);
    }
    let s0 = power_sum_prefix(PowerSum::Alternating, cfg.n_max);
    let bound = s0.iter().map(|z| z.norm()).fold(0.0, f64::max);
    checks.at_most("powersums.s0_bounded", bound, 2.0);
    let mut modulus = 0.0f64;
    for n in 3..=cfg.n_max {
        modulus = modulus.max((power_sum_closed(PowerSum::Alternating, n)?.norm() - 0.5).abs());
    }
    checks.at_most("powersums.s0_closed_modulus", modulus, 1e-15);
    Ok(())
}

/// `t · |gap(f(t)) - (1/2 - b)(1 + π²/16)|` on a logarithmic grid.
pub fn lemma7_rate_constant(a: f64, b: f64, t_lo: f64, t_hi: f64, points: usize) -> Result<f64> {
    let limit = gap_limit(b);
    let mut worst = 0.0f64;
    for i in 0..points {
        let t = t_lo * (t_hi / t_lo).powf(i as f64 / (points - 1) as f64);
        let gap = spiral_gap(lemma7_f(t, a, b)?, gap_hint(t))?;
        worst = worst.max(t * (gap - limit).abs());
    }
    Ok(worst)
}

fn lemma7(checks: &mut Checks) -> Result<()> {
    let t = 1e4;
    let cases = [("b_1_2", 0.0, 0.5), ("b_43_6", 0.25, 43.0 / 6.0), ("b_31_6", 0.25, 31.0 / 6.0)];
    for (tag, a, b) in cases {
        let gap = spiral_gap(lemma7_f(t, a, b)?, gap_hint(t))?;
        checks.at_most(&format!("lemma7.limit.{tag}"), (gap - gap_limit(b)).abs(), 1e-2);
    }
    for (tag, a, b) in cases {
        let c = lemma7_rate_constant(a, b, 1e2, 1e5, 61)?;
        checks.at_most(&format!("lemma7.rate.{tag}"), c, 10.0);
    }
    let gaps: Vec<f64> = [0.0, 0.25, 1.0]
        .into_iter()
        .map(|a| spiral_gap(lemma7_f(t, a, 43.0 / 6.0)?, gap_hint(t)))
        .collect::<Result<_>>()?;
    let spread = gaps.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    checks.at_most("lemma7.a_independence", spread, 1e-3);
    Ok(())
}

fn thm6(cfg: &VerifyConfig, checks: &mut Checks) -> Result<()> {
    let (lo, hi) = cfg.window;
    let seq = centers_all(2 * hi)?;
    let (m1, fit) = fit_motion_to_approximant(&seq, (lo, hi))?;
    checks.at_most("thm6.scaled_residual", fit.max_scaled_residual, 10.0);
    checks.at_most("thm6.half_ratio", fit.second_half_max / fit.first_half_max, 1.0);
    let (m2, _) = fit_motion_to_approximant(&seq, (2 * lo, 2 * hi))?;
    let dphi = (m1.rotation() - m2.rotation() + PI).rem_euclid(2.0 * PI) - PI;
    checks.at_most("thm6.rotation_stability", dphi.abs(), 1e-2);
    checks.at_most(
        "thm6.translation_stability",
        (m1.translation() - m2.translation()).norm(),
        0.1,
    );
    Ok(())
}

fn thm10(checks: &mut Checks) -> Result<()> {
    let radii: Vec<f64> = (0..=40).map(|i| 1e2 * 100f64.powf(i as f64 / 40.0)).collect();
    let cases = [
        ("beta_4_over_pi.c_1", 4.0 / PI, 1.0, 5.0),
        ("beta_4_over_pi.c_5", 4.0 / PI, 5.0, 25.0),
        ("beta_1.c_1", 1.0, 1.0, 5.0),
    ];
    for (tag, beta, c, limit) in cases {
        let rows = theorem10_profile(beta, c, &radii)?;
        let worst = rows
            .iter()
            .map(|r| r.r * (r.distance - r.predicted).abs())
            .fold(0.0, f64::max);
        checks.at_most(&format!("thm10.scaled_residual.{tag}"), worst, limit);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("lemma9".parse::<Suite>().is_err());
    }

    #[test]
    fn overrides_apply_by_name() {
        let mut cfg = VerifyConfig {
            n_max: 100,
            ..VerifyConfig::default()
        };
        let r = run_suite(Suite::Lemma4, &cfg).unwrap();
        assert!(r.passed());
        cfg.overrides.insert("lemma4.scaled_residual".into(), 0.0);
        let r = run_suite(Suite::Lemma4, &cfg).unwrap();
        assert!(!r.passed());
        assert_eq!(r.checks[0].threshold, 0.0);
        assert!(r.checks[0].margin() < 0.0);
    }

    #[test]
    fn polynomial_oracle() {
        // Σ_{0}^{1} t² - 1/3
        assert!((poly_sum_minus_integral(&[0.0, 0.0, 1.0], 0, 1) - 2.0 / 3.0).abs() < 1e-15);
        // Σ_{0}^{2} t³ - 4 = 9 - 4
        assert!((poly_sum_minus_integral(&[0.0, 0.0, 0.0, 1.0], 0, 2) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig {
            n_max: 1000,
            ..VerifyConfig::default()
        };
        for s in [Suite::Lemma3, Suite::Lemma4, Suite::Em] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(r.passed(), "{:?}", r.checks);
        }
    }
}
