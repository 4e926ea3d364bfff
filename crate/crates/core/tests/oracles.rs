//! Values frozen from 50-digit evaluations (see `oracle/generate.py`) and
//! exact rational re-derivations of the constants used by the library.

use num_complex::Complex64;
use num_rational::Ratio;
use polyspiral::asymptotics::{
    approximant, lemma7_f, power_sum_closed, Approximant, PowerSum,
};
use polyspiral::geometry::{centers_all, centers_odd};
use polyspiral::metrics::{
    fit_motion_to_approximant, lift_factor, nearest_distance, normalization_scale, LogSpiral,
};
use polyspiral::Parity;
use std::collections::BTreeMap;
use std::f64::consts::PI;

fn close(z: Complex64, re: f64, im: f64, rel: f64) -> bool {
    let w = Complex64::new(re, im);
    (z - w).norm() <= rel * w.norm()
}

#[test]
fn center_values() {
    let p = centers_all(1000).unwrap();
    assert!(close(p.get(4).unwrap(), -0.683_012_701_892_219_3, -0.683_012_701_892_219_3, 1e-15));
    assert!(close(p.get(1000).unwrap(), 115_957.175_314_039_1, -47_120.256_971_505_11, 1e-13));
    let q = centers_odd(500).unwrap();
    let q2 = q.get(2).unwrap();
    assert!(close(q2, -0.488_433_047_415_199_8, -0.845_990_854_218_824_6, 1e-15));
    assert!((q2.norm() - 0.976_866_094_830_399_7).abs() < 1e-15);
    assert!(close(q.get(500).unwrap(), 58_131.777_658_470_297, -23_516.141_827_679_664, 1e-13));
}

#[test]
fn functional_values() {
    let v = lemma7_f(100.0, 0.25, 43.0 / 6.0).unwrap();
    assert!(close(v, 5_798.999_107_502_351, 8_264.653_339_169_684, 1e-12));
    let a = approximant(1001).unwrap();
    assert!(close(a, -143_119.212_743_596_45, -991_724.322_708_661, 1e-12));
}

#[test]
fn spiral_constants() {
    assert!((normalization_scale() - 7.989_411_139_931_28).abs() < 1e-14);
    let beta = 4.0 / PI;
    assert!((1.0 / (1.0 + beta * beta).sqrt() - 0.617_667_824_838_856).abs() < 1e-15);
    let (d, t) = nearest_distance(&LogSpiral::standard(), Complex64::new(2.0, 0.0), 2).unwrap();
    assert!((d - 0.740_024_416_220_001).abs() < 1e-12);
    assert!((t - 0.295_263_615_580_143_5).abs() < 1e-10);
}

#[test]
fn fitted_rotation_is_the_harmonic_phase() {
    // e^{iπ(H_k + h_k)/2} ≈ e^{iπ(γ + ln 2)/2} (k + 1/2)^{iπ/2}
    let p = centers_all(1000).unwrap();
    let (m, _) = fit_motion_to_approximant(&p, (500, 1000)).unwrap();
    assert!((m.rotation() - 1.995_481_291_347_602_8).abs() < 1e-6);
}

/// `Σ_j q_j π^j`, exact.
#[derive(Debug, Clone, Default, PartialEq)]
struct PiPoly(BTreeMap<i32, Ratio<i64>>);

impl PiPoly {
    fn term(q: Ratio<i64>, power: i32) -> Self {
        let mut m = BTreeMap::new();
        if q != Ratio::from_integer(0) {
            m.insert(power, q);
        }
        PiPoly(m)
    }

    fn add(&self, other: &PiPoly) -> PiPoly {
        let mut m = self.0.clone();
        for (p, q) in &other.0 {
            let e = m.entry(*p).or_insert(Ratio::from_integer(0));
            *e += q;
            if *e == Ratio::from_integer(0) {
                m.remove(p);
            }
        }
        PiPoly(m)
    }

    fn mul(&self, other: &PiPoly) -> PiPoly {
        let mut out = PiPoly::default();
        for (p1, q1) in &self.0 {
            for (p2, q2) in &other.0 {
                out = out.add(&PiPoly::term(q1 * q2, p1 + p2));
            }
        }
        out
    }

    fn value(&self) -> f64 {
        self.0
            .iter()
            .map(|(p, q)| *q.numer() as f64 / *q.denom() as f64 * PI.powi(*p))
            .sum()
    }
}

/// Complex number with exact `PiPoly` parts.
#[derive(Debug, Clone, Default, PartialEq)]
struct PiComplexPoly {
    re: PiPoly,
    im: PiPoly,
}

impl PiComplexPoly {
    fn mul(&self, o: &Self) -> Self {
        let neg = PiPoly::term(Ratio::from_integer(-1), 0);
        PiComplexPoly {
            re: self.re.mul(&o.re).add(&neg.mul(&self.im.mul(&o.im))),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    fn add(&self, o: &Self) -> Self {
        PiComplexPoly {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

#[test]
fn reciprocal_weight_from_the_product_expansion() {
    // (u/π - (π/3)/u)(1 - iπ(-1)^k/(4u) + (iπ/48 - π²/32)/u²): collect 1/u
    let r = |a, b| Ratio::new(a, b);
    let real = |p: PiPoly| PiComplexPoly { re: p, im: PiPoly::default() };
    let over_pi = real(PiPoly::term(r(1, 1), -1));
    let minus_pi_third = real(PiPoly::term(r(-1, 3), 1));
    let second = PiComplexPoly {
        re: PiPoly::term(r(-1, 32), 2),
        im: PiPoly::term(r(1, 48), 1),
    };
    let one = real(PiPoly::term(r(1, 1), 0));
    let coeff = over_pi.mul(&second).add(&minus_pi_third.mul(&one));
    assert_eq!(coeff.re, PiPoly::term(r(-35, 96), 1));
    assert_eq!(coeff.im, PiPoly::term(r(1, 48), 0));

    let lib = PowerSum::Reciprocal.weight();
    assert_eq!(lib.re.coeff, r(-35, 96));
    assert_eq!(lib.re.pi_power, 1);
    assert_eq!(lib.im.coeff, r(1, 48));
    assert_eq!(lib.im.pi_power, 0);
    assert!((lib.value().re - coeff.re.value()).abs() < 1e-15);
    // the 1/u^0 coefficient gives the alternating weight -i/4
    let alt = PowerSum::Alternating.weight().value();
    assert!((alt - Complex64::new(0.0, -0.25)).norm() < 1e-16);
}

#[test]
fn approximant_from_closed_power_sums() {
    // L [S1/π - (i/4) S0 + w S_{-1}] reproduces A(n) term for term
    let lift = lift_factor();
    for n in [3u64, 4, 10, 11, 999, 1000, 123_456] {
        let sum: Complex64 = [PowerSum::Linear, PowerSum::Alternating, PowerSum::Reciprocal]
            .into_iter()
            .map(|k| k.weight().value() * power_sum_closed(k, n).unwrap())
            .sum();
        let a = approximant(n).unwrap();
        assert!((lift * sum - a).norm() <= 1e-12 * a.norm(), "n = {n}");
        let b = Approximant::for_parity(Parity::of(n)).eval(n as f64 - 0.5).unwrap();
        assert!((a - b).norm() <= 1e-13 * a.norm());
    }
}
