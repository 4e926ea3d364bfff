//! SVG figures of the polygon chain.

use num_complex::Complex64;
use polyspiral::geometry::PolygonChain;
use polyspiral::metrics::{normalized_embedding, RigidMotion};
use std::f64::consts::PI;
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub polygons: Vec<Vec<Complex64>>,
    pub centers: Vec<Complex64>,
    /// Visible runs of the spiral overlay.
    pub spiral: Vec<Vec<Complex64>>,
    /// `(min, max)` corners in plane coordinates.
    pub viewport: (Complex64, Complex64),
}

const MARGIN: f64 = 1.0;
const PX_PER_UNIT: f64 = 40.0;

impl SvgScene {
    /// `offset` is added to the preimage of the spiral, for sequences that
    /// are measured relative to the seed triangle.
    pub fn new(chain: &PolygonChain, overlay: Option<(&RigidMotion, Complex64)>) -> Self {
        let polygons: Vec<Vec<Complex64>> = chain.polygons.iter().map(|p| p.vertices.clone()).collect();
        let centers: Vec<Complex64> = chain.polygons.iter().map(|p| p.centroid).collect();
        let all = || polygons.iter().flatten();
        let lo = all().fold(Complex64::new(f64::INFINITY, f64::INFINITY), |a, z| {
            Complex64::new(a.re.min(z.re), a.im.min(z.im))
        });
        let hi = all().fold(Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY), |a, z| {
            Complex64::new(a.re.max(z.re), a.im.max(z.im))
        });
        let viewport = (lo - Complex64::new(MARGIN, MARGIN), hi + Complex64::new(MARGIN, MARGIN));
        let spiral = overlay
            .map(|(m, offset)| spiral_preimage(m, offset, &centers, viewport))
            .unwrap_or_default();
        SvgScene {
            polygons,
            centers,
            spiral,
            viewport,
        }
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.viewport;
        let (w, h) = (hi.re - lo.re, hi.im - lo.im);
        // mathematical orientation: y grows upwards
        let p = |z: Complex64| format!("{:.4},{:.4}", z.re, -z.im);
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="{:.4} {:.4} {:.4} {:.4}">"#,
            w * PX_PER_UNIT,
            h * PX_PER_UNIT,
            lo.re,
            -hi.im,
            w,
            h
        );
        let _ = writeln!(
            s,
            r##"<g id="polygons" fill="#f4f1e8" stroke="#333333" stroke-width="0.03" stroke-linejoin="round">"##
        );
        for poly in &self.polygons {
            let pts: Vec<String> = poly.iter().map(|&z| p(z)).collect();
            let _ = writeln!(s, r#"<polygon points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g id="centers" fill="#b22222">"##);
        for &c in &self.centers {
            let _ = writeln!(s, r#"<circle cx="{:.4}" cy="{:.4}" r="0.08"/>"#, c.re, -c.im);
        }
        let _ = writeln!(s, "</g>");
        if !self.spiral.is_empty() {
            let d: Vec<String> = self
                .spiral
                .iter()
                .flat_map(|run| {
                    run.iter()
                        .enumerate()
                        .map(|(i, &z)| format!("{}{}", if i == 0 { "M" } else { "L" }, p(z)))
                })
                .collect();
            let _ = writeln!(
                s,
                r##"<path id="spiral" fill="none" stroke="#1f5fa8" stroke-width="0.04" d="{}"/>"##,
                d.join(" ")
            );
        }
        let _ = writeln!(s, "</svg>");
        s
    }
}

/// Samples `T⁻¹(e^{(4/π + i)θ})` over the radii spanned by the centers,
/// clipped to the viewport.
fn spiral_preimage(
    motion: &RigidMotion,
    offset: Complex64,
    centers: &[Complex64],
    viewport: (Complex64, Complex64),
) -> Vec<Vec<Complex64>> {
    let t = normalized_embedding(motion);
    let inv = |w: Complex64| (w - t.translation) / t.linear() + offset;
    let r_max = centers
        .iter()
        .map(|&c| t.apply(c - offset).norm())
        .fold(1.0, f64::max)
        * 1.5;
    let beta = 4.0 / PI;
    let (theta_lo, theta_hi) = ((1e-2f64).ln() / beta, r_max.ln() / beta);
    let steps = ((theta_hi - theta_lo) / 0.01).ceil() as usize;
    let (lo, hi) = viewport;
    let mut runs: Vec<Vec<Complex64>> = Vec::new();
    let mut current = Vec::new();
    for i in 0..=steps {
        let theta = theta_lo + (theta_hi - theta_lo) * i as f64 / steps as f64;
        let z = inv(Complex64::from_polar((beta * theta).exp(), theta));
        if z.re >= lo.re && z.re <= hi.re && z.im >= lo.im && z.im <= hi.im {
            current.push(z);
        } else if current.len() > 1 {
            runs.push(std::mem::take(&mut current));
        } else {
            current.clear();
        }
    }
    if current.len() > 1 {
        runs.push(current);
    }
    runs
}
