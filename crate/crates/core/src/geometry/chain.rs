//! Vertex-level construction of the polygon chain.
//!
//! Each polygon is glued onto the edge of its predecessor whose outward
//! normal deviates least from the direction of travel (the left edge on a
//! tie). Centers come from the shared edge and the apothem, vertices from
//! the center and the circumradius. None of this uses the summation formula
//! in the parent module, so the centroids serve as an independent check of
//! it.

use super::{apothem, centers_all, centers_odd, circumradius, Family};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub sides: u32,
    /// Counter-clockwise; edge 0 is the edge shared with the predecessor
    /// (for the seed triangle, the edge through the origin).
    pub vertices: Vec<Complex64>,
    pub centroid: Complex64,
}

impl Polygon {
    fn from_vertices(sides: u32, vertices: Vec<Complex64>) -> Self {
        let centroid = vertices.iter().sum::<Complex64>() / vertices.len() as f64;
        Self {
            sides,
            vertices,
            centroid,
        }
    }

    /// Edge `j` as `(start, end)`.
    pub fn edge(&self, j: usize) -> (Complex64, Complex64) {
        let n = self.vertices.len();
        (self.vertices[j % n], self.vertices[(j + 1) % n])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonChain {
    pub family: Family,
    pub polygons: Vec<Polygon>,
}

fn seed_triangle() -> Polygon {
    let h = 3f64.sqrt() / 2.0;
    Polygon::from_vertices(
        3,
        vec![
            Complex64::new(0.0, -0.5),
            Complex64::new(0.0, 0.5),
            Complex64::new(-h, 0.0),
        ],
    )
}

/// Picks the edge of `poly` (other than edge 0) to glue the next polygon on.
fn exit_edge(poly: &Polygon, heading: Complex64) -> usize {
    let mut best = 1;
    let mut best_turn = f64::INFINITY;
    for j in 1..poly.vertices.len() {
        let (a, b) = poly.edge(j);
        let normal = (a + b) * 0.5 - poly.centroid;
        let turn = (normal / heading).arg();
        let better = turn.abs() < best_turn.abs() - TOL
            || ((turn.abs() - best_turn.abs()).abs() <= TOL && turn > best_turn);
        if better {
            best = j;
            best_turn = turn;
        }
    }
    best
}

fn attach(parent: &Polygon, heading: Complex64, sides: u32) -> Polygon {
    let j = exit_edge(parent, heading);
    let (a, b) = parent.edge(j);
    let mid = (a + b) * 0.5;
    let normal = mid - parent.centroid;
    let normal = normal / normal.norm();
    let center = mid + normal * apothem(sides as u64);
    let radius = circumradius(sides as u64);
    // the shared edge is walked as b -> a in the new polygon
    let start = (b - center) / (b - center).norm();
    let vertices = (0..sides)
        .map(|i| {
            let step = Complex64::from_polar(1.0, 2.0 * PI * i as f64 / sides as f64);
            center + start * step * radius
        })
        .collect();
    Polygon::from_vertices(sides, vertices)
}

fn build(family: Family, sides: impl IntoIterator<Item = u32>) -> PolygonChain {
    let mut polygons = vec![seed_triangle()];
    // travel direction into the triangle: from the origin edge to its center
    let mut heading = polygons[0].centroid / polygons[0].centroid.norm();
    for s in sides {
        let parent = polygons.last().expect("chain starts with the seed");
        let next = attach(parent, heading, s);
        let d = next.centroid - parent.centroid;
        heading = d / d.norm();
        polygons.push(next);
    }
    PolygonChain { family, polygons }
}

/// Triangle through `n_max`-gon.
pub fn build_chain(n_max: usize) -> Result<PolygonChain> {
    if n_max < 3 {
        return Err(Error::invalid(format!("build_chain needs n_max >= 3, got {n_max}")));
    }
    Ok(build(Family::AllPolygons, 4..=n_max as u32))
}

/// Triangle, pentagon, ..., `(2 n_max + 1)`-gon.
pub fn build_odd_chain(n_max: usize) -> Result<PolygonChain> {
    if n_max < 1 {
        return Err(Error::invalid("build_odd_chain needs n_max >= 1".to_string()));
    }
    Ok(build(Family::OddPolygons, (2..=n_max as u32).map(|k| 2 * k + 1)))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    VertexCount { polygon: usize, expected: u32, found: usize },
    EdgeLength { polygon: usize, edge: usize, length: f64 },
    NotConvex { polygon: usize, vertex: usize },
    SharedEdge { polygon: usize, gap: f64 },
    Centroid { polygon: usize, deviation: f64 },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks unit edges, convex counter-clockwise ordering, edge sharing
/// between neighbours and agreement of the centroids with the summation
/// formula. Problems are collected, not raised.
pub fn validate_chain(chain: &PolygonChain) -> ValidationReport {
    let mut out = Vec::new();
    for (i, p) in chain.polygons.iter().enumerate() {
        let n = p.vertices.len();
        if n != p.sides as usize {
            out.push(Violation::VertexCount {
                polygon: i,
                expected: p.sides,
                found: n,
            });
            continue;
        }
        let mut winding = 0.0;
        for j in 0..n {
            let (a, b) = p.edge(j);
            let len = (b - a).norm();
            if (len - 1.0).abs() > TOL {
                out.push(Violation::EdgeLength {
                    polygon: i,
                    edge: j,
                    length: len,
                });
            }
            let (_, c) = p.edge(j + 1);
            let turn = ((c - b) / (b - a)).arg();
            if turn <= 0.0 {
                out.push(Violation::NotConvex { polygon: i, vertex: (j + 1) % n });
            }
            winding += turn;
        }
        if (winding - 2.0 * PI).abs() > 1e-6 {
            out.push(Violation::NotConvex { polygon: i, vertex: 0 });
        }
    }

    for (i, pair) in chain.polygons.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        // next's edge 0 must coincide with some edge of prev, reversed
        let (a, b) = next.edge(0);
        let gap = (0..prev.vertices.len())
            .map(|j| {
                let (p, q) = prev.edge(j);
                (p - b).norm().max((q - a).norm())
            })
            .fold(f64::INFINITY, f64::min);
        if gap > TOL {
            out.push(Violation::SharedEdge { polygon: i + 1, gap });
        }
    }

    let expected = expected_centroids(chain);
    for (i, (p, e)) in chain.polygons.iter().zip(expected).enumerate() {
        let deviation = (p.centroid - e).norm();
        if deviation > TOL {
            out.push(Violation::Centroid { polygon: i, deviation });
        }
    }
    ValidationReport { violations: out }
}

fn expected_centroids(chain: &PolygonChain) -> Vec<Complex64> {
    let count = chain.polygons.len();
    match chain.family {
        Family::AllPolygons => centers_all(count + 2)
            .map(|s| s.centers().to_vec())
            .unwrap_or_default(),
        Family::OddPolygons => {
            let base = Complex64::new(-(3f64.sqrt()) / 6.0, 0.0);
            let mut v = vec![base];
            if count >= 2 {
                if let Ok(q) = centers_odd(count) {
                    v.extend(q.centers().iter().map(|z| base + z));
                }
            }
            v
        }
    }
}
