//! The spiral of edge-to-edge regular polygons.
//!
//! Regular polygons with 3, 4, 5, ... unit sides are glued edge to edge,
//! always turning left by the least possible amount. Their centers drift
//! along the logarithmic spiral `r = e^{4θ/π}`: after a suitable rigid
//! motion the even-sided centers sit `5/6` inside the curve and the odd-sided
//! ones `7/12`. Using odd side counts only gives a distance of `7/24`.
//!
//! - [`geometry`]: the center sequences and a vertex-level chain builder.
//! - [`asymptotics`]: harmonic expansions, Euler-Maclaurin sums, the complex
//!   power sums and the closed-form approximant of the center sequence.
//! - [`metrics`]: nearest points on log spirals, rigid-motion fitting and
//!   the distance/convergence tables.
//! - [`verify`]: invariant sweeps grouped into named suites.

pub mod asymptotics;
pub mod geometry;
pub mod metrics;
pub mod numeric;
pub mod optimize;
pub mod verify;

pub use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("the origin has no nearest point on the spiral")]
    PointAtOrigin,
    #[error("fit failed: {0}")]
    FitFailed(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Parity of a polygon index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u64) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(-1)^n`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}
