//! Per-index distance tables and their post-processing.

use super::motion::{normalized_embedding, RigidMotion};
use super::{nearest_distance, LogSpiral};
use crate::geometry::CenterSequence;
use crate::{Error, Parity, Result};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub n: u64,
    pub parity: Parity,
    pub distance: f64,
    pub extrapolated: Option<f64>,
}

/// A table row together with the mapped point and its nearest curve
/// parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceRow {
    pub record: ConvergenceRecord,
    pub mapped: Complex64,
    pub theta_star: f64,
}

/// Rows for every index in `range` (inclusive), against `r = e^{4θ/π}`.
pub fn distance_rows(
    seq: &CenterSequence,
    motion: &RigidMotion,
    range: (usize, usize),
) -> Result<Vec<DistanceRow>> {
    let (lo, hi) = range;
    let last = seq.last_index().unwrap_or(0);
    if lo < seq.first_index() || hi > last || lo > hi {
        return Err(Error::invalid(format!(
            "range {lo}:{hi} is not inside the sequence range {}:{last}",
            seq.first_index()
        )));
    }
    let map = normalized_embedding(motion);
    let spiral = LogSpiral::standard();
    (lo..=hi)
        .map(|n| {
            let mapped = map.apply(seq.get(n).expect("range checked"));
            let (distance, theta_star) = nearest_distance(&spiral, mapped, 2)?;
            Ok(DistanceRow {
                record: ConvergenceRecord {
                    n: n as u64,
                    parity: Parity::of(n as u64),
                    distance,
                    extrapolated: None,
                },
                mapped,
                theta_star,
            })
        })
        .collect()
}

/// Distances of `T(z_n)` to `r = e^{4θ/π}` for every index up to `n_max`.
pub fn distance_table(
    seq: &CenterSequence,
    motion: &RigidMotion,
    n_max: usize,
) -> Result<Vec<ConvergenceRecord>> {
    Ok(distance_rows(seq, motion, (seq.first_index(), n_max))?
        .into_iter()
        .map(|r| r.record)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    pub records: Vec<ConvergenceRecord>,
    /// Indices whose partner is missing from the table.
    pub skipped: Vec<u64>,
}

/// Removes the `1/n` term from `d(n) = L + α/n + ...` by pairing each `n`
/// with `m = stride · n` (or `stride · n + 1` when that is needed to keep
/// the parity): `(m d(m) - n d(n)) / (m - n)`, stored on the record for `n`.
pub fn richardson_extrapolate(records: &[ConvergenceRecord], stride: u64) -> Result<Extrapolation> {
    if stride < 2 {
        return Err(Error::invalid(format!("extrapolation stride must be >= 2, got {stride}")));
    }
    let by_n: BTreeMap<u64, f64> = records.iter().map(|r| (r.n, r.distance)).collect();
    let mut out = Vec::with_capacity(records.len());
    let mut skipped = Vec::new();
    for r in records {
        let mut m = stride * r.n;
        if Parity::of(m) != r.parity {
            m += 1;
        }
        let mut rec = *r;
        match by_n.get(&m) {
            Some(&dm) => {
                let (n, m) = (r.n as f64, m as f64);
                rec.extrapolated = Some((m * dm - n * r.distance) / (m - n));
            }
            None => skipped.push(r.n),
        }
        out.push(rec);
    }
    Ok(Extrapolation {
        records: out,
        skipped,
    })
}

/// Fraction of rows whose mapped point lies on the inner side of the
/// spiral, i.e. left of the tangent at the nearest point.
pub fn inner_side_fraction(rows: &[DistanceRow], spiral: &LogSpiral) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    let inner = rows
        .iter()
        .filter(|row| {
            let (s, s1, _) = spiral.frame(row.theta_star);
            (s1.conj() * (row.mapped - s)).im > 0.0
        })
        .count();
    inner as f64 / rows.len() as f64
}
