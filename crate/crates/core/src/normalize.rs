//! Min-max normalization of quality matrices and requirement vectors onto
//! [0, 1].
//!
//! Minimized properties map through `(max - v) / (max - min)` and maximized
//! properties through `(v - min) / (max - min)`, with min/max taken over the
//! present cells of each candidate column. The consumer's requirement never
//! influences the column statistics.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrix::QualityMatrix;
use crate::schema::{Direction, QosProfile, QosPropertyDef, QosSchema};

/// Min/max of one matrix column, computed over present cells only.
///
/// A column is degenerate when it has no present cell or all present cells
/// share one value; degenerate columns carry no ranking information and
/// normalize every present value (and the request) to 1.0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnStats {
    pub property: String,
    pub min: f64,
    pub max: f64,
    pub degenerate: bool,
}

impl ColumnStats {
    pub fn from_cells<I: IntoIterator<Item = Option<f64>>>(property: &str, cells: I) -> Self {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut present = 0usize;
        for value in cells.into_iter().flatten() {
            min = min.min(value);
            max = max.max(value);
            present += 1;
        }
        if present == 0 {
            return Self {
                property: property.to_string(),
                min: 0.0,
                max: 0.0,
                degenerate: true,
            };
        }
        Self {
            property: property.to_string(),
            min,
            max,
            degenerate: min == max,
        }
    }
}

/// `(max - v) / (max - min)`: lower raw values score higher.
pub fn normalize_minimize(value: f64, stats: &ColumnStats) -> f64 {
    (stats.max - value) / (stats.max - stats.min)
}

/// `(v - min) / (max - min)`: higher raw values score higher.
pub fn normalize_maximize(value: f64, stats: &ColumnStats) -> f64 {
    (value - stats.min) / (stats.max - stats.min)
}

fn normalize_cell(value: f64, direction: Direction, stats: &ColumnStats) -> f64 {
    if stats.degenerate {
        return 1.0;
    }
    match direction {
        Direction::Minimize => normalize_minimize(value, stats),
        Direction::Maximize => normalize_maximize(value, stats),
    }
}

/// Normalized quality matrix: every entry in [0, 1], missing cells resolved
/// to 0.0 (the worst score on that dimension).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedMatrix {
    service_ids: Vec<String>,
    properties: Vec<QosPropertyDef>,
    values: Vec<Vec<f64>>,
    stats: Vec<ColumnStats>,
}

impl NormalizedMatrix {
    pub fn service_ids(&self) -> &[String] {
        &self.service_ids
    }

    pub fn properties(&self) -> &[QosPropertyDef] {
        &self.properties
    }

    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn cols(&self) -> usize {
        self.properties.len()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn stats(&self) -> &[ColumnStats] {
        &self.stats
    }
}

/// Normalizes every cell of the matrix per its column's direction and
/// statistics. Missing cells become 0.0; degenerate columns become 1.0.
pub fn normalize_matrix(matrix: &QualityMatrix) -> NormalizedMatrix {
    let stats: Vec<ColumnStats> = matrix
        .properties()
        .iter()
        .enumerate()
        .map(|(col, def)| ColumnStats::from_cells(&def.name, matrix.column(col)))
        .collect();

    let values = (0..matrix.rows())
        .map(|i| {
            matrix
                .row(i)
                .iter()
                .zip(matrix.properties())
                .zip(&stats)
                .map(|((cell, def), st)| match cell {
                    Some(v) => normalize_cell(*v, def.direction, st),
                    None => 0.0,
                })
                .collect()
        })
        .collect();

    NormalizedMatrix {
        service_ids: matrix.service_ids().to_vec(),
        properties: matrix.properties().to_vec(),
        values,
        stats,
    }
}

/// Normalizes the consumer's requirement against the candidate column
/// statistics, in the column order of `properties`.
///
/// Values are clamped into [min, max] first: a demand stricter than the best
/// candidate scores as the best candidate, a demand looser than the worst is
/// satisfied by all. Degenerate columns yield 1.0.
pub fn normalize_request(
    requirements: &QosProfile,
    stats: &[ColumnStats],
    properties: &[QosPropertyDef],
    schema: &QosSchema,
) -> Result<Vec<f64>> {
    requirements.validate(schema)?;
    Ok(properties
        .iter()
        .zip(stats)
        .map(|(def, st)| {
            // An unrequested column (only possible on an unrestricted
            // matrix) acts as "no constraint" and scores best.
            let raw = requirements.get(&def.name).unwrap_or(match def.direction {
                Direction::Minimize => st.min,
                Direction::Maximize => st.max,
            });
            let clamped = raw.clamp(st.min, st.max);
            normalize_cell(clamped, def.direction, st)
        })
        .collect())
}
