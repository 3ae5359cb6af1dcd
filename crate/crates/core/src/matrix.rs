use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::ServiceRecord;
use crate::schema::{QosPropertyDef, QosSchema};

/// Raw quality matrix: one row per retained candidate service, one column
/// per QoS property. A `None` cell means the provider did not declare the
/// property for the selected mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityMatrix {
    service_ids: Vec<String>,
    properties: Vec<QosPropertyDef>,
    values: Vec<Vec<Option<f64>>>,
}

impl QualityMatrix {
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

    pub fn row(&self, i: usize) -> &[Option<f64>] {
        &self.values[i]
    }

    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        self.values[row][col]
    }

    /// Cells of column `col` in row order.
    pub fn column(&self, col: usize) -> impl Iterator<Item = Option<f64>> + '_ {
        self.values.iter().map(move |row| row[col])
    }
}

/// Builds the quality matrix over every schema property.
///
/// Candidates are kept in registration order. A candidate contributes the
/// profile registered under `mode`, falling back to its `"default"` profile;
/// candidates with neither are dropped. Dropping every candidate is an
/// error.
pub fn build_quality_matrix(
    candidates: &[ServiceRecord],
    schema: &QosSchema,
    mode: &str,
) -> Result<QualityMatrix> {
    let all: Vec<&str> = schema.properties().iter().map(|p| p.name.as_str()).collect();
    build_quality_matrix_for(candidates, schema, mode, &all)
}

/// Builds the quality matrix restricted to `properties` (given in schema
/// column order). Used by matchmaking, where columns the consumer omitted
/// are dropped entirely.
pub fn build_quality_matrix_for(
    candidates: &[ServiceRecord],
    schema: &QosSchema,
    mode: &str,
    properties: &[&str],
) -> Result<QualityMatrix> {
    let defs: Vec<QosPropertyDef> = properties
        .iter()
        .map(|name| {
            schema
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnknownProperty {
                    name: name.to_string(),
                })
        })
        .collect::<Result<_>>()?;

    let mut service_ids = Vec::new();
    let mut values = Vec::new();
    for candidate in candidates {
        let Some(profile) = candidate.profile_for_mode(mode) else {
            continue;
        };
        service_ids.push(candidate.id.clone());
        values.push(defs.iter().map(|d| profile.get(&d.name)).collect());
    }
    if service_ids.is_empty() {
        return Err(Error::NoCandidates);
    }
    Ok(QualityMatrix {
        service_ids,
        properties: defs,
        values,
    })
}
