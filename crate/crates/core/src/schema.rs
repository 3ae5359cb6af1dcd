use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Optimization direction of a QoS property.
///
/// `Minimize` means a lower raw value is better (response time, cost) and the
/// property is normalized as `(max - v) / (max - min)`; `Maximize` means a
/// higher raw value is better (throughput, availability) and normalization is
/// `(v - min) / (max - min)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    #[serde(rename = "min")]
    Minimize,
    #[serde(rename = "max")]
    Maximize,
}

/// One QoS property definition: name, direction and a free-text unit label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QosPropertyDef {
    pub name: String,
    pub direction: Direction,
    #[serde(default)]
    pub unit: String,
}

impl QosPropertyDef {
    pub fn new(name: impl Into<String>, direction: Direction, unit: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            direction,
            unit: unit.into(),
        }
    }
}

/// Ordered list of QoS property definitions.
///
/// Property order is fixed at construction and defines the column order of
/// every quality matrix and every derived vector. The direction list plays
/// the role of the per-column normalization flag array.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct QosSchema {
    properties: Vec<QosPropertyDef>,
}

impl QosSchema {
    /// Validates the definitions and builds a schema: names must be non-empty
    /// and unique, and at least one property is required.
    pub fn new(defs: Vec<QosPropertyDef>) -> Result<Self> {
        if defs.is_empty() {
            return Err(Error::EmptySchema);
        }
        let mut seen = std::collections::BTreeSet::new();
        for (index, def) in defs.iter().enumerate() {
            if def.name.is_empty() {
                return Err(Error::EmptyName { index });
            }
            if !seen.insert(def.name.as_str()) {
                return Err(Error::DuplicateName {
                    name: def.name.clone(),
                });
            }
        }
        Ok(Self { properties: defs })
    }

    /// Number of properties (the matrix column count).
    pub fn len(&self) -> usize {
        self.properties.len()
    }

    pub fn is_empty(&self) -> bool {
        self.properties.is_empty()
    }

    pub fn properties(&self) -> &[QosPropertyDef] {
        &self.properties
    }

    pub fn get(&self, name: &str) -> Option<&QosPropertyDef> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    /// Per-column direction flags in schema order.
    pub fn directions(&self) -> Vec<Direction> {
        self.properties.iter().map(|p| p.direction).collect()
    }
}

impl<'de> Deserialize<'de> for QosSchema {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let defs = Vec::<QosPropertyDef>::deserialize(deserializer)?;
        QosSchema::new(defs).map_err(serde::de::Error::custom)
    }
}

/// A (possibly partial) assignment of raw values to QoS properties.
///
/// A property may be absent: providers are not required to declare every
/// property and consumers are not required to request every property.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QosProfile {
    values: BTreeMap<String, f64>,
}

impl QosProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) {
        self.values.insert(name.into(), value);
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Checks every key names a schema property and every value is finite.
    pub fn validate(&self, schema: &QosSchema) -> Result<()> {
        for (name, value) in self.iter() {
            if !schema.contains(name) {
                return Err(Error::UnknownProperty {
                    name: name.to_string(),
                });
            }
            if !value.is_finite() {
                return Err(Error::NonFiniteValue {
                    name: name.to_string(),
                    value,
                });
            }
        }
        Ok(())
    }
}

impl FromIterator<(String, f64)> for QosProfile {
    fn from_iter<T: IntoIterator<Item = (String, f64)>>(iter: T) -> Self {
        Self {
            values: iter.into_iter().collect(),
        }
    }
}
