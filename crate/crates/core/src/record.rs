use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schema::{QosProfile, QosSchema};

/// Profile key a record falls back to when it does not declare the
/// requested QoS mode.
pub const DEFAULT_MODE: &str = "default";

fn default_top_k() -> usize {
    1
}

/// A registered service: identity, functional keywords and one QoS profile
/// per mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceRecord {
    pub id: String,
    #[serde(rename = "name")]
    pub display_name: String,
    #[serde(rename = "tags")]
    pub functional_tags: BTreeSet<String>,
    pub profiles: BTreeMap<String, QosProfile>,
}

impl ServiceRecord {
    /// Checks identity and every profile against the schema.
    pub fn validate(&self, schema: &QosSchema) -> Result<()> {
        if self.id.is_empty() {
            return Err(Error::EmptyServiceId);
        }
        if self.profiles.is_empty() {
            return Err(Error::NoProfiles {
                id: self.id.clone(),
            });
        }
        for profile in self.profiles.values() {
            profile.validate(schema)?;
        }
        Ok(())
    }

    /// Profile used for matchmaking under `mode`: the mode itself when
    /// declared, otherwise the record's `"default"` profile.
    pub fn profile_for_mode(&self, mode: &str) -> Option<&QosProfile> {
        self.profiles
            .get(mode)
            .or_else(|| self.profiles.get(DEFAULT_MODE))
    }

    pub fn matches_tags(&self, query: &BTreeSet<String>) -> bool {
        query.iter().all(|t| self.functional_tags.contains(t))
    }
}

/// A consumer's matchmaking request: functional query, QoS mode, partial
/// requirement vector and per-property weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchRequest {
    #[serde(rename = "tags", default)]
    pub functional_tags: BTreeSet<String>,
    #[serde(default = "default_mode_string")]
    pub mode: String,
    #[serde(default)]
    pub requirements: QosProfile,
    #[serde(default)]
    pub weights: BTreeMap<String, f64>,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
}

fn default_mode_string() -> String {
    DEFAULT_MODE.to_string()
}

impl Default for MatchRequest {
    fn default() -> Self {
        Self {
            functional_tags: BTreeSet::new(),
            mode: default_mode_string(),
            requirements: QosProfile::new(),
            weights: BTreeMap::new(),
            top_k: default_top_k(),
        }
    }
}

impl MatchRequest {
    /// Checks requirement keys, weight keys, weight bounds and `top_k`.
    ///
    /// A weight may only name a property that also appears in the
    /// requirements, and must lie in (0, 1].
    pub fn validate(&self, schema: &QosSchema) -> Result<()> {
        self.requirements.validate(schema)?;
        for (name, &weight) in &self.weights {
            if !schema.contains(name) {
                return Err(Error::UnknownProperty { name: name.clone() });
            }
            if self.requirements.get(name).is_none() {
                return Err(Error::WeightWithoutRequirement { name: name.clone() });
            }
            if !weight.is_finite() || weight <= 0.0 || weight > 1.0 {
                return Err(Error::OutOfRangeWeight {
                    name: name.clone(),
                    value: weight,
                });
            }
        }
        if self.top_k == 0 {
            return Err(Error::InvalidTopK);
        }
        Ok(())
    }

    /// Names of the requested properties, in schema column order.
    pub fn requested_properties<'a>(&self, schema: &'a QosSchema) -> Vec<&'a str> {
        schema
            .properties()
            .iter()
            .map(|p| p.name.as_str())
            .filter(|name| self.requirements.get(name).is_some())
            .collect()
    }

    /// Weight vector in schema column order over the requested properties;
    /// properties without a stated weight default to 1.0.
    pub fn resolve_weights(&self, schema: &QosSchema) -> Result<Vec<f64>> {
        self.validate(schema)?;
        Ok(self
            .requested_properties(schema)
            .iter()
            .map(|name| self.weights.get(*name).copied().unwrap_or(1.0))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;

    #[test]
    fn resolve_weights_in_schema_order() {
        let schema = testdata::schema();
        let request = testdata::request(testdata::CASE1_WEIGHTS);
        let w = request.resolve_weights(&schema).unwrap();
        assert_eq!(w, vec![0.9, 1.0, 0.6, 0.4, 0.6, 0.1]);
    }

    #[test]
    fn unspecified_weights_default_to_one() {
        let schema = testdata::schema();
        let mut request = testdata::request(testdata::CASE1_WEIGHTS);
        request.weights.clear();
        let w = request.resolve_weights(&schema).unwrap();
        assert_eq!(w, vec![1.0; 6]);
    }

    #[test]
    fn resolve_weights_idempotent() {
        let schema = testdata::schema();
        let request = testdata::request(testdata::CASE2_WEIGHTS);
        let first = request.resolve_weights(&schema).unwrap();
        let second = request.resolve_weights(&schema).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn out_of_range_weight_rejected() {
        let schema = testdata::schema();
        let mut request = testdata::request(testdata::CASE1_WEIGHTS);
        request.weights.insert("cost".into(), 1.3);
        let err = request.resolve_weights(&schema).unwrap_err();
        assert_eq!(err.code(), "out-of-range-weight");

        request.weights.insert("cost".into(), 0.0);
        let err = request.resolve_weights(&schema).unwrap_err();
        assert_eq!(err.code(), "out-of-range-weight");
    }

    #[test]
    fn weight_for_unrequested_property_rejected() {
        let schema = testdata::schema();
        let mut request = testdata::request(&[]);
        request.requirements = QosProfile::new().with("cost", 200.0);
        request.weights.insert("throughput".into(), 0.5);
        let err = request.validate(&schema).unwrap_err();
        assert_eq!(err.code(), "weight-without-requirement");
    }

    #[test]
    fn weight_for_unknown_property_rejected() {
        let schema = testdata::schema();
        let mut request = testdata::request(&[]);
        request.weights.insert("latency".into(), 0.5);
        let err = request.validate(&schema).unwrap_err();
        assert_eq!(err.code(), "unknown-property");
    }

    #[test]
    fn mode_fallback_to_default_profile() {
        let record = testdata::services()[0].clone();
        assert!(record.profile_for_mode("WHM/NTM").is_some());
        assert!(record.profile_for_mode("nonexistent").is_none());
    }
}
