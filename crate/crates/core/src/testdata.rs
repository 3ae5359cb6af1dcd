//! Shared test fixtures: the four-service weather registry used across the
//! unit tests, with the published quality matrix and weight schemes.

use std::collections::{BTreeMap, BTreeSet};

use crate::matchmaking::WeightScheme;
use crate::record::{MatchRequest, ServiceRecord};
use crate::schema::{Direction, QosProfile, QosPropertyDef, QosSchema};

pub const MODE: &str = "WHM/NTM";

pub const CASE1_WEIGHTS: &[(&str, f64)] = &[
    ("scalability", 0.9),
    ("response_time", 1.0),
    ("throughput", 0.6),
    ("availability", 0.4),
    ("accessibility", 0.6),
    ("cost", 0.1),
];

pub const CASE2_WEIGHTS: &[(&str, f64)] = &[
    ("scalability", 0.9),
    ("response_time", 0.1),
    ("throughput", 1.0),
    ("availability", 0.1),
    ("accessibility", 0.2),
    ("cost", 0.9),
];

pub fn schema() -> QosSchema {
    QosSchema::new(vec![
        QosPropertyDef::new("scalability", Direction::Maximize, "ratio"),
        QosPropertyDef::new("response_time", Direction::Minimize, "ms"),
        QosPropertyDef::new("throughput", Direction::Maximize, "requests/s"),
        QosPropertyDef::new("availability", Direction::Maximize, "ratio"),
        QosPropertyDef::new("accessibility", Direction::Maximize, "ratio"),
        QosPropertyDef::new("cost", Direction::Minimize, "currency units"),
    ])
    .unwrap()
}

fn service(id: &str, values: [f64; 6]) -> ServiceRecord {
    let names = [
        "scalability",
        "response_time",
        "throughput",
        "availability",
        "accessibility",
        "cost",
    ];
    let profile: QosProfile = names
        .iter()
        .zip(values)
        .map(|(n, v)| (n.to_string(), v))
        .collect();
    ServiceRecord {
        id: id.to_string(),
        display_name: format!("{id} weather service"),
        functional_tags: BTreeSet::from(["weather".to_string()]),
        profiles: BTreeMap::from([(MODE.to_string(), profile)]),
    }
}

/// The four candidate services of the published quality matrix.
pub fn services() -> Vec<ServiceRecord> {
    vec![
        service("ws_1", [0.9, 10.0, 100.0, 1.0, 0.9, 500.0]),
        service("ws_2", [0.0, 15.0, 30.0, 0.8, 0.6, 100.0]),
        service("ws_3", [0.3, 5.0, 20.0, 0.6, 0.9, 200.0]),
        service("ws_4", [1.0, 20.0, 200.0, 0.9, 1.0, 300.0]),
    ]
}

/// The consumer requirement vector of the worked example.
pub fn requirements() -> QosProfile {
    QosProfile::new()
        .with("scalability", 0.9)
        .with("response_time", 20.0)
        .with("throughput", 50.0)
        .with("availability", 0.9)
        .with("accessibility", 1.0)
        .with("cost", 200.0)
}

/// A full match request over the example registry; an empty `weights` slice
/// means all weights default to 1.0.
pub fn request(weights: &[(&str, f64)]) -> MatchRequest {
    MatchRequest {
        functional_tags: BTreeSet::from(["weather".to_string()]),
        mode: MODE.to_string(),
        requirements: requirements(),
        weights: weights
            .iter()
            .map(|(n, w)| (n.to_string(), *w))
            .collect(),
        top_k: 4,
    }
}

pub fn scheme(name: &str, weights: &[(&str, f64)]) -> WeightScheme {
    WeightScheme {
        name: name.to_string(),
        weights: weights
            .iter()
            .map(|(n, w)| (n.to_string(), *w))
            .collect(),
    }
}

/// Single-column registry with the given (possibly missing) cells, one
/// service per cell, under the `"default"` mode.
pub fn services_with_column(property: &str, cells: &[Option<f64>]) -> Vec<ServiceRecord> {
    cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let mut profile = QosProfile::new();
            if let Some(v) = cell {
                profile.set(property, *v);
            }
            ServiceRecord {
                id: format!("svc_{i}"),
                display_name: format!("svc_{i}"),
                functional_tags: BTreeSet::new(),
                profiles: BTreeMap::from([("default".to_string(), profile)]),
            }
        })
        .collect()
}
