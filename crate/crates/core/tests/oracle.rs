//! Brute-force oracle: recompute every distance from the raw records with
//! plain loops, independent of the matrix/normalization pipeline, and check
//! the matchmaking output against it.

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qos_broker_core::{
    match_services, Direction, MatchRequest, QosProfile, QosPropertyDef, QosSchema, ServiceRecord,
};

struct RawInstance {
    directions: Vec<Direction>,
    cells: Vec<Vec<Option<f64>>>,
    requirements: Vec<f64>,
    weights: Vec<f64>,
}

fn random_instance(rng: &mut StdRng) -> RawInstance {
    let k = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=6);
    let directions = (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Direction::Minimize
            } else {
                Direction::Maximize
            }
        })
        .collect();
    let cells = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    if rng.gen_bool(0.1) {
                        None
                    } else {
                        Some(rng.gen_range(-100.0..100.0))
                    }
                })
                .collect()
        })
        .collect();
    let requirements = (0..k).map(|_| rng.gen_range(-100.0..100.0)).collect();
    let weights = (0..k).map(|_| rng.gen_range(0.001..=1.0)).collect();
    RawInstance {
        directions,
        cells,
        requirements,
        weights,
    }
}

/// Straight-line recomputation: per column min/max over present cells,
/// normalize each cell and the clamped requirement, accumulate the weighted
/// squared differences, take the square root.
fn oracle_distances(instance: &RawInstance) -> Vec<f64> {
    let n = instance.cells.len();
    let k = instance.directions.len();
    let mut out = vec![0.0f64; n];
    for col in 0..k {
        let present: Vec<f64> = (0..n).filter_map(|row| instance.cells[row][col]).collect();
        let min = present.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = present.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let degenerate = present.is_empty() || min == max;
        let norm = |v: f64| -> f64 {
            if degenerate {
                return 1.0;
            }
            match instance.directions[col] {
                Direction::Minimize => (max - v) / (max - min),
                Direction::Maximize => (v - min) / (max - min),
            }
        };
        let req = if degenerate {
            1.0
        } else {
            norm(instance.requirements[col].clamp(min, max))
        };
        for (row, acc) in out.iter_mut().enumerate() {
            let service = match instance.cells[row][col] {
                Some(v) => norm(v),
                None => 0.0,
            };
            *acc += instance.weights[col] * (service - req) * (service - req);
        }
    }
    for d in &mut out {
        *d = d.sqrt();
    }
    out
}

fn run_pipeline(instance: &RawInstance) -> Vec<(String, f64)> {
    let schema = QosSchema::new(
        instance
            .directions
            .iter()
            .enumerate()
            .map(|(i, d)| QosPropertyDef::new(format!("p{i}"), *d, ""))
            .collect(),
    )
    .unwrap();
    let records: Vec<ServiceRecord> = instance
        .cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut profile = QosProfile::new();
            for (j, cell) in row.iter().enumerate() {
                if let Some(v) = cell {
                    profile.set(format!("p{j}"), *v);
                }
            }
            ServiceRecord {
                id: format!("svc_{i:02}"),
                display_name: format!("svc_{i:02}"),
                functional_tags: BTreeSet::new(),
                profiles: BTreeMap::from([("default".to_string(), profile)]),
            }
        })
        .collect();
    let request = MatchRequest {
        functional_tags: BTreeSet::new(),
        mode: "default".to_string(),
        requirements: instance
            .requirements
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("p{i}"), *v))
            .collect(),
        weights: instance
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| (format!("p{i}"), *w))
            .collect(),
        top_k: usize::MAX,
    };
    match_services(&request, &records, &schema)
        .unwrap()
        .ranked
        .iter()
        .map(|r| (r.id.clone(), r.distance))
        .collect()
}

#[test]
fn brute_force_oracle_agrees_on_random_instances() {
    let mut rng = StdRng::seed_from_u64(0x9057_b20c);
    for case in 0..1000 {
        let instance = random_instance(&mut rng);
        let expected = oracle_distances(&instance);
        let ranked = run_pipeline(&instance);

        assert_eq!(ranked.len(), expected.len(), "case {case}: row count");
        for (id, distance) in &ranked {
            let row: usize = id.strip_prefix("svc_").unwrap().parse().unwrap();
            assert!(
                (distance - expected[row]).abs() <= 1e-9,
                "case {case}, {id}: {distance} vs oracle {}",
                expected[row]
            );
        }

        // Oracle winner under the same tie-break: minimum distance, then
        // ascending id.
        let oracle_winner = expected
            .iter()
            .enumerate()
            .map(|(i, d)| (format!("svc_{i:02}"), *d))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then_with(|| a.0.cmp(&b.0)))
            .unwrap()
            .0;
        assert_eq!(ranked[0].0, oracle_winner, "case {case}: winner");
    }
}
