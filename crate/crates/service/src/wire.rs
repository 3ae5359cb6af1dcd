//! Response documents of the match and health endpoints.

use qos_broker_core::{DimensionContribution, MatchResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HealthResponse {
    pub status: String,
    pub revision: u64,
    pub services: usize,
}

/// One ranked candidate: `distance` is the 4-decimal display form,
/// `distance_raw` keeps full precision for audits and golden comparisons.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankedEntry {
    pub id: String,
    pub distance: String,
    pub distance_raw: f64,
    pub contributions: Vec<DimensionContribution>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchResponse {
    pub ranking: Vec<RankedEntry>,
    pub unranked: bool,
    /// Present when the ranking is empty or unranked, explaining why.
    pub feedback: Option<String>,
}

impl MatchResponse {
    pub fn from_result(result: &MatchResult) -> Self {
        let ranking = result
            .ranked
            .iter()
            .map(|r| RankedEntry {
                id: r.id.clone(),
                distance: format!("{:.4}", r.distance),
                distance_raw: r.distance,
                contributions: r.contributions.clone(),
            })
            .collect();
        let feedback = result
            .unranked
            .then(|| "request carried no QoS requirements; candidates are unranked".to_string());
        Self {
            ranking,
            unranked: result.unranked,
            feedback,
        }
    }

    pub fn empty(feedback: impl Into<String>) -> Self {
        Self {
            ranking: Vec::new(),
            unranked: false,
            feedback: Some(feedback.into()),
        }
    }
}
