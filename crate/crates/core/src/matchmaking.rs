//! Weighted Euclidean matchmaking.
//!
//! The distance between a normalized service profile and the normalized
//! requirement is `sqrt(sum_h w_h * (a_h - b_h)^2)`, with one weight per
//! requested QoS property. The candidate with the minimum distance wins;
//! ties break by ascending service id.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::build_quality_matrix_for;
use crate::normalize::{normalize_matrix, normalize_request, NormalizedMatrix};
use crate::record::{MatchRequest, ServiceRecord};
use crate::schema::QosSchema;

/// One term of the squared-distance sum, kept for explainability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionContribution {
    pub property: String,
    pub request_norm: f64,
    pub service_norm: f64,
    pub weight: f64,
    /// `weight * (service_norm - request_norm)^2`
    pub contribution: f64,
}

/// One ranked candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedService {
    pub id: String,
    pub distance: f64,
    pub contributions: Vec<DimensionContribution>,
}

/// Ranked matchmaking outcome.
///
/// `unranked` is set when the consumer specified no QoS requirements at all:
/// candidates are returned in registration order with distance 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchResult {
    pub ranked: Vec<RankedService>,
    pub unranked: bool,
    /// Normalized matrix the distances were computed from, for audit.
    pub matrix_echo: Option<NormalizedMatrix>,
}

impl MatchResult {
    pub fn winner(&self) -> Option<&RankedService> {
        self.ranked.first()
    }
}

/// `sqrt(sum_h w_h * (a_h - b_h)^2)` over vectors of equal length.
pub fn weighted_distance(a: &[f64], b: &[f64], weights: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() != weights.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: weights.len(),
        });
    }
    let sum: f64 = a
        .iter()
        .zip(b)
        .zip(weights)
        .map(|((x, y), w)| w * (x - y) * (x - y))
        .sum();
    Ok(sum.sqrt())
}

/// Runs the selection algorithm over functionally filtered candidates.
///
/// The quality matrix is restricted to the properties the consumer actually
/// requested; omitted columns are dropped entirely, so their statistics never
/// influence the ranking. Matrix and requirement are normalized against the
/// candidate column statistics, then candidates are ranked by ascending
/// weighted distance (ties by ascending id) and truncated to `top_k`.
pub fn match_services(
    request: &MatchRequest,
    candidates: &[ServiceRecord],
    schema: &QosSchema,
) -> Result<MatchResult> {
    request.validate(schema)?;

    if request.requirements.is_empty() {
        // Functional-only search: nothing to rank on.
        let ranked = candidates
            .iter()
            .map(|c| RankedService {
                id: c.id.clone(),
                distance: 0.0,
                contributions: Vec::new(),
            })
            .collect();
        return Ok(MatchResult {
            ranked,
            unranked: true,
            matrix_echo: None,
        });
    }
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }

    let properties = request.requested_properties(schema);
    let matrix = build_quality_matrix_for(candidates, schema, &request.mode, &properties)?;
    let normalized = normalize_matrix(&matrix);
    let request_norm = normalize_request(
        &request.requirements,
        normalized.stats(),
        normalized.properties(),
        schema,
    )?;
    let weights = request.resolve_weights(schema)?;

    let mut ranked: Vec<RankedService> = (0..normalized.rows())
        .map(|i| {
            let row = normalized.row(i);
            let contributions: Vec<DimensionContribution> = normalized
                .properties()
                .iter()
                .zip(row)
                .zip(&request_norm)
                .zip(&weights)
                .map(|(((def, &sv), &rv), &w)| DimensionContribution {
                    property: def.name.clone(),
                    request_norm: rv,
                    service_norm: sv,
                    weight: w,
                    contribution: w * (sv - rv) * (sv - rv),
                })
                .collect();
            let squared: f64 = contributions.iter().map(|c| c.contribution).sum();
            RankedService {
                id: normalized.service_ids()[i].clone(),
                distance: squared.sqrt(),
                contributions,
            }
        })
        .collect();

    ranked.sort_by(|a, b| {
        a.distance
            .partial_cmp(&b.distance)
            .unwrap()
            .then_with(|| a.id.cmp(&b.id))
    });
    ranked.truncate(request.top_k);

    Ok(MatchResult {
        ranked,
        unranked: false,
        matrix_echo: Some(normalized),
    })
}

/// Per-dimension contributions of one ranked service, in schema column order.
pub fn explain<'a>(result: &'a MatchResult, id: &str) -> Result<&'a [DimensionContribution]> {
    result
        .ranked
        .iter()
        .find(|r| r.id == id)
        .map(|r| r.contributions.as_slice())
        .ok_or_else(|| Error::UnknownId { id: id.to_string() })
}

/// Ranking produced by one named weight scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeRanking {
    pub name: String,
    pub ranked: Vec<RankedService>,
    pub winner: String,
    /// Set when this scheme's winner differs from the first scheme's.
    pub winner_differs: bool,
}

/// A named weight scheme for side-by-side comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightScheme {
    pub name: String,
    pub weights: std::collections::BTreeMap<String, f64>,
}

/// Runs one full-depth match per scheme over an identical candidate snapshot
/// and flags schemes whose winner differs from the first scheme's.
pub fn compare_schemes(
    base: &MatchRequest,
    schemes: &[WeightScheme],
    candidates: &[ServiceRecord],
    schema: &QosSchema,
) -> Result<Vec<SchemeRanking>> {
    let mut rankings: Vec<SchemeRanking> = Vec::with_capacity(schemes.len());
    for scheme in schemes {
        let mut request = base.clone();
        request.weights = scheme.weights.clone();
        request.top_k = usize::MAX;
        let result = match_services(&request, candidates, schema)?;
        let winner = result
            .winner()
            .map(|r| r.id.clone())
            .ok_or(Error::NoCandidates)?;
        let winner_differs = rankings
            .first()
            .map(|first| first.winner != winner)
            .unwrap_or(false);
        rankings.push(SchemeRanking {
            name: scheme.name.clone(),
            ranked: result.ranked,
            winner,
            winner_differs,
        });
    }
    Ok(rankings)
}
