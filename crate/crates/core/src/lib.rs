//! QoS-aware service registry and matchmaking broker.
//!
//! Functionally equivalent candidate services are ranked by the weighted
//! Euclidean distance between their min-max normalized QoS profiles and the
//! consumer's normalized requirement vector. Consumers express trade-offs as
//! per-property weights in (0, 1]: a heavily weighted property pulls services
//! that score well on it to the top, while a lightly weighted one barely
//! matters even when the service is deficient there.

pub mod error;
pub mod matchmaking;
pub mod matrix;
pub mod normalize;
pub mod record;
pub mod schema;
pub mod store;

#[doc(hidden)]
pub mod testdata;

pub use error::{Error, Result};
pub use matchmaking::{
    compare_schemes, explain, match_services, weighted_distance, DimensionContribution,
    MatchResult, RankedService, SchemeRanking, WeightScheme,
};
pub use matrix::{build_quality_matrix, build_quality_matrix_for, QualityMatrix};
pub use normalize::{
    normalize_matrix, normalize_maximize, normalize_minimize, normalize_request, ColumnStats,
    NormalizedMatrix,
};
pub use record::{MatchRequest, ServiceRecord, DEFAULT_MODE};
pub use schema::{Direction, QosProfile, QosPropertyDef, QosSchema};
pub use store::RegistryStore;
