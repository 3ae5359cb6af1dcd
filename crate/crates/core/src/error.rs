use thiserror::Error;

/// Errors raised by the registry model, normalization and matchmaking.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// that the HTTP layer and the CLI expose verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("schema has no properties")]
    EmptySchema,
    #[error("schema property at index {index} has an empty name")]
    EmptyName { index: usize },
    #[error("duplicate property name in schema: {name}")]
    DuplicateName { name: String },
    #[error("unknown property: {name}")]
    UnknownProperty { name: String },
    #[error("value for property {name} is not finite: {value}")]
    NonFiniteValue { name: String, value: f64 },
    #[error("service {id} declares no QoS profiles")]
    NoProfiles { id: String },
    #[error("service id is empty")]
    EmptyServiceId,
    #[error("duplicate service id: {id}")]
    DuplicateId { id: String },
    #[error("unknown service id: {id}")]
    UnknownId { id: String },
    #[error("weight for {name} is out of range (0, 1]: {value}")]
    OutOfRangeWeight { name: String, value: f64 },
    #[error("weight given for property {name} which is not in the requirements")]
    WeightWithoutRequirement { name: String },
    #[error("top_k must be positive")]
    InvalidTopK,
    #[error("no candidate service offers the requested mode or a default profile")]
    NoCandidates,
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed store document: {0}")]
    MalformedDocument(String),
    #[error("store schema mismatch: {0}")]
    SchemaMismatch(String),
}

impl Error {
    /// Stable error code for API responses and CLI output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySchema => "empty-schema",
            Error::EmptyName { .. } => "empty-name",
            Error::DuplicateName { .. } => "duplicate-name",
            Error::UnknownProperty { .. } => "unknown-property",
            Error::NonFiniteValue { .. } => "non-finite-value",
            Error::NoProfiles { .. } => "no-profiles",
            Error::EmptyServiceId => "empty-service-id",
            Error::DuplicateId { .. } => "duplicate-id",
            Error::UnknownId { .. } => "unknown-id",
            Error::OutOfRangeWeight { .. } => "out-of-range-weight",
            Error::WeightWithoutRequirement { .. } => "weight-without-requirement",
            Error::InvalidTopK => "invalid-top-k",
            Error::NoCandidates => "no-candidates",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::Io(_) => "io-failure",
            Error::MalformedDocument(_) => "malformed-document",
            Error::SchemaMismatch(_) => "schema-mismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
