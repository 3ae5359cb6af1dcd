//! Thin HTTP client for the QoS broker API.

use qos_broker_core::{DimensionContribution, MatchRequest, ServiceRecord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport error: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("api error {status} [{code}]: {message}")]
    Api {
        status: u16,
        code: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Debug, Deserialize)]
struct ErrorBody {
    code: String,
    message: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Health {
    pub status: String,
    pub revision: u64,
    pub services: usize,
}

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
    pub feedback: Option<String>,
}

/// Client for one broker endpoint, e.g. `http://127.0.0.1:8080`.
#[derive(Debug, Clone)]
pub struct BrokerClient {
    base: String,
    http: reqwest::Client,
}

impl BrokerClient {
    pub fn new(base_url: impl Into<String>) -> Self {
        let mut base = base_url.into();
        while base.ends_with('/') {
            base.pop();
        }
        Self {
            base,
            http: reqwest::Client::new(),
        }
    }

    async fn decode<T: serde::de::DeserializeOwned>(response: reqwest::Response) -> Result<T> {
        let status = response.status();
        if status.is_success() {
            return Ok(response.json().await?);
        }
        let body: ErrorBody = response.json().await.unwrap_or(ErrorBody {
            code: "malformed-document".to_string(),
            message: format!("non-JSON error response with status {status}"),
        });
        Err(ClientError::Api {
            status: status.as_u16(),
            code: body.code,
            message: body.message,
        })
    }

    pub async fn health(&self) -> Result<Health> {
        Self::decode(self.http.get(format!("{}/health", self.base)).send().await?).await
    }

    pub async fn register(&self, record: &ServiceRecord) -> Result<ServiceRecord> {
        Self::decode(
            self.http
                .post(format!("{}/services", self.base))
                .json(record)
                .send()
                .await?,
        )
        .await
    }

    pub async fn list(&self) -> Result<Vec<ServiceRecord>> {
        Self::decode(self.http.get(format!("{}/services", self.base)).send().await?).await
    }

    pub async fn get(&self, id: &str) -> Result<ServiceRecord> {
        Self::decode(
            self.http
                .get(format!("{}/services/{id}", self.base))
                .send()
                .await?,
        )
        .await
    }

    pub async fn delete(&self, id: &str) -> Result<()> {
        let response = self
            .http
            .delete(format!("{}/services/{id}", self.base))
            .send()
            .await?;
        let status = response.status();
        if status.is_success() {
            return Ok(());
        }
        let body: ErrorBody = response.json().await.unwrap_or(ErrorBody {
            code: "malformed-document".to_string(),
            message: format!("non-JSON error response with status {status}"),
        });
        Err(ClientError::Api {
            status: status.as_u16(),
            code: body.code,
            message: body.message,
        })
    }

    pub async fn find_match(&self, request: &MatchRequest) -> Result<MatchResponse> {
        Self::decode(
            self.http
                .post(format!("{}/match", self.base))
                .json(request)
                .send()
                .await?,
        )
        .await
    }
}
