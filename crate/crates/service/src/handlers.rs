use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::Json;

use qos_broker_core::{match_services as run_match, MatchRequest, ServiceRecord};

use crate::error::ApiError;
use crate::state::AppState;
use crate::wire::{HealthResponse, MatchResponse};

fn parse_body<T: serde::de::DeserializeOwned>(body: &str) -> Result<T, ApiError> {
    serde_json::from_str(body).map_err(|e| ApiError::bad_body(&e.to_string()))
}

pub async fn health(State(state): State<AppState>) -> Json<HealthResponse> {
    let store = state.snapshot().await;
    Json(HealthResponse {
        status: "ok".to_string(),
        revision: store.revision(),
        services: store.len(),
    })
}

pub async fn create_service(
    State(state): State<AppState>,
    body: String,
) -> Result<Response, ApiError> {
    let record: ServiceRecord = parse_body(&body)?;
    let stored = state
        .mutate(|store| {
            store.register(record.clone())?;
            Ok(record)
        })
        .await?;
    let location = format!("/services/{}", stored.id);
    Ok((
        StatusCode::CREATED,
        [(header::LOCATION, location)],
        Json(stored),
    )
        .into_response())
}

pub async fn list_services(State(state): State<AppState>) -> Json<Vec<ServiceRecord>> {
    Json(state.snapshot().await.services().to_vec())
}

pub async fn get_service(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<ServiceRecord>, ApiError> {
    let store = state.snapshot().await;
    Ok(Json(store.get(&id)?.clone()))
}

pub async fn delete_service(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<StatusCode, ApiError> {
    state.mutate(|store| store.remove(&id)).await?;
    Ok(StatusCode::NO_CONTENT)
}

pub async fn match_services(
    State(state): State<AppState>,
    body: String,
) -> Result<Json<MatchResponse>, ApiError> {
    let request: MatchRequest = parse_body(&body)?;
    // Matchmaking runs on a snapshot; the store is never mutated here.
    let store = state.snapshot().await;
    request.validate(store.schema())?;

    let candidates: Vec<ServiceRecord> = store
        .find_by_function(&request.functional_tags)
        .into_iter()
        .cloned()
        .collect();
    if candidates.is_empty() {
        return Ok(Json(MatchResponse::empty(
            "no service matches the functional query; register services or relax the tags",
        )));
    }

    match run_match(&request, &candidates, store.schema()) {
        Ok(result) => Ok(Json(MatchResponse::from_result(&result))),
        Err(qos_broker_core::Error::NoCandidates) => Err(ApiError::new(
            StatusCode::NOT_FOUND,
            "unknown-mode",
            format!(
                "no candidate offers QoS mode {:?} or a default profile",
                request.mode
            ),
        )),
        Err(err) => Err(err.into()),
    }
}
