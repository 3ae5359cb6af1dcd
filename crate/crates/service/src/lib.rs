//! HTTP/JSON endpoint for the QoS broker.
//!
//! Routes:
//! - `POST /services` — register a service record (201, Location header)
//! - `GET /services` — list records in registration order
//! - `GET /services/{id}` / `DELETE /services/{id}`
//! - `POST /match` — rank candidates for a match request
//! - `GET /health` — store revision and service count
//!
//! Mutations go through a single writer lock and persist the store to disk;
//! matches run on an immutable snapshot and never mutate the store.

mod error;
mod handlers;
mod state;
pub mod wire;

pub use error::ApiError;
pub use state::AppState;

use axum::routing::{get, post};
use axum::Router;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/health", get(handlers::health))
        .route("/services", post(handlers::create_service).get(handlers::list_services))
        .route(
            "/services/:id",
            get(handlers::get_service).delete(handlers::delete_service),
        )
        .route("/match", post(handlers::match_services))
        .with_state(state)
}

/// Serves the API on `listener` until `shutdown` resolves, then persists the
/// store.
pub async fn serve(
    listener: tokio::net::TcpListener,
    state: AppState,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    let app = router(state.clone());
    axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await?;
    state.persist().await.map_err(std::io::Error::other)?;
    Ok(())
}
