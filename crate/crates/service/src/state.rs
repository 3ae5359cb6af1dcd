use std::path::PathBuf;
use std::sync::Arc;

use qos_broker_core::{Error, RegistryStore};
use tokio::sync::RwLock;

/// Shared server state: the registry behind a single-writer lock plus the
/// path it persists to. Reads clone an immutable snapshot so matchmaking
/// always sees one consistent revision.
#[derive(Clone)]
pub struct AppState {
    store: Arc<RwLock<RegistryStore>>,
    path: Option<PathBuf>,
}

impl AppState {
    pub fn new(store: RegistryStore) -> Self {
        Self {
            store: Arc::new(RwLock::new(store)),
            path: None,
        }
    }

    /// State that persists the store to `path` after every mutation and on
    /// shutdown.
    pub fn with_path(store: RegistryStore, path: PathBuf) -> Self {
        Self {
            store: Arc::new(RwLock::new(store)),
            path: Some(path),
        }
    }

    pub async fn snapshot(&self) -> RegistryStore {
        self.store.read().await.clone()
    }

    /// Applies a mutation under the writer lock and persists the result.
    pub async fn mutate<T>(
        &self,
        f: impl FnOnce(&mut RegistryStore) -> Result<T, Error>,
    ) -> Result<T, Error> {
        let mut store = self.store.write().await;
        let value = f(&mut store)?;
        if let Some(path) = &self.path {
            store.save(path)?;
        }
        Ok(value)
    }

    pub async fn persist(&self) -> Result<(), Error> {
        if let Some(path) = &self.path {
            self.store.read().await.save(path)?;
        }
        Ok(())
    }
}
