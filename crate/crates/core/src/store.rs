//! Persistent service registry with functional keyword filtering.
//!
//! The on-disk format is a single versioned JSON document holding the schema
//! and the services in registration order:
//!
//! ```json
//! {
//!   "version": "1",
//!   "schema": [{"name": "cost", "direction": "min", "unit": "currency units"}],
//!   "services": [{"id": "ws_1", "name": "...", "tags": ["weather"],
//!                 "profiles": {"WHM/NTM": {"cost": 500}}}]
//! }
//! ```
//!
//! Unknown fields are rejected on load so stores stay inspectable and
//! diffable.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::ServiceRecord;
use crate::schema::QosSchema;

const DOCUMENT_VERSION: &str = "1";

fn default_revision() -> u64 {
    0
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StoreDocument {
    version: String,
    schema: QosSchema,
    services: Vec<ServiceRecord>,
    #[serde(default = "default_revision")]
    revision: u64,
}

/// In-memory registry: schema, services in registration order and a
/// revision counter that increases by exactly one on every mutation.
#[derive(Debug, Clone, PartialEq)]
pub struct RegistryStore {
    schema: QosSchema,
    services: Vec<ServiceRecord>,
    revision: u64,
}

impl RegistryStore {
    pub fn new(schema: QosSchema) -> Self {
        Self {
            schema,
            services: Vec::new(),
            revision: 0,
        }
    }

    pub fn schema(&self) -> &QosSchema {
        &self.schema
    }

    pub fn revision(&self) -> u64 {
        self.revision
    }

    pub fn len(&self) -> usize {
        self.services.len()
    }

    pub fn is_empty(&self) -> bool {
        self.services.is_empty()
    }

    /// Services in registration order.
    pub fn services(&self) -> &[ServiceRecord] {
        &self.services
    }

    pub fn register(&mut self, record: ServiceRecord) -> Result<()> {
        record.validate(&self.schema)?;
        if self.services.iter().any(|s| s.id == record.id) {
            return Err(Error::DuplicateId { id: record.id });
        }
        self.services.push(record);
        self.revision += 1;
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&ServiceRecord> {
        self.services
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownId { id: id.to_string() })
    }

    /// Replaces the record registered under `id`, keeping its position in
    /// registration order. The replacement keeps `id` as its identity.
    pub fn update(&mut self, id: &str, mut record: ServiceRecord) -> Result<()> {
        record.id = id.to_string();
        record.validate(&self.schema)?;
        let slot = self
            .services
            .iter_mut()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownId { id: id.to_string() })?;
        *slot = record;
        self.revision += 1;
        Ok(())
    }

    pub fn remove(&mut self, id: &str) -> Result<ServiceRecord> {
        let index = self
            .services
            .iter()
            .position(|s| s.id == id)
            .ok_or_else(|| Error::UnknownId { id: id.to_string() })?;
        let record = self.services.remove(index);
        self.revision += 1;
        Ok(record)
    }

    /// Services whose functional tags are a superset of `tags`, in
    /// registration order. The empty query returns every record.
    pub fn find_by_function(&self, tags: &BTreeSet<String>) -> Vec<&ServiceRecord> {
        self.services
            .iter()
            .filter(|s| s.matches_tags(tags))
            .collect()
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let document = StoreDocument {
            version: DOCUMENT_VERSION.to_string(),
            schema: self.schema.clone(),
            services: self.services.clone(),
            revision: self.revision,
        };
        let text = serde_json::to_string_pretty(&document)
            .map_err(|e| Error::MalformedDocument(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_document_str(&text)
    }

    pub fn from_document_str(text: &str) -> Result<Self> {
        let document: StoreDocument =
            serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
        if document.version != DOCUMENT_VERSION {
            return Err(Error::MalformedDocument(format!(
                "unsupported version {:?}, expected {:?}",
                document.version, DOCUMENT_VERSION
            )));
        }
        let mut ids = BTreeSet::new();
        for record in &document.services {
            record.validate(&document.schema)?;
            if !ids.insert(record.id.as_str()) {
                return Err(Error::DuplicateId {
                    id: record.id.clone(),
                });
            }
        }
        Ok(Self {
            schema: document.schema,
            services: document.services,
            revision: document.revision,
        })
    }

    /// Loads from `path`, verifying the document's schema equals `expected`.
    pub fn load_with_schema(path: &Path, expected: &QosSchema) -> Result<Self> {
        let store = Self::load(path)?;
        store.check_schema(expected)?;
        Ok(store)
    }

    pub fn check_schema(&self, expected: &QosSchema) -> Result<()> {
        if &self.schema != expected {
            return Err(Error::SchemaMismatch(format!(
                "document schema ({} properties) differs from expected ({} properties) \
                 or disagrees on names/directions",
                self.schema.len(),
                expected.len()
            )));
        }
        Ok(())
    }
}
