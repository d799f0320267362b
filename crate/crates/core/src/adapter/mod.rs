//! The adapter contract, provider registry, and client configuration.
//!
//! Every backend implements [`VectorAdapter`]; the registry maps provider
//! names to factories so the connection path can instantiate the right
//! adapter from a config document alone.

pub mod memory;
pub mod simulated;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::VextraError;
use crate::filter::FilterAst;
use crate::model::{CollectionSpec, QueryResult, Record, RecordId};

pub use memory::{snapshot_load, snapshot_save, MemoryAdapter, MemoryStore};
pub use simulated::SimulatedAdapter;

/// Opaque provider-specific parameters, forwarded without inspection.
pub type ProviderParams = serde_json::Map<String, serde_json::Value>;

/// The contract every backend adapter implements. All operations must be
/// safe under concurrent calls; an operation either succeeds or raises one
/// classified [`VextraError`], which the client facade attributes to the
/// provider.
pub trait VectorAdapter: Send + Sync {
    fn provider(&self) -> &str;

    fn create_collection(
        &self,
        spec: &CollectionSpec,
        provider_params: Option<&ProviderParams>,
    ) -> Result<(), VextraError>;

    fn delete_collection(&self, name: &str) -> Result<(), VextraError>;

    fn list_collections(&self) -> Result<Vec<String>, VextraError>;

    fn upsert(&self, collection: &str, records: &[Record]) -> Result<usize, VextraError>;

    fn fetch(&self, collection: &str, ids: &[RecordId]) -> Result<Vec<Record>, VextraError>;

    fn delete(&self, collection: &str, ids: &[RecordId]) -> Result<usize, VextraError>;

    fn query(
        &self,
        collection: &str,
        vector: &[f64],
        top_k: usize,
        filter: &FilterAst,
        provider_params: Option<&ProviderParams>,
    ) -> Result<Vec<QueryResult>, VextraError>;
}

/// Port values appear as strings or integers in config documents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PortValue {
    Int(u32),
    Str(String),
}

/// Connection configuration. `provider` selects the adapter; the remaining
/// keys are provider-specific, with unknown keys kept for forward
/// compatibility.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClientConfig {
    pub provider: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub persist_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_call_latency_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_record_latency_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub api_key: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub host: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub port: Option<PortValue>,
    #[serde(flatten)]
    pub extra: serde_json::Map<String, serde_json::Value>,
}

impl ClientConfig {
    pub fn for_provider(provider: impl Into<String>) -> Self {
        Self {
            provider: provider.into(),
            persist_path: None,
            per_call_latency_ms: None,
            per_record_latency_ms: None,
            api_key: None,
            host: None,
            port: None,
            extra: serde_json::Map::new(),
        }
    }

    pub fn validate(&self) -> Result<(), VextraError> {
        if self.provider.is_empty() {
            return Err(VextraError::configuration("provider must be non-empty"));
        }
        for (name, value) in [
            ("per_call_latency_ms", self.per_call_latency_ms),
            ("per_record_latency_ms", self.per_record_latency_ms),
        ] {
            if let Some(v) = value {
                if !v.is_finite() || v < 0.0 {
                    return Err(VextraError::configuration(format!(
                        "{name} must be finite and non-negative, got {v}"
                    )));
                }
            }
        }
        Ok(())
    }
}

type AdapterFactory =
    Box<dyn Fn(&ClientConfig) -> Result<Arc<dyn VectorAdapter>, VextraError> + Send + Sync>;

/// Maps provider names to adapter factories. Lookup of an unregistered
/// name is an error, never a fallback.
pub struct ProviderRegistry {
    factories: BTreeMap<String, AdapterFactory>,
}

impl ProviderRegistry {
    pub fn new() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    pub fn register(
        &mut self,
        name: impl Into<String>,
        factory: impl Fn(&ClientConfig) -> Result<Arc<dyn VectorAdapter>, VextraError>
            + Send
            + Sync
            + 'static,
    ) {
        self.factories.insert(name.into(), Box::new(factory));
    }

    /// Instantiate an adapter for the configured provider.
    pub fn create(&self, config: &ClientConfig) -> Result<Arc<dyn VectorAdapter>, VextraError> {
        config.validate()?;
        let factory = self.factories.get(&config.provider).ok_or_else(|| {
            VextraError::configuration(format!(
                "unknown provider {:?}; registered providers: {}",
                config.provider,
                self.providers().join(", ")
            ))
        })?;
        factory(config)
    }

    pub fn providers(&self) -> Vec<&str> {
        self.factories.keys().map(String::as_str).collect()
    }
}

impl Default for ProviderRegistry {
    fn default() -> Self {
        Self::new()
    }
}

/// The built-in registry: the in-memory reference backend (plus two alias
/// providers so backend migration is observable) and the
/// latency-simulating backend used by the benchmark harness.
pub fn default_registry() -> ProviderRegistry {
    let mut registry = ProviderRegistry::new();
    for name in ["memory", "memory-a", "memory-b"] {
        registry.register(name, move |config: &ClientConfig| {
            let adapter = match &config.persist_path {
                Some(path) => MemoryAdapter::with_persistence(name, path.clone())?,
                None => MemoryAdapter::new(name),
            };
            Ok(Arc::new(adapter) as Arc<dyn VectorAdapter>)
        });
    }
    registry.register("simulated", |config: &ClientConfig| {
        let adapter = SimulatedAdapter::new(
            config.per_call_latency_ms.unwrap_or(0.0),
            config.per_record_latency_ms.unwrap_or(0.0),
        );
        Ok(Arc::new(adapter) as Arc<dyn VectorAdapter>)
    });
    registry
}
