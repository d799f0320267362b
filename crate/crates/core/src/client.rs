//! The public facade: validates requests, parses filters into the
//! universal AST, delegates to the bound adapter, and unifies every error
//! into the canonical taxonomy.

use std::sync::Arc;

use crate::adapter::{ClientConfig, ProviderParams, ProviderRegistry, VectorAdapter};
use crate::error::{UnifiedError, VextraError};
use crate::filter::{parse_filter, FilterAst};
use crate::model::{CollectionSpec, MetricKind, QueryResult, Record, RecordId};

/// Attribute a classified error to a provider and fix its transient flag.
/// Total: unclassified natives arrive as internal errors with the raw
/// detail preserved verbatim.
pub fn map_error(provider: &str, native: VextraError) -> UnifiedError {
    UnifiedError {
        code: native.code,
        transient: native.code.is_transient(),
        message: native.message,
        provider: provider.to_string(),
        native_detail: native.native_detail,
    }
}

/// A client bound to one adapter. All state is immutable after connect, so
/// instances can be shared freely across threads; concurrency guarantees
/// reduce to the bound adapter's contract.
pub struct UnifiedClient {
    adapter: Arc<dyn VectorAdapter>,
    provider: String,
}

impl UnifiedClient {
    /// Look up the configured provider in the registry and bind its
    /// adapter. No network activity for the built-in providers.
    pub fn connect(
        config: &ClientConfig,
        registry: &ProviderRegistry,
    ) -> Result<Self, UnifiedError> {
        let adapter = registry
            .create(config)
            .map_err(|e| map_error(&config.provider, e))?;
        Ok(Self::bind(config.provider.clone(), adapter))
    }

    /// Bind a client directly to an adapter instance, the way the
    /// connection path injects one after registry lookup.
    pub fn bind(provider: String, adapter: Arc<dyn VectorAdapter>) -> Self {
        Self { adapter, provider }
    }

    pub fn provider(&self) -> &str {
        &self.provider
    }

    fn fail(&self, error: VextraError) -> UnifiedError {
        map_error(&self.provider, error)
    }

    fn wrap<T>(&self, result: Result<T, VextraError>) -> Result<T, UnifiedError> {
        result.map_err(|e| self.fail(e))
    }

    pub fn create_collection(
        &self,
        name: &str,
        dimension: usize,
        metric: MetricKind,
        provider_params: Option<&ProviderParams>,
    ) -> Result<(), UnifiedError> {
        let spec = CollectionSpec::new(name, dimension, metric);
        spec.validate().map_err(|e| self.fail(e))?;
        self.wrap(self.adapter.create_collection(&spec, provider_params))
    }

    pub fn delete_collection(&self, name: &str) -> Result<(), UnifiedError> {
        self.wrap(self.adapter.delete_collection(name))
    }

    pub fn list_collections(&self) -> Result<Vec<String>, UnifiedError> {
        self.wrap(self.adapter.list_collections())
    }

    /// Insert or replace a batch of records.
    pub fn upsert(&self, collection: &str, records: &[Record]) -> Result<usize, UnifiedError> {
        if records.is_empty() {
            return Err(self.fail(VextraError::validation("upsert batch must be non-empty")));
        }
        self.wrap(self.adapter.upsert(collection, records))
    }

    pub fn fetch(&self, collection: &str, ids: &[RecordId]) -> Result<Vec<Record>, UnifiedError> {
        self.wrap(self.adapter.fetch(collection, ids))
    }

    pub fn delete(&self, collection: &str, ids: &[RecordId]) -> Result<usize, UnifiedError> {
        self.wrap(self.adapter.delete(collection, ids))
    }

    /// Similarity search. The filter document, when given, is parsed into
    /// the universal AST here; the adapter owns any further translation.
    /// All validation happens before the adapter is invoked, and
    /// `provider_params` pass through untouched.
    pub fn query(
        &self,
        collection: &str,
        vector: &[f64],
        top_k: usize,
        filter: Option<&serde_json::Value>,
        provider_params: Option<&ProviderParams>,
    ) -> Result<Vec<QueryResult>, UnifiedError> {
        if top_k < 1 {
            return Err(self.fail(VextraError::validation("top_k must be at least 1")));
        }
        if vector.is_empty() {
            return Err(self.fail(VextraError::validation("query vector must be non-empty")));
        }
        if vector.iter().any(|c| !c.is_finite()) {
            return Err(self.fail(VextraError::validation(
                "query vector must have finite components",
            )));
        }
        let ast = match filter {
            Some(source) => parse_filter(source).map_err(|e| self.fail(e))?,
            None => FilterAst::MatchAll,
        };
        self.wrap(
            self.adapter
                .query(collection, vector, top_k, &ast, provider_params),
        )
    }
}
