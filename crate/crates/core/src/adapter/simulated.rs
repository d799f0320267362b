//! Latency-simulating backend for the benchmark harness.
//!
//! Every operation costs `per_call_latency_ms + per_record_latency_ms ×
//! batch_size` of busy time: the deadline is armed on entry, the operation
//! delegates to an internal memory store, and the remainder of the window
//! is busy-waited. Results are identical to the memory adapter, while the
//! operation's duration is the modeled cost exactly (as long as the store
//! work fits inside the window), which keeps the backend deterministic
//! enough for sub-microsecond overhead measurements. No lock is held while
//! waiting.

use std::time::{Duration, Instant};

use parking_lot::Mutex;

use crate::adapter::memory::MemoryStore;
use crate::adapter::{ProviderParams, VectorAdapter};
use crate::error::VextraError;
use crate::filter::FilterAst;
use crate::model::{CollectionSpec, QueryResult, Record, RecordId};

pub struct SimulatedAdapter {
    store: MemoryStore,
    per_call_ms: f64,
    per_record_ms: f64,
    injected_fault: Mutex<Option<VextraError>>,
}

impl SimulatedAdapter {
    pub fn new(per_call_ms: f64, per_record_ms: f64) -> Self {
        Self {
            store: MemoryStore::new(),
            per_call_ms,
            per_record_ms,
            injected_fault: Mutex::new(None),
        }
    }

    pub fn store(&self) -> &MemoryStore {
        &self.store
    }

    /// Arrange for the next operation to fail with the given error, as a
    /// stand-in for backend faults like rate limiting.
    pub fn inject_fault(&self, error: VextraError) {
        *self.injected_fault.lock() = Some(error);
    }

    fn with_latency<T>(
        &self,
        batch_size: usize,
        op: impl FnOnce() -> Result<T, VextraError>,
    ) -> Result<T, VextraError> {
        if let Some(error) = self.injected_fault.lock().take() {
            return Err(error);
        }
        let ms = self.per_call_ms + self.per_record_ms * batch_size as f64;
        let deadline = Instant::now() + Duration::from_secs_f64(ms / 1000.0);
        let result = op();
        while Instant::now() < deadline {
            std::hint::spin_loop();
        }
        result
    }
}

impl VectorAdapter for SimulatedAdapter {
    fn provider(&self) -> &str {
        "simulated"
    }

    fn create_collection(
        &self,
        spec: &CollectionSpec,
        _provider_params: Option<&ProviderParams>,
    ) -> Result<(), VextraError> {
        self.with_latency(0, || self.store.create_collection(spec))
    }

    fn delete_collection(&self, name: &str) -> Result<(), VextraError> {
        self.with_latency(0, || self.store.delete_collection(name))
    }

    fn list_collections(&self) -> Result<Vec<String>, VextraError> {
        self.with_latency(0, || Ok(self.store.list_collections()))
    }

    fn upsert(&self, collection: &str, records: &[Record]) -> Result<usize, VextraError> {
        if records.is_empty() {
            return Err(VextraError::validation("upsert batch must be non-empty"));
        }
        self.with_latency(records.len(), || self.store.upsert(collection, records))
    }

    fn fetch(&self, collection: &str, ids: &[RecordId]) -> Result<Vec<Record>, VextraError> {
        self.with_latency(ids.len(), || self.store.fetch(collection, ids))
    }

    fn delete(&self, collection: &str, ids: &[RecordId]) -> Result<usize, VextraError> {
        self.with_latency(ids.len(), || self.store.delete(collection, ids))
    }

    fn query(
        &self,
        collection: &str,
        vector: &[f64],
        top_k: usize,
        filter: &FilterAst,
        _provider_params: Option<&ProviderParams>,
    ) -> Result<Vec<QueryResult>, VextraError> {
        self.with_latency(top_k, || self.store.query(collection, vector, top_k, filter))
    }
}
