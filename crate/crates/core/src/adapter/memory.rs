//! Brute-force in-memory reference backend with snapshot persistence.
//!
//! Queries use pre-filter semantics: the metadata filter selects candidate
//! rows first, then an exact scan scores every candidate, so top-k always
//! means "the k best among matching rows".
//!
//! Concurrency follows a per-collection readers/writer discipline: queries
//! and fetches on one collection proceed concurrently, writes exclude each
//! other per collection, and collection management takes the outer lock.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use parking_lot::{Mutex, RwLock};
use serde::{Deserialize, Serialize};

use crate::adapter::{ProviderParams, VectorAdapter};
use crate::error::VextraError;
use crate::filter::{evaluate_filter, FilterAst};
use crate::metric::{normalize_score, raw_score};
use crate::model::{
    sort_results, validate_record, CollectionSpec, QueryResult, Record, RecordId,
};

struct CollectionCell {
    spec: CollectionSpec,
    rows: RwLock<BTreeMap<RecordId, Record>>,
}

/// Named collections of validated records.
pub struct MemoryStore {
    collections: RwLock<BTreeMap<String, Arc<CollectionCell>>>,
}

impl MemoryStore {
    pub fn new() -> Self {
        Self {
            collections: RwLock::new(BTreeMap::new()),
        }
    }

    fn cell(&self, name: &str) -> Result<Arc<CollectionCell>, VextraError> {
        self.collections
            .read()
            .get(name)
            .cloned()
            .ok_or_else(|| VextraError::not_found(format!("no such collection {name:?}")))
    }

    pub fn create_collection(&self, spec: &CollectionSpec) -> Result<(), VextraError> {
        spec.validate()?;
        let mut collections = self.collections.write();
        if collections.contains_key(&spec.name) {
            return Err(VextraError::schema(format!(
                "collection {:?} already exists",
                spec.name
            )));
        }
        collections.insert(
            spec.name.clone(),
            Arc::new(CollectionCell {
                spec: spec.clone(),
                rows: RwLock::new(BTreeMap::new()),
            }),
        );
        Ok(())
    }

    pub fn delete_collection(&self, name: &str) -> Result<(), VextraError> {
        self.collections
            .write()
            .remove(name)
            .map(|_| ())
            .ok_or_else(|| VextraError::not_found(format!("no such collection {name:?}")))
    }

    pub fn list_collections(&self) -> Vec<String> {
        self.collections.read().keys().cloned().collect()
    }

    pub fn collection_spec(&self, name: &str) -> Result<CollectionSpec, VextraError> {
        Ok(self.cell(name)?.spec.clone())
    }

    /// Insert or replace a batch. Validation failures reject the whole
    /// batch atomically; re-applying the same batch leaves the store
    /// unchanged.
    pub fn upsert(&self, collection: &str, records: &[Record]) -> Result<usize, VextraError> {
        if records.is_empty() {
            return Err(VextraError::validation("upsert batch must be non-empty"));
        }
        let cell = self.cell(collection)?;
        for record in records {
            validate_record(record, &cell.spec)?;
        }
        let mut rows = cell.rows.write();
        for record in records {
            rows.insert(record.id.clone(), record.clone());
        }
        Ok(records.len())
    }

    /// Records for the found ids, in request order; absent ids are omitted.
    pub fn fetch(&self, collection: &str, ids: &[RecordId]) -> Result<Vec<Record>, VextraError> {
        let cell = self.cell(collection)?;
        let rows = cell.rows.read();
        Ok(ids.iter().filter_map(|id| rows.get(id).cloned()).collect())
    }

    /// Remove the listed ids, ignoring absent ones; returns the count
    /// actually removed.
    pub fn delete(&self, collection: &str, ids: &[RecordId]) -> Result<usize, VextraError> {
        let cell = self.cell(collection)?;
        let mut rows = cell.rows.write();
        Ok(ids.iter().filter(|id| rows.remove(id).is_some()).count())
    }

    /// Pre-filter exact search: filter, score every candidate, normalize,
    /// sort by score descending with ascending-id tie-breaks, truncate.
    pub fn query(
        &self,
        collection: &str,
        vector: &[f64],
        top_k: usize,
        filter: &FilterAst,
    ) -> Result<Vec<QueryResult>, VextraError> {
        if top_k < 1 {
            return Err(VextraError::validation("top_k must be at least 1"));
        }
        let cell = self.cell(collection)?;
        if vector.len() != cell.spec.dimension {
            return Err(VextraError::schema(format!(
                "query vector has dimension {}, collection {:?} expects {}",
                vector.len(),
                collection,
                cell.spec.dimension
            )));
        }
        let metric = cell.spec.metric;
        let rows = cell.rows.read();
        let mut results = Vec::new();
        for record in rows.values() {
            if !evaluate_filter(filter, record.payload.as_ref()) {
                continue;
            }
            let raw = raw_score(metric, vector, &record.vector)?;
            let similarity = normalize_score(metric, raw)?;
            results.push(QueryResult {
                id: record.id.clone(),
                similarity_score: similarity,
                raw_score: raw,
                payload: record.payload.clone(),
            });
        }
        drop(rows);
        sort_results(&mut results);
        results.truncate(top_k);
        Ok(results)
    }

    pub fn row_count(&self, collection: &str) -> Result<usize, VextraError> {
        Ok(self.cell(collection)?.rows.read().len())
    }
}

impl Default for MemoryStore {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Serialize, Deserialize)]
struct SnapshotCollection {
    spec: CollectionSpec,
    records: Vec<Record>,
}

#[derive(Serialize, Deserialize)]
struct Snapshot {
    collections: Vec<SnapshotCollection>,
}

/// Write the store to disk as a single JSON document, atomically via a
/// temporary file and rename. Collections sort by name and records by id,
/// so identical stores produce identical bytes.
pub fn snapshot_save(store: &MemoryStore, path: &Path) -> Result<(), VextraError> {
    let collections = store.collections.read();
    let snapshot = Snapshot {
        collections: collections
            .values()
            .map(|cell| SnapshotCollection {
                spec: cell.spec.clone(),
                records: cell.rows.read().values().cloned().collect(),
            })
            .collect(),
    };
    drop(collections);
    let bytes = serde_json::to_vec(&snapshot)
        .map_err(|e| VextraError::internal(format!("snapshot encoding failed: {e}")))?;
    let tmp = path.with_extension("tmp");
    let io_err = |e: std::io::Error| {
        VextraError::connection(format!("snapshot write to {} failed: {e}", path.display()))
    };
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)?;
    Ok(())
}

/// Load a snapshot written by [`snapshot_save`], re-validating every record
/// against its collection spec.
pub fn snapshot_load(path: &Path) -> Result<MemoryStore, VextraError> {
    let bytes = fs::read(path).map_err(|e| {
        VextraError::connection(format!("snapshot read from {} failed: {e}", path.display()))
    })?;
    let snapshot: Snapshot = serde_json::from_slice(&bytes)
        .map_err(|e| VextraError::validation(format!("corrupt snapshot: {e}")))?;
    let store = MemoryStore::new();
    for collection in snapshot.collections {
        store.create_collection(&collection.spec)?;
        if !collection.records.is_empty() {
            store.upsert(&collection.spec.name, &collection.records)?;
        }
    }
    Ok(store)
}

/// The in-memory reference adapter. With a persist path it reloads the
/// snapshot on startup and rewrites it after every successful mutation.
pub struct MemoryAdapter {
    provider: String,
    store: MemoryStore,
    persist_path: Option<PathBuf>,
    persist_lock: Mutex<()>,
}

impl MemoryAdapter {
    pub fn new(provider: impl Into<String>) -> Self {
        Self {
            provider: provider.into(),
            store: MemoryStore::new(),
            persist_path: None,
            persist_lock: Mutex::new(()),
        }
    }

    pub fn with_persistence(
        provider: impl Into<String>,
        path: PathBuf,
    ) -> Result<Self, VextraError> {
        let store = if path.exists() {
            snapshot_load(&path)?
        } else {
            MemoryStore::new()
        };
        Ok(Self {
            provider: provider.into(),
            store,
            persist_path: Some(path),
            persist_lock: Mutex::new(()),
        })
    }

    pub fn store(&self) -> &MemoryStore {
        &self.store
    }

    fn persist(&self) -> Result<(), VextraError> {
        if let Some(path) = &self.persist_path {
            let _guard = self.persist_lock.lock();
            snapshot_save(&self.store, path)?;
        }
        Ok(())
    }
}

impl VectorAdapter for MemoryAdapter {
    fn provider(&self) -> &str {
        &self.provider
    }

    fn create_collection(
        &self,
        spec: &CollectionSpec,
        _provider_params: Option<&ProviderParams>,
    ) -> Result<(), VextraError> {
        self.store.create_collection(spec)?;
        self.persist()
    }

    fn delete_collection(&self, name: &str) -> Result<(), VextraError> {
        self.store.delete_collection(name)?;
        self.persist()
    }

    fn list_collections(&self) -> Result<Vec<String>, VextraError> {
        Ok(self.store.list_collections())
    }

    fn upsert(&self, collection: &str, records: &[Record]) -> Result<usize, VextraError> {
        let written = self.store.upsert(collection, records)?;
        self.persist()?;
        Ok(written)
    }

    fn fetch(&self, collection: &str, ids: &[RecordId]) -> Result<Vec<Record>, VextraError> {
        self.store.fetch(collection, ids)
    }

    fn delete(&self, collection: &str, ids: &[RecordId]) -> Result<usize, VextraError> {
        let removed = self.store.delete(collection, ids)?;
        self.persist()?;
        Ok(removed)
    }

    fn query(
        &self,
        collection: &str,
        vector: &[f64],
        top_k: usize,
        filter: &FilterAst,
        _provider_params: Option<&ProviderParams>,
    ) -> Result<Vec<QueryResult>, VextraError> {
        self.store.query(collection, vector, top_k, filter)
    }
}
