//! Contract tests for the reference backend: exact k-NN against an
//! independent exhaustive-scan oracle, pre-filter correctness, CRUD
//! round-trips, snapshot persistence, and concurrent use.

mod common;

use std::sync::Arc;

use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;

use common::random_case;
use vextra::adapter::{snapshot_load, snapshot_save, MemoryStore, VectorAdapter};
use vextra::filter::{evaluate_filter, FilterAst};
use vextra::model::{CollectionSpec, MetricKind, Payload, PayloadValue, Record, RecordId};

// ---------------------------------------------------------------------------
// Independent exhaustive-scan oracle
// ---------------------------------------------------------------------------

/// Rank records by the native metric directly (no normalization), in the
/// metric's own "better" direction, with ascending-id tie-breaks.
fn oracle_top_k(
    records: &[Record],
    metric: MetricKind,
    query: &[f64],
    top_k: usize,
    filter: Option<&FilterAst>,
) -> Vec<RecordId> {
    let mut scored: Vec<(f64, RecordId)> = records
        .iter()
        .filter(|r| match filter {
            Some(ast) => evaluate_filter(ast, r.payload.as_ref()),
            None => true,
        })
        .map(|r| {
            let score = match metric {
                MetricKind::Euclidean => query
                    .iter()
                    .zip(&r.vector)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt(),
                MetricKind::DotProduct => {
                    query.iter().zip(&r.vector).map(|(a, b)| a * b).sum::<f64>()
                }
                MetricKind::Cosine => {
                    let dot: f64 = query.iter().zip(&r.vector).map(|(a, b)| a * b).sum();
                    let nq = query.iter().map(|x| x * x).sum::<f64>().sqrt();
                    let nr = r.vector.iter().map(|x| x * x).sum::<f64>().sqrt();
                    dot / (nq * nr)
                }
            };
            (score, r.id.clone())
        })
        .collect();
    scored.sort_by(|(sa, ia), (sb, ib)| {
        let by_score = match metric {
            MetricKind::Euclidean => sa.partial_cmp(sb).unwrap(),
            _ => sb.partial_cmp(sa).unwrap(),
        };
        by_score.then_with(|| ia.cmp(ib))
    });
    scored.truncate(top_k);
    scored.into_iter().map(|(_, id)| id).collect()
}

fn random_records(rng: &mut ChaCha8Rng, count: usize, dim: usize) -> Vec<Record> {
    (0..count)
        .map(|i| {
            let vector: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut payload = Payload::new();
            payload.insert(
                "category".into(),
                PayloadValue::Scalar(["a", "b", "c", "d", "e"][rng.gen_range(0..5)].into()),
            );
            payload.insert(
                "year".into(),
                PayloadValue::Scalar((2018 + rng.gen_range(0..8) as i64).into()),
            );
            Record::new(i as i64, vector).with_payload(payload)
        })
        .collect()
}

#[test]
fn knn_matches_exhaustive_scan_for_all_metrics() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let dim = 25;
    for round in 0..12 {
        for metric in [MetricKind::Cosine, MetricKind::Euclidean, MetricKind::DotProduct] {
            let store = MemoryStore::new();
            store
                .create_collection(&CollectionSpec::new("c", dim, metric))
                .unwrap();
            let count = rng.gen_range(50..400);
            let records = random_records(&mut rng, count, dim);
            store.upsert("c", &records).unwrap();

            let query: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let top_k = rng.gen_range(1..20);
            let got: Vec<RecordId> = store
                .query("c", &query, top_k, &FilterAst::MatchAll)
                .unwrap()
                .into_iter()
                .map(|r| r.id)
                .collect();
            let expected = oracle_top_k(&records, metric, &query, top_k, None);
            assert_eq!(got, expected, "round {round} metric {metric:?}");
        }
    }
}

#[test]
fn filtered_knn_equals_oracle_restricted_to_matching_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let dim = 25;
    for _ in 0..40 {
        let store = MemoryStore::new();
        store
            .create_collection(&CollectionSpec::new("c", dim, MetricKind::Euclidean))
            .unwrap();
        let records = random_records(&mut rng, 200, dim);
        store.upsert("c", &records).unwrap();

        let (gen, ast) = random_case(&mut rng, true);
        let _ = gen;
        let query: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let got: Vec<RecordId> = store
            .query("c", &query, 10, &ast)
            .unwrap()
            .into_iter()
            .map(|r| r.id)
            .collect();
        let expected = oracle_top_k(&records, MetricKind::Euclidean, &query, 10, Some(&ast));
        assert_eq!(got, expected, "filter {ast:?}");
    }
}

#[test]
fn scores_are_normalized_and_sorted() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for metric in [MetricKind::Cosine, MetricKind::Euclidean, MetricKind::DotProduct] {
        let store = MemoryStore::new();
        store
            .create_collection(&CollectionSpec::new("c", 25, metric))
            .unwrap();
        store.upsert("c", &random_records(&mut rng, 300, 25)).unwrap();
        let query: Vec<f64> = (0..25).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let results = store.query("c", &query, 300, &FilterAst::MatchAll).unwrap();
        for window in results.windows(2) {
            assert!(window[0].similarity_score >= window[1].similarity_score);
        }
        for r in &results {
            assert!((0.0..=1.0).contains(&r.similarity_score), "{r:?}");
        }
    }
}

// ---------------------------------------------------------------------------
// CRUD round-trips
// ---------------------------------------------------------------------------

#[test]
fn upsert_fetch_round_trip_preserves_records() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let store = MemoryStore::new();
    store
        .create_collection(&CollectionSpec::new("c", 25, MetricKind::Cosine))
        .unwrap();
    let records = random_records(&mut rng, 50, 25);
    store.upsert("c", &records).unwrap();
    let ids: Vec<RecordId> = records.iter().map(|r| r.id.clone()).collect();
    let fetched = store.fetch("c", &ids).unwrap();
    assert_eq!(fetched, records);
}

#[test]
fn deleted_ids_never_appear_in_queries() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let store = MemoryStore::new();
    store
        .create_collection(&CollectionSpec::new("c", 25, MetricKind::Euclidean))
        .unwrap();
    let records = random_records(&mut rng, 100, 25);
    store.upsert("c", &records).unwrap();
    let victims: Vec<RecordId> = records.iter().take(30).map(|r| r.id.clone()).collect();
    assert_eq!(store.delete("c", &victims).unwrap(), 30);
    let query: Vec<f64> = (0..25).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let results = store.query("c", &query, 100, &FilterAst::MatchAll).unwrap();
    for result in results {
        assert!(!victims.contains(&result.id));
    }
}

// ---------------------------------------------------------------------------
// Snapshots
// ---------------------------------------------------------------------------

#[test]
fn snapshot_round_trip_preserves_store() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("store.json");

    let store = MemoryStore::new();
    store
        .create_collection(&CollectionSpec::new("first", 25, MetricKind::Cosine))
        .unwrap();
    store
        .create_collection(&CollectionSpec::new("second", 4, MetricKind::Euclidean))
        .unwrap();
    store.upsert("first", &random_records(&mut rng, 10, 25)).unwrap();
    store
        .upsert(
            "second",
            &[
                Record::new("s1", vec![1.0, 2.0, 3.0, 4.0]),
                Record::new(7, vec![0.0, 0.0, 0.0, 0.5]),
            ],
        )
        .unwrap();

    snapshot_save(&store, &path).unwrap();
    let loaded = snapshot_load(&path).unwrap();

    assert_eq!(loaded.list_collections(), store.list_collections());
    for name in store.list_collections() {
        assert_eq!(
            loaded.collection_spec(&name).unwrap(),
            store.collection_spec(&name).unwrap()
        );
        assert_eq!(
            loaded.row_count(&name).unwrap(),
            store.row_count(&name).unwrap()
        );
    }

    // Identical stores produce identical bytes.
    let second_path = dir.path().join("again.json");
    snapshot_save(&loaded, &second_path).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&second_path).unwrap()
    );
}

#[test]
fn empty_store_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.json");
    snapshot_save(&MemoryStore::new(), &path).unwrap();
    let loaded = snapshot_load(&path).unwrap();
    assert!(loaded.list_collections().is_empty());
}

#[test]
fn truncated_snapshot_is_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, br#"{"collections":[{"spec":{"name":"c""#).unwrap();
    let err = snapshot_load(&path).err().expect("must fail");
    assert_eq!(err.code, vextra::ErrorCode::Validation);
}

#[test]
fn missing_snapshot_is_connection_error() {
    let err = snapshot_load(std::path::Path::new("/nonexistent/store.json"))
        .err()
        .expect("must fail");
    assert_eq!(err.code, vextra::ErrorCode::Connection);
}

// ---------------------------------------------------------------------------
// Concurrency
// ---------------------------------------------------------------------------

#[test]
fn concurrent_writers_and_readers_on_one_collection() {
    let store = Arc::new(MemoryStore::new());
    store
        .create_collection(&CollectionSpec::new("c", 4, MetricKind::Euclidean))
        .unwrap();

    let mut handles = Vec::new();
    for worker in 0..4i64 {
        let store = Arc::clone(&store);
        handles.push(std::thread::spawn(move || {
            for i in 0..50 {
                let id = worker * 1000 + i;
                let record = Record::new(id, vec![worker as f64, i as f64, 0.0, 1.0]);
                store.upsert("c", &[record]).unwrap();
                let results = store
                    .query("c", &[0.0, 0.0, 0.0, 1.0], 5, &FilterAst::MatchAll)
                    .unwrap();
                assert!(results.len() <= 5);
            }
        }));
    }
    for handle in handles {
        handle.join().unwrap();
    }
    assert_eq!(store.row_count("c").unwrap(), 200);
}

#[test]
fn adapter_trait_object_is_shareable() {
    let adapter: Arc<dyn VectorAdapter> = Arc::new(vextra::adapter::MemoryAdapter::new("memory"));
    adapter
        .create_collection(&CollectionSpec::new("c", 2, MetricKind::Cosine), None)
        .unwrap();
    let mut handles = Vec::new();
    for worker in 0..4i64 {
        let adapter = Arc::clone(&adapter);
        handles.push(std::thread::spawn(move || {
            adapter
                .upsert("c", &[Record::new(worker, vec![1.0, worker as f64])])
                .unwrap();
        }));
    }
    for handle in handles {
        handle.join().unwrap();
    }
    assert_eq!(adapter.list_collections().unwrap(), vec!["c"]);
}
