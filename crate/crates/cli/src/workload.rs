//! Seeded workload generation for the benchmark harness. The same seed
//! always yields the same record and query sequences, so the direct and
//! middleware modes replay identical workloads.

use rand::{Rng as _, SeedableRng as _};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use vextra::model::{Payload, PayloadValue, Record};

pub const CATEGORIES: [&str; 5] = ["a", "b", "c", "d", "e"];

/// Deterministic records with ids `0..count`, random unit-range vectors,
/// and a `category`/`year` payload.
pub fn records(seed: u64, count: usize, dimension: usize) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let vector: Vec<f64> = (0..dimension).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut payload = Payload::new();
            payload.insert(
                "category".into(),
                PayloadValue::Scalar(CATEGORIES[rng.gen_range(0..CATEGORIES.len())].into()),
            );
            payload.insert(
                "year".into(),
                PayloadValue::Scalar((2018 + rng.gen_range(0..8) as i64).into()),
            );
            Record::new(i as i64, vector).with_payload(payload)
        })
        .collect()
}

/// Deterministic query vectors.
pub fn query_vectors(seed: u64, count: usize, dimension: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..dimension).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

/// The filtered-query benchmark condition: one metadata key matching one of
/// five possible values.
pub fn five_value_in_filter() -> serde_json::Value {
    json!({ "category": { "$in": CATEGORIES } })
}
