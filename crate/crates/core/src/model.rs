//! Canonical data model: records, collections, metrics, and query results.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::VextraError;
use crate::Vector;

/// Record identifier: a string or an integer.
///
/// Ordering is total so result ties can be broken deterministically:
/// integers compare numerically, strings lexicographically, and every
/// integer orders before every string.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RecordId {
    Int(i64),
    Str(String),
}

impl Ord for RecordId {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (RecordId::Int(a), RecordId::Int(b)) => a.cmp(b),
            (RecordId::Str(a), RecordId::Str(b)) => a.cmp(b),
            (RecordId::Int(_), RecordId::Str(_)) => Ordering::Less,
            (RecordId::Str(_), RecordId::Int(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for RecordId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RecordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordId::Int(n) => write!(f, "{n}"),
            RecordId::Str(s) => f.write_str(s),
        }
    }
}

impl From<&str> for RecordId {
    fn from(s: &str) -> Self {
        RecordId::Str(s.to_string())
    }
}

impl From<i64> for RecordId {
    fn from(n: i64) -> Self {
        RecordId::Int(n)
    }
}

/// A scalar payload or filter-literal value.
///
/// JSON integers and floats are kept distinct so that transpilers which
/// care about the difference (Weaviate's valueInt/valueNumber) can tell
/// them apart. Filter comparisons treat `Int` and `Float` as one numeric
/// kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

impl ScalarValue {
    pub fn is_numeric(&self) -> bool {
        matches!(self, ScalarValue::Int(_) | ScalarValue::Float(_))
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ScalarValue::Int(n) => Some(*n as f64),
            ScalarValue::Float(x) => Some(*x),
            _ => None,
        }
    }

    /// Equality as used by filter predicates: integers and floats compare
    /// numerically across the two representations, everything else compares
    /// within its own kind. Values of different kinds are never equal.
    pub fn filter_eq(&self, other: &ScalarValue) -> bool {
        match (self, other) {
            (ScalarValue::Int(a), ScalarValue::Int(b)) => a == b,
            (ScalarValue::Bool(a), ScalarValue::Bool(b)) => a == b,
            (ScalarValue::Str(a), ScalarValue::Str(b)) => a == b,
            _ => match (self.as_f64(), other.as_f64()) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
        }
    }

    /// Numeric ordering for range predicates; `None` when either side is
    /// not numeric.
    pub fn numeric_cmp(&self, other: &ScalarValue) -> Option<Ordering> {
        match (self, other) {
            (ScalarValue::Int(a), ScalarValue::Int(b)) => Some(a.cmp(b)),
            _ => {
                let a = self.as_f64()?;
                let b = other.as_f64()?;
                a.partial_cmp(&b)
            }
        }
    }
}

impl From<&str> for ScalarValue {
    fn from(s: &str) -> Self {
        ScalarValue::Str(s.to_string())
    }
}

impl From<i64> for ScalarValue {
    fn from(n: i64) -> Self {
        ScalarValue::Int(n)
    }
}

impl From<f64> for ScalarValue {
    fn from(x: f64) -> Self {
        ScalarValue::Float(x)
    }
}

impl From<bool> for ScalarValue {
    fn from(b: bool) -> Self {
        ScalarValue::Bool(b)
    }
}

/// A payload value: a scalar or a homogeneous list of scalars.
///
/// Nested maps are not representable, so they are rejected at
/// deserialization time rather than by a later validation pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PayloadValue {
    Scalar(ScalarValue),
    List(Vec<ScalarValue>),
}

/// Key-value metadata stored alongside a vector. A `BTreeMap` keeps key
/// order deterministic in snapshots and CLI output.
pub type Payload = BTreeMap<String, PayloadValue>;

/// The unit of storage: an id, a dense vector, and optional metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub id: RecordId,
    pub vector: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Payload>,
}

impl Record {
    pub fn new(id: impl Into<RecordId>, vector: Vector) -> Self {
        Self {
            id: id.into(),
            vector,
            payload: None,
        }
    }

    pub fn with_payload(mut self, payload: Payload) -> Self {
        self.payload = Some(payload);
        self
    }
}

/// Distance metric of a collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Cosine,
    Euclidean,
    DotProduct,
}

/// Whether larger or smaller raw scores mean "closer" under a metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    HigherBetter,
    LowerBetter,
}

impl MetricKind {
    /// Cosine and dot product similarities improve upward; euclidean
    /// distance improves downward.
    pub fn direction(self) -> Direction {
        match self {
            MetricKind::Cosine | MetricKind::DotProduct => Direction::HigherBetter,
            MetricKind::Euclidean => Direction::LowerBetter,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Cosine => "cosine",
            MetricKind::Euclidean => "euclidean",
            MetricKind::DotProduct => "dotproduct",
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = VextraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cosine" => Ok(MetricKind::Cosine),
            "euclidean" => Ok(MetricKind::Euclidean),
            "dotproduct" => Ok(MetricKind::DotProduct),
            other => Err(VextraError::validation(format!(
                "unknown metric {other:?}; expected cosine, euclidean, or dotproduct"
            ))),
        }
    }
}

/// Definition of a collection: name, vector dimension, and metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollectionSpec {
    pub name: String,
    pub dimension: usize,
    pub metric: MetricKind,
}

impl CollectionSpec {
    pub fn new(name: impl Into<String>, dimension: usize, metric: MetricKind) -> Self {
        Self {
            name: name.into(),
            dimension,
            metric,
        }
    }

    pub fn validate(&self) -> Result<(), VextraError> {
        if self.name.is_empty() {
            return Err(VextraError::validation("collection name must be non-empty"));
        }
        if self.dimension == 0 {
            return Err(VextraError::validation(
                "collection dimension must be at least 1",
            ));
        }
        Ok(())
    }
}

/// One search hit, with the score normalized into [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    pub id: RecordId,
    /// Normalized score in [0, 1]; higher is always more similar.
    pub similarity_score: f64,
    /// Native metric value before normalization.
    pub raw_score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Payload>,
}

/// Sort results by descending similarity, breaking ties by ascending id.
pub fn sort_results(results: &mut [QueryResult]) {
    results.sort_by(|a, b| {
        b.similarity_score
            .partial_cmp(&a.similarity_score)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.id.cmp(&b.id))
    });
}

/// Check every record invariant plus the dimension against the collection
/// spec. Pure and side-effect free.
pub fn validate_record(record: &Record, spec: &CollectionSpec) -> Result<(), VextraError> {
    if let RecordId::Str(s) = &record.id {
        if s.is_empty() {
            return Err(VextraError::validation("record id must be non-empty"));
        }
    }
    if record.vector.is_empty() {
        return Err(VextraError::validation(format!(
            "record {} has an empty vector",
            record.id
        )));
    }
    if let Some(bad) = record.vector.iter().find(|c| !c.is_finite()) {
        return Err(VextraError::validation(format!(
            "record {} has a non-finite vector component {bad}",
            record.id
        )));
    }
    if record.vector.len() != spec.dimension {
        return Err(VextraError::schema(format!(
            "record {} has dimension {}, collection {:?} expects {}",
            record.id,
            record.vector.len(),
            spec.name,
            spec.dimension
        )));
    }
    if let Some(payload) = &record.payload {
        for (key, value) in payload {
            if key.is_empty() {
                return Err(VextraError::validation(format!(
                    "record {} has an empty payload key",
                    record.id
                )));
            }
            if let PayloadValue::List(items) = value {
                validate_list_homogeneity(&record.id, key, items)?;
            }
        }
    }
    Ok(())
}

/// Lists may hold strings or numbers, never booleans, and may not mix the
/// two classes. Integers and floats count as one numeric class.
fn validate_list_homogeneity(
    id: &RecordId,
    key: &str,
    items: &[ScalarValue],
) -> Result<(), VextraError> {
    let mut saw_string = false;
    let mut saw_number = false;
    for item in items {
        match item {
            ScalarValue::Str(_) => saw_string = true,
            ScalarValue::Int(_) | ScalarValue::Float(_) => saw_number = true,
            ScalarValue::Bool(_) => {
                return Err(VextraError::validation(format!(
                    "record {id} payload key {key:?}: lists may only hold strings or numbers"
                )));
            }
        }
    }
    if saw_string && saw_number {
        return Err(VextraError::validation(format!(
            "record {id} payload key {key:?}: list mixes strings and numbers"
        )));
    }
    Ok(())
}
