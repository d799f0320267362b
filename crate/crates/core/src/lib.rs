//! Vextra: one API and one metadata-filter language for heterogeneous
//! vector databases.
//!
//! The crate is organized around a compiler-inspired translation path:
//! filter documents parse into a universal AST ([`filter`]), per-backend
//! transpilers emit native filter artifacts ([`transpile`]), adapters
//! implement a common storage/search contract ([`adapter`]), and the
//! [`client::UnifiedClient`] facade ties it together behind one API with a
//! canonical error taxonomy ([`error`]).
//!
//! ```
//! use vextra::adapter::{default_registry, ClientConfig};
//! use vextra::model::{MetricKind, Record};
//! use vextra::UnifiedClient;
//!
//! let client = UnifiedClient::connect(
//!     &ClientConfig::for_provider("memory"),
//!     &default_registry(),
//! )
//! .unwrap();
//! client
//!     .create_collection("docs", 2, MetricKind::Cosine, None)
//!     .unwrap();
//! client
//!     .upsert("docs", &[Record::new("a1", vec![0.1, 0.2])])
//!     .unwrap();
//! let hits = client.query("docs", &[0.1, 0.2], 10, None, None).unwrap();
//! assert_eq!(hits[0].id.to_string(), "a1");
//! ```

pub mod adapter;
pub mod client;
pub mod error;
pub mod filter;
pub mod metric;
pub mod model;
pub mod scalar;
pub mod transpile;

/// Stored vectors are 64-bit floats end to end.
pub type Vector = Vec<f64>;

pub use client::{map_error, UnifiedClient};
pub use error::{ErrorCode, UnifiedError, VextraError};
pub use filter::{evaluate_filter, parse_filter, push_negations, serialize_filter, FilterAst};
pub use model::{CollectionSpec, MetricKind, Payload, QueryResult, Record, RecordId};
pub use transpile::{interpret_native, transpile, NativeFilter, Target};
