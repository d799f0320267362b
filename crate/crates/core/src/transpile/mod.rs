//! Backend-specific filter emitters.
//!
//! Each transpiler walks the universal [`FilterAst`] and produces the
//! target's native filter artifact. The interpreters in [`interpret`] run
//! those artifacts against payloads and serve as independent oracles that
//! transpilation preserves the filter's meaning.

pub mod interpret;
pub mod milvus;
pub mod pinecone;
pub mod qdrant;
pub mod weaviate;

use std::str::FromStr;

use crate::error::VextraError;
use crate::filter::FilterAst;

pub use interpret::interpret_native;
pub use milvus::transpile_milvus;
pub use pinecone::transpile_pinecone;
pub use qdrant::transpile_qdrant;
pub use weaviate::{transpile_weaviate, WhereLeaf, WhereNode, WhereOperator, WhereValueKey};

/// Supported transpilation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Pinecone,
    Weaviate,
    Qdrant,
    Milvus,
}

impl Target {
    pub fn name(self) -> &'static str {
        match self {
            Target::Pinecone => "pinecone",
            Target::Weaviate => "weaviate",
            Target::Qdrant => "qdrant",
            Target::Milvus => "milvus",
        }
    }
}

impl FromStr for Target {
    type Err = VextraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pinecone" => Ok(Target::Pinecone),
            "weaviate" => Ok(Target::Weaviate),
            "qdrant" => Ok(Target::Qdrant),
            "milvus" => Ok(Target::Milvus),
            other => Err(VextraError::validation(format!(
                "unknown target {other:?}; expected pinecone, weaviate, qdrant, or milvus"
            ))),
        }
    }
}

/// A filter in one backend's native form.
#[derive(Debug, Clone, PartialEq)]
pub enum NativeFilter {
    /// MongoDB-style nested JSON document.
    Pinecone(serde_json::Value),
    /// Structured where-tree plus its rendered GraphQL-argument text.
    /// `MatchAll` has no tree and renders to the empty string.
    Weaviate {
        tree: Option<WhereNode>,
        text: String,
    },
    /// JSON document with must/should/must_not conditions.
    Qdrant(serde_json::Value),
    /// Boolean-expression string.
    Milvus(String),
}

impl NativeFilter {
    pub fn target(&self) -> Target {
        match self {
            NativeFilter::Pinecone(_) => Target::Pinecone,
            NativeFilter::Weaviate { .. } => Target::Weaviate,
            NativeFilter::Qdrant(_) => Target::Qdrant,
            NativeFilter::Milvus(_) => Target::Milvus,
        }
    }
}

/// Transpile an AST for the given target.
pub fn transpile(target: Target, ast: &FilterAst) -> Result<NativeFilter, VextraError> {
    match target {
        Target::Pinecone => transpile_pinecone(ast),
        Target::Weaviate => transpile_weaviate(ast),
        Target::Qdrant => transpile_qdrant(ast),
        Target::Milvus => transpile_milvus(ast),
    }
}
