//! Pinecone emitter: MongoDB-style nested JSON.
//!
//! Pinecone has no general NOT, so negations are pushed to the leaves
//! first; the output is then exactly the canonical serialized form of the
//! rewritten AST.

use crate::error::VextraError;
use crate::filter::{push_negations, serialize_filter, FilterAst};
use crate::transpile::NativeFilter;

pub fn transpile_pinecone(ast: &FilterAst) -> Result<NativeFilter, VextraError> {
    let not_free = push_negations(ast)?;
    Ok(NativeFilter::Pinecone(serialize_filter(&not_free)))
}
