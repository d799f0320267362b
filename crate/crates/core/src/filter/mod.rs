//! The unified metadata-filter language: grammar, parser, canonical
//! serializer, negation pushdown, and the reference evaluator.

pub mod ast;
pub mod eval;
pub mod negate;
pub mod parse;
pub mod serialize;

pub use ast::{CompareOp, FilterAst, Literal};
pub use eval::evaluate_filter;
pub use negate::push_negations;
pub use parse::parse_filter;
pub use serialize::serialize_filter;
