//! Reference evaluator for the filter language. This is the semantic
//! ground truth the transpilers are checked against.
//!
//! Semantics:
//! - `MatchAll` is true for every payload; an absent payload is an empty map.
//! - A comparison on a field absent from the payload is false for every
//!   operator, including `ne` and `nin` (the missing-field rule).
//! - `eq` compares numerics across int/float, otherwise within one kind;
//!   values of different kinds are never equal. `ne` on a present field is
//!   the negation of `eq`, so a present value of a different kind satisfies
//!   `ne`.
//! - Ordering operators require a numeric payload value; anything else is
//!   false.
//! - `in`/`nin` test scalar membership in the literal list; `nin` on a
//!   present field means not-in.
//! - List-valued payload fields satisfy no comparison.

use crate::filter::ast::{CompareOp, FilterAst, Literal};
use crate::model::{Payload, PayloadValue, ScalarValue};

/// Evaluate a filter against a payload. Total over valid ASTs.
pub fn evaluate_filter(ast: &FilterAst, payload: Option<&Payload>) -> bool {
    match ast {
        FilterAst::MatchAll => true,
        FilterAst::And(children) => children.iter().all(|c| evaluate_filter(c, payload)),
        FilterAst::Or(children) => children.iter().any(|c| evaluate_filter(c, payload)),
        FilterAst::Not(child) => !evaluate_filter(child, payload),
        FilterAst::Compare { field, op, literal } => {
            let value = payload.and_then(|p| p.get(field.as_str()));
            let scalar = match value {
                Some(PayloadValue::Scalar(s)) => s,
                // Missing fields and list-valued fields fail every predicate.
                Some(PayloadValue::List(_)) | None => return false,
            };
            compare(scalar, *op, literal)
        }
    }
}

fn compare(value: &ScalarValue, op: CompareOp, literal: &Literal) -> bool {
    match (op, literal) {
        (CompareOp::Eq, Literal::Scalar(lit)) => value.filter_eq(lit),
        (CompareOp::Ne, Literal::Scalar(lit)) => !value.filter_eq(lit),
        (CompareOp::In, Literal::List(items)) => items.iter().any(|lit| value.filter_eq(lit)),
        (CompareOp::Nin, Literal::List(items)) => !items.iter().any(|lit| value.filter_eq(lit)),
        (op, Literal::Scalar(lit)) if op.is_ordering() => match value.numeric_cmp(lit) {
            Some(ordering) => match op {
                CompareOp::Gt => ordering.is_gt(),
                CompareOp::Gte => ordering.is_ge(),
                CompareOp::Lt => ordering.is_lt(),
                CompareOp::Lte => ordering.is_le(),
                _ => unreachable!(),
            },
            None => false,
        },
        // Operator/literal shape mismatches cannot be built by the parser;
        // treat them as non-matching rather than panicking.
        _ => false,
    }
}
