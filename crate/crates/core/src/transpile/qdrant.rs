//! Qdrant emitter: structured JSON with must/should/must_not conditions.
//!
//! Mapping: And maps to `must`, Or to `should`, Not to `must_not`; equality
//! to a `match`/`value` condition, `in` to `match`/`any`, ordering
//! operators to a `range` condition.
//!
//! `ne` and `nin` need care: a bare `must_not` also matches records that
//! lack the field entirely, while the filter language's missing-field rule
//! makes them fail there. Both therefore emit a presence guard alongside
//! the negated match, built from Qdrant's `is_empty` condition:
//! `{"must": [{"must_not": [match]}, {"must_not": [is_empty]}]}`.

use serde_json::{json, Map, Value};

use crate::error::VextraError;
use crate::filter::ast::{CompareOp, Literal};
use crate::filter::serialize::{literal_to_value, scalar_to_value};
use crate::filter::FilterAst;
use crate::transpile::NativeFilter;

pub fn transpile_qdrant(ast: &FilterAst) -> Result<NativeFilter, VextraError> {
    let body = match ast {
        FilterAst::MatchAll => Value::Object(Map::new()),
        // A bare comparison at the root is wrapped in a single-element
        // "must" unless it already transpiles to a filter object.
        FilterAst::Compare { .. } => {
            let cond = condition(ast);
            if is_filter_object(&cond) {
                cond
            } else {
                json!({ "must": [cond] })
            }
        }
        other => condition(other),
    };
    Ok(NativeFilter::Qdrant(body))
}

/// Emit a condition: either a field condition (`key` + `match`/`range`) or
/// a nested filter object (`must`/`should`/`must_not`).
fn condition(ast: &FilterAst) -> Value {
    match ast {
        // An empty nested filter matches everything; only reachable through
        // a parsed `{"$not": {}}`.
        FilterAst::MatchAll => Value::Object(Map::new()),
        FilterAst::And(children) => json!({ "must": conditions(children) }),
        FilterAst::Or(children) => json!({ "should": conditions(children) }),
        FilterAst::Not(child) => json!({ "must_not": [condition(child)] }),
        FilterAst::Compare { field, op, literal } => match op {
            CompareOp::Eq => match literal {
                Literal::Scalar(s) => json!({ "key": field, "match": { "value": scalar_to_value(s) } }),
                Literal::List(_) => unreachable!("eq carries a scalar literal"),
            },
            CompareOp::In => json!({ "key": field, "match": { "any": literal_to_value(literal) } }),
            CompareOp::Gt | CompareOp::Gte | CompareOp::Lt | CompareOp::Lte => {
                let bound = match op {
                    CompareOp::Gt => "gt",
                    CompareOp::Gte => "gte",
                    CompareOp::Lt => "lt",
                    CompareOp::Lte => "lte",
                    _ => unreachable!(),
                };
                json!({ "key": field, "range": { bound: literal_to_value(literal) } })
            }
            CompareOp::Ne => {
                let matcher = match literal {
                    Literal::Scalar(s) => json!({ "key": field, "match": { "value": scalar_to_value(s) } }),
                    Literal::List(_) => unreachable!("ne carries a scalar literal"),
                };
                negated_with_presence(field, matcher)
            }
            CompareOp::Nin => {
                let matcher = json!({ "key": field, "match": { "any": literal_to_value(literal) } });
                negated_with_presence(field, matcher)
            }
        },
    }
}

fn conditions(children: &[FilterAst]) -> Vec<Value> {
    children.iter().map(condition).collect()
}

fn negated_with_presence(field: &str, matcher: Value) -> Value {
    json!({
        "must": [
            { "must_not": [matcher] },
            { "must_not": [{ "is_empty": { "key": field } }] }
        ]
    })
}

fn is_filter_object(value: &Value) -> bool {
    value
        .as_object()
        .map(|map| map.contains_key("must") || map.contains_key("should") || map.contains_key("must_not"))
        .unwrap_or(false)
}
