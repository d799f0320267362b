//! Interpreters for the native filter formats, used to prove that
//! transpilation preserves filter semantics.
//!
//! Each interpreter walks the native artifact directly — not the source
//! AST — and applies the target's documented semantics, with the same
//! missing-field rule as the filter language: a predicate on a field the
//! payload lacks is false. These are deliberately independent
//! re-implementations; they share no evaluation code with
//! [`crate::filter::evaluate_filter`].
//!
//! Milvus bodies are expression strings and are not interpreted; they are
//! covered by golden tests.

use serde_json::Value;

use crate::error::VextraError;
use crate::model::{Payload, PayloadValue, ScalarValue};
use crate::transpile::weaviate::{WhereLeaf, WhereNode, WhereOperator};
use crate::transpile::NativeFilter;

/// Evaluate a native filter against a payload.
pub fn interpret_native(
    filter: &NativeFilter,
    payload: Option<&Payload>,
) -> Result<bool, VextraError> {
    match filter {
        NativeFilter::Pinecone(body) => interpret_pinecone(body, payload),
        NativeFilter::Qdrant(body) => interpret_qdrant(body, payload),
        NativeFilter::Weaviate { tree, .. } => Ok(match tree {
            Some(node) => interpret_weaviate(node, payload),
            None => true,
        }),
        NativeFilter::Milvus(_) => Err(VextraError::validation(
            "milvus expression strings are not interpretable",
        )),
    }
}

fn field_scalar<'a>(payload: Option<&'a Payload>, field: &str) -> Option<&'a ScalarValue> {
    match payload?.get(field)? {
        PayloadValue::Scalar(s) => Some(s),
        PayloadValue::List(_) => None,
    }
}

fn json_number(value: &Value) -> Option<f64> {
    value.as_f64()
}

/// Literal-vs-payload equality with int/float merging; different kinds are
/// never equal.
fn json_eq(literal: &Value, value: &ScalarValue) -> bool {
    match (literal, value) {
        (Value::String(a), ScalarValue::Str(b)) => a == b,
        (Value::Bool(a), ScalarValue::Bool(b)) => a == b,
        (Value::Number(n), ScalarValue::Int(b)) => {
            if let Some(a) = n.as_i64() {
                a == *b
            } else {
                n.as_f64().map(|a| a == *b as f64).unwrap_or(false)
            }
        }
        (Value::Number(n), ScalarValue::Float(b)) => n.as_f64().map(|a| a == *b).unwrap_or(false),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Pinecone: MongoDB-style JSON
// ---------------------------------------------------------------------------

fn interpret_pinecone(body: &Value, payload: Option<&Payload>) -> Result<bool, VextraError> {
    let object = body
        .as_object()
        .ok_or_else(|| VextraError::validation("pinecone filter must be a JSON object"))?;
    let mut result = true;
    for (key, value) in object {
        let clause = match key.as_str() {
            "$and" | "$or" => {
                let items = value.as_array().ok_or_else(|| {
                    VextraError::validation(format!("{key} must hold a list of clauses"))
                })?;
                let mut outcomes = Vec::with_capacity(items.len());
                for item in items {
                    outcomes.push(interpret_pinecone(item, payload)?);
                }
                if key == "$and" {
                    outcomes.iter().all(|b| *b)
                } else {
                    outcomes.iter().any(|b| *b)
                }
            }
            _ if key.starts_with('$') => {
                return Err(VextraError::validation(format!(
                    "unknown pinecone operator {key:?}"
                )))
            }
            field => pinecone_field_clause(field, value, payload)?,
        };
        result = result && clause;
    }
    Ok(result)
}

fn pinecone_field_clause(
    field: &str,
    value: &Value,
    payload: Option<&Payload>,
) -> Result<bool, VextraError> {
    let present = field_scalar(payload, field);
    match value {
        Value::Object(ops) => {
            let mut result = true;
            for (token, operand) in ops {
                let holds = match token.as_str() {
                    "$eq" => present.map(|v| json_eq(operand, v)).unwrap_or(false),
                    "$ne" => present.map(|v| !json_eq(operand, v)).unwrap_or(false),
                    "$gt" | "$gte" | "$lt" | "$lte" => {
                        pinecone_range(token, operand, present)?
                    }
                    "$in" => pinecone_membership(operand, present)?,
                    "$nin" => {
                        let member = pinecone_membership(operand, present)?;
                        present.is_some() && !member
                    }
                    other => {
                        return Err(VextraError::validation(format!(
                            "unknown pinecone operator {other:?}"
                        )))
                    }
                };
                result = result && holds;
            }
            Ok(result)
        }
        // Bare scalar: implicit equality.
        other => Ok(present.map(|v| json_eq(other, v)).unwrap_or(false)),
    }
}

fn pinecone_range(
    token: &str,
    operand: &Value,
    present: Option<&ScalarValue>,
) -> Result<bool, VextraError> {
    let bound = json_number(operand).ok_or_else(|| {
        VextraError::validation(format!("{token} requires a numeric operand"))
    })?;
    let value = match present.and_then(|v| match v {
        ScalarValue::Int(n) => Some(*n as f64),
        ScalarValue::Float(x) => Some(*x),
        _ => None,
    }) {
        Some(x) => x,
        None => return Ok(false),
    };
    Ok(match token {
        "$gt" => value > bound,
        "$gte" => value >= bound,
        "$lt" => value < bound,
        "$lte" => value <= bound,
        _ => unreachable!(),
    })
}

fn pinecone_membership(
    operand: &Value,
    present: Option<&ScalarValue>,
) -> Result<bool, VextraError> {
    let items = operand
        .as_array()
        .ok_or_else(|| VextraError::validation("$in/$nin require a list operand"))?;
    Ok(present
        .map(|v| items.iter().any(|item| json_eq(item, v)))
        .unwrap_or(false))
}

// ---------------------------------------------------------------------------
// Qdrant: must / should / must_not with field conditions
// ---------------------------------------------------------------------------

fn interpret_qdrant(body: &Value, payload: Option<&Payload>) -> Result<bool, VextraError> {
    let object = body
        .as_object()
        .ok_or_else(|| VextraError::validation("qdrant filter must be a JSON object"))?;
    if object.contains_key("key") || object.contains_key("is_empty") {
        return qdrant_condition(object, payload);
    }
    let mut result = true;
    for (key, value) in object {
        let items = value.as_array().ok_or_else(|| {
            VextraError::validation(format!("qdrant {key} must hold a list of conditions"))
        })?;
        let mut outcomes = Vec::with_capacity(items.len());
        for item in items {
            outcomes.push(interpret_qdrant(item, payload)?);
        }
        let clause = match key.as_str() {
            "must" => outcomes.iter().all(|b| *b),
            "should" => outcomes.iter().any(|b| *b),
            "must_not" => !outcomes.iter().any(|b| *b),
            other => {
                return Err(VextraError::validation(format!(
                    "unknown qdrant filter key {other:?}"
                )))
            }
        };
        result = result && clause;
    }
    Ok(result)
}

fn qdrant_condition(
    object: &serde_json::Map<String, Value>,
    payload: Option<&Payload>,
) -> Result<bool, VextraError> {
    if let Some(is_empty) = object.get("is_empty") {
        let field = is_empty
            .get("key")
            .and_then(Value::as_str)
            .ok_or_else(|| VextraError::validation("is_empty requires a key"))?;
        let empty = match payload.and_then(|p| p.get(field)) {
            None => true,
            Some(PayloadValue::List(items)) => items.is_empty(),
            Some(PayloadValue::Scalar(_)) => false,
        };
        return Ok(empty);
    }
    let field = object
        .get("key")
        .and_then(Value::as_str)
        .ok_or_else(|| VextraError::validation("field condition requires a key"))?;
    let present = field_scalar(payload, field);
    if let Some(matcher) = object.get("match") {
        if let Some(value) = matcher.get("value") {
            return Ok(present.map(|v| json_eq(value, v)).unwrap_or(false));
        }
        if let Some(any) = matcher.get("any") {
            let items = any
                .as_array()
                .ok_or_else(|| VextraError::validation("match.any must hold a list"))?;
            return Ok(present
                .map(|v| items.iter().any(|item| json_eq(item, v)))
                .unwrap_or(false));
        }
        return Err(VextraError::validation(
            "match condition requires value or any",
        ));
    }
    if let Some(range) = object.get("range") {
        let bounds = range
            .as_object()
            .ok_or_else(|| VextraError::validation("range must be an object"))?;
        let value = match present.and_then(|v| match v {
            ScalarValue::Int(n) => Some(*n as f64),
            ScalarValue::Float(x) => Some(*x),
            _ => None,
        }) {
            Some(x) => x,
            None => return Ok(false),
        };
        let mut holds = true;
        for (bound, limit) in bounds {
            let limit = json_number(limit).ok_or_else(|| {
                VextraError::validation(format!("range bound {bound} must be numeric"))
            })?;
            holds = holds
                && match bound.as_str() {
                    "gt" => value > limit,
                    "gte" => value >= limit,
                    "lt" => value < limit,
                    "lte" => value <= limit,
                    other => {
                        return Err(VextraError::validation(format!(
                            "unknown range bound {other:?}"
                        )))
                    }
                };
        }
        return Ok(holds);
    }
    Err(VextraError::validation(
        "field condition requires match or range",
    ))
}

// ---------------------------------------------------------------------------
// Weaviate: structured where-tree
// ---------------------------------------------------------------------------

fn interpret_weaviate(node: &WhereNode, payload: Option<&Payload>) -> bool {
    match node {
        WhereNode::Logical { operator, operands } => match operator {
            WhereOperator::And => operands.iter().all(|n| interpret_weaviate(n, payload)),
            WhereOperator::Or => operands.iter().any(|n| interpret_weaviate(n, payload)),
            _ => false,
        },
        WhereNode::Leaf(leaf) => weaviate_leaf(leaf, payload),
    }
}

fn weaviate_leaf(leaf: &WhereLeaf, payload: Option<&Payload>) -> bool {
    let field = match leaf.path.first() {
        Some(field) => field.as_str(),
        None => return false,
    };
    let value = match field_scalar(payload, field) {
        Some(value) => value,
        None => return false,
    };
    match leaf.operator {
        WhereOperator::Equal => weaviate_eq(&leaf.value, value),
        WhereOperator::NotEqual => !weaviate_eq(&leaf.value, value),
        WhereOperator::GreaterThan
        | WhereOperator::GreaterThanEqual
        | WhereOperator::LessThan
        | WhereOperator::LessThanEqual => {
            let lhs = match value {
                ScalarValue::Int(n) => *n as f64,
                ScalarValue::Float(x) => *x,
                _ => return false,
            };
            let rhs = match &leaf.value {
                ScalarValue::Int(n) => *n as f64,
                ScalarValue::Float(x) => *x,
                _ => return false,
            };
            match leaf.operator {
                WhereOperator::GreaterThan => lhs > rhs,
                WhereOperator::GreaterThanEqual => lhs >= rhs,
                WhereOperator::LessThan => lhs < rhs,
                WhereOperator::LessThanEqual => lhs <= rhs,
                _ => unreachable!(),
            }
        }
        WhereOperator::And | WhereOperator::Or => false,
    }
}

fn weaviate_eq(literal: &ScalarValue, value: &ScalarValue) -> bool {
    match (literal, value) {
        (ScalarValue::Str(a), ScalarValue::Str(b)) => a == b,
        (ScalarValue::Bool(a), ScalarValue::Bool(b)) => a == b,
        (ScalarValue::Int(a), ScalarValue::Int(b)) => a == b,
        (ScalarValue::Int(a), ScalarValue::Float(b)) => *a as f64 == *b,
        (ScalarValue::Float(a), ScalarValue::Int(b)) => *a == *b as f64,
        (ScalarValue::Float(a), ScalarValue::Float(b)) => a == b,
        _ => false,
    }
}
