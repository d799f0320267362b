//! Parser from the JSON source form of the filter language to [`FilterAst`].
//!
//! Desugaring applied while parsing:
//! - `{"genre": "sci-fi"}` is shorthand for `{"genre": {"$eq": "sci-fi"}}`
//! - multiple fields in one document AND together
//! - multiple operators under one field AND together
//! - `{}` is the match-all filter
//! - single-child `$and`/`$or` collapse to the child
//!
//! Errors carry the path of the offending node, e.g. `$and[1].year`.

use serde_json::Value;

use crate::error::VextraError;
use crate::filter::ast::{CompareOp, FilterAst, Literal};
use crate::model::ScalarValue;

struct Path<'a> {
    segments: Vec<Segment<'a>>,
}

enum Segment<'a> {
    Key(&'a str),
    Index(usize),
}

impl<'a> Path<'a> {
    fn root() -> Self {
        Self {
            segments: Vec::new(),
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for segment in &self.segments {
            match segment {
                Segment::Key(key) => {
                    if !out.is_empty() {
                        out.push('.');
                    }
                    out.push_str(key);
                }
                Segment::Index(i) => {
                    out.push('[');
                    out.push_str(&i.to_string());
                    out.push(']');
                }
            }
        }
        if out.is_empty() {
            "<root>".to_string()
        } else {
            out
        }
    }

    fn error(&self, reason: impl std::fmt::Display) -> VextraError {
        VextraError::validation(format!("invalid filter at {}: {reason}", self.render()))
    }
}

/// Parse a filter source document into the canonical AST.
pub fn parse_filter(source: &Value) -> Result<FilterAst, VextraError> {
    let mut path = Path::root();
    let object = match source {
        Value::Object(map) => map,
        other => {
            return Err(path.error(format!(
                "filter must be a JSON object, got {}",
                kind_name(other)
            )))
        }
    };
    if object.is_empty() {
        return Ok(FilterAst::MatchAll);
    }
    parse_clause(object, &mut path)
}

fn parse_clause<'a>(
    object: &'a serde_json::Map<String, Value>,
    path: &mut Path<'a>,
) -> Result<FilterAst, VextraError> {
    if object.is_empty() {
        return Err(path.error("empty clause object"));
    }
    let mut children = Vec::with_capacity(object.len());
    for (key, value) in object {
        children.push(parse_entry(key, value, path)?);
    }
    Ok(flatten_and(children))
}

fn parse_entry<'a>(
    key: &'a str,
    value: &'a Value,
    path: &mut Path<'a>,
) -> Result<FilterAst, VextraError> {
    path.segments.push(Segment::Key(key));
    let node = match key {
        "$and" | "$or" => {
            let items = match value {
                Value::Array(items) => items,
                other => {
                    return Err(path.error(format!(
                        "expected a list of clauses under {key}, got {}",
                        kind_name(other)
                    )))
                }
            };
            if items.is_empty() {
                return Err(path.error(format!("{key} requires at least one clause")));
            }
            let mut children = Vec::with_capacity(items.len());
            for (i, item) in items.iter().enumerate() {
                path.segments.push(Segment::Index(i));
                let object = match item {
                    Value::Object(map) => map,
                    other => {
                        return Err(path.error(format!(
                            "expected a clause object, got {}",
                            kind_name(other)
                        )))
                    }
                };
                children.push(parse_clause(object, path)?);
                path.segments.pop();
            }
            if key == "$and" {
                flatten_and(children)
            } else if children.len() == 1 {
                children.into_iter().next().expect("non-empty")
            } else {
                FilterAst::Or(children)
            }
        }
        "$not" => {
            let object = match value {
                Value::Object(map) => map,
                other => {
                    return Err(path.error(format!(
                        "expected a clause object under $not, got {}",
                        kind_name(other)
                    )))
                }
            };
            let child = if object.is_empty() {
                FilterAst::MatchAll
            } else {
                parse_clause(object, path)?
            };
            FilterAst::Not(Box::new(child))
        }
        _ if key.starts_with('$') => {
            return Err(path.error(format!("unknown operator {key:?}")));
        }
        field => parse_field_clause(field, value, path)?,
    };
    path.segments.pop();
    Ok(node)
}

fn parse_field_clause<'a>(
    field: &'a str,
    value: &'a Value,
    path: &mut Path<'a>,
) -> Result<FilterAst, VextraError> {
    if field.is_empty() {
        return Err(path.error("field names must be non-empty"));
    }
    match value {
        // Operator document: {"year": {"$gte": 2020, "$lt": 2030}}
        Value::Object(ops) => {
            if ops.is_empty() {
                return Err(path.error("empty operator document"));
            }
            let mut children = Vec::with_capacity(ops.len());
            for (token, operand) in ops {
                path.segments.push(Segment::Key(token));
                let op = match CompareOp::from_token(token) {
                    Some(op) => op,
                    None => return Err(path.error(format!("unknown operator {token:?}"))),
                };
                let literal = parse_literal(op, operand, path)?;
                path.segments.pop();
                children.push(FilterAst::compare(field, op, literal));
            }
            Ok(flatten_and(children))
        }
        // Scalar shorthand: {"genre": "sci-fi"} means $eq.
        other => {
            let literal = parse_literal(CompareOp::Eq, other, path)?;
            Ok(FilterAst::compare(field, CompareOp::Eq, literal))
        }
    }
}

fn parse_literal(op: CompareOp, value: &Value, path: &Path<'_>) -> Result<Literal, VextraError> {
    if op.takes_list() {
        let items = match value {
            Value::Array(items) => items,
            other => {
                return Err(path.error(format!(
                    "{} requires a list literal, got {}",
                    op.token(),
                    kind_name(other)
                )))
            }
        };
        let scalars = items
            .iter()
            .map(|item| parse_scalar(item, path))
            .collect::<Result<Vec<_>, _>>()?;
        check_list_homogeneity(&scalars, path)?;
        return Ok(Literal::List(scalars));
    }
    if matches!(value, Value::Array(_)) {
        return Err(path.error(format!(
            "{} requires a scalar literal, got a list",
            op.token()
        )));
    }
    let scalar = parse_scalar(value, path)?;
    if op.is_ordering() && !scalar.is_numeric() {
        return Err(path.error(format!("{} requires a numeric literal", op.token())));
    }
    Ok(Literal::Scalar(scalar))
}

fn parse_scalar(value: &Value, path: &Path<'_>) -> Result<ScalarValue, VextraError> {
    match value {
        Value::Bool(b) => Ok(ScalarValue::Bool(*b)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ScalarValue::Int(i))
            } else if let Some(x) = n.as_f64() {
                Ok(ScalarValue::Float(x))
            } else {
                Err(path.error(format!("unrepresentable number {n}")))
            }
        }
        Value::String(s) => Ok(ScalarValue::Str(s.clone())),
        other => Err(path.error(format!(
            "literals must be strings, numbers, or booleans, got {}",
            kind_name(other)
        ))),
    }
}

fn check_list_homogeneity(items: &[ScalarValue], path: &Path<'_>) -> Result<(), VextraError> {
    #[derive(PartialEq)]
    enum Class {
        Str,
        Num,
        Bool,
    }
    let class_of = |v: &ScalarValue| match v {
        ScalarValue::Str(_) => Class::Str,
        ScalarValue::Int(_) | ScalarValue::Float(_) => Class::Num,
        ScalarValue::Bool(_) => Class::Bool,
    };
    if let Some(first) = items.first() {
        let class = class_of(first);
        if items.iter().any(|item| class_of(item) != class) {
            return Err(path.error("list literals must be homogeneous"));
        }
    }
    Ok(())
}

/// Merge AND children, collapsing a single child to itself and splicing
/// nested ANDs produced by desugaring into one level.
fn flatten_and(mut children: Vec<FilterAst>) -> FilterAst {
    if children.len() == 1 {
        return children.pop().expect("non-empty");
    }
    let mut merged = Vec::with_capacity(children.len());
    for child in children {
        match child {
            FilterAst::And(inner) => merged.extend(inner),
            other => merged.push(other),
        }
    }
    FilterAst::And(merged)
}

fn kind_name(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "a list",
        Value::Object(_) => "an object",
    }
}
