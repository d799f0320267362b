//! Canonical source form of a filter AST: explicit `$eq`, explicit `$and`,
//! one operator per object. Parsing the output reproduces the input AST.

use serde_json::{json, Map, Value};

use crate::filter::ast::{FilterAst, Literal};
use crate::model::ScalarValue;

/// Emit the canonical source document for an AST.
pub fn serialize_filter(ast: &FilterAst) -> Value {
    match ast {
        FilterAst::MatchAll => Value::Object(Map::new()),
        FilterAst::And(children) => json!({ "$and": children_to_values(children) }),
        FilterAst::Or(children) => json!({ "$or": children_to_values(children) }),
        FilterAst::Not(child) => json!({ "$not": serialize_filter(child) }),
        FilterAst::Compare { field, op, literal } => {
            json!({ field.as_str(): { op.token(): literal_to_value(literal) } })
        }
    }
}

fn children_to_values(children: &[FilterAst]) -> Vec<Value> {
    children.iter().map(serialize_filter).collect()
}

pub(crate) fn literal_to_value(literal: &Literal) -> Value {
    match literal {
        Literal::Scalar(scalar) => scalar_to_value(scalar),
        Literal::List(items) => Value::Array(items.iter().map(scalar_to_value).collect()),
    }
}

pub(crate) fn scalar_to_value(scalar: &ScalarValue) -> Value {
    match scalar {
        ScalarValue::Bool(b) => Value::Bool(*b),
        ScalarValue::Int(n) => json!(n),
        ScalarValue::Float(x) => json!(x),
        ScalarValue::Str(s) => Value::String(s.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::ast::CompareOp;
    use crate::filter::parse::parse_filter;
    use serde_json::json;

    #[test]
    fn compare_serializes_to_explicit_eq() {
        let value = serialize_filter(&FilterAst::eq("genre", "drama"));
        assert_eq!(value, json!({"genre": {"$eq": "drama"}}));
    }

    #[test]
    fn match_all_serializes_to_empty_object() {
        assert_eq!(serialize_filter(&FilterAst::MatchAll), json!({}));
    }

    #[test]
    fn and_serializes_to_explicit_and() {
        let ast = FilterAst::And(vec![FilterAst::eq("a", 1i64), FilterAst::eq("b", 2i64)]);
        assert_eq!(
            serialize_filter(&ast),
            json!({"$and": [{"a": {"$eq": 1}}, {"b": {"$eq": 2}}]})
        );
    }

    #[test]
    fn serialize_then_parse_is_identity_on_canonical_asts() {
        let ast = FilterAst::Or(vec![
            FilterAst::And(vec![
                FilterAst::eq("genre", "drama"),
                FilterAst::compare(
                    "year",
                    CompareOp::Gte,
                    Literal::Scalar(ScalarValue::Int(2020)),
                ),
            ]),
            FilterAst::Not(Box::new(FilterAst::compare(
                "category",
                CompareOp::In,
                Literal::List(vec![ScalarValue::from("a"), ScalarValue::from("b")]),
            ))),
        ]);
        let reparsed = parse_filter(&serialize_filter(&ast)).unwrap();
        assert_eq!(reparsed, ast);
    }
}
