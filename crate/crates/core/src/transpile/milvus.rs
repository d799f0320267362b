//! Milvus emitter: a fully parenthesized boolean-expression string.
//!
//! Comparisons render as `(field op literal)`, membership as
//! `(field in [a, b])` and `not (field in [a, b])`, conjunction and
//! disjunction join parenthesized children with `&&` / `||`, and `Not`
//! renders as `!(...)`. Strings are double-quoted with backslash escaping;
//! integers render without a decimal point, floats with one.

use std::fmt::Write as _;

use crate::error::VextraError;
use crate::filter::ast::{CompareOp, Literal};
use crate::filter::FilterAst;
use crate::model::ScalarValue;
use crate::transpile::NativeFilter;

pub fn transpile_milvus(ast: &FilterAst) -> Result<NativeFilter, VextraError> {
    let expr = match ast {
        FilterAst::MatchAll => String::new(),
        other => render(other),
    };
    Ok(NativeFilter::Milvus(expr))
}

/// Render a node. Comparison output carries its own parentheses; composite
/// children get wrapped by the parent.
fn render(ast: &FilterAst) -> String {
    match ast {
        FilterAst::MatchAll => String::new(),
        FilterAst::And(children) => join(children, " && "),
        FilterAst::Or(children) => join(children, " || "),
        FilterAst::Not(child) => format!("!{}", render_child(child)),
        FilterAst::Compare { field, op, literal } => render_compare(field, *op, literal),
    }
}

fn join(children: &[FilterAst], separator: &str) -> String {
    children
        .iter()
        .map(render_child)
        .collect::<Vec<_>>()
        .join(separator)
}

fn render_child(child: &FilterAst) -> String {
    match child {
        // Comparisons are already parenthesized.
        FilterAst::Compare { op, .. } if !matches!(op, CompareOp::Nin) => render(child),
        other => format!("({})", render(other)),
    }
}

fn render_compare(field: &str, op: CompareOp, literal: &Literal) -> String {
    match (op, literal) {
        (CompareOp::In, Literal::List(items)) => {
            format!("({field} in {})", render_list(items))
        }
        (CompareOp::Nin, Literal::List(items)) => {
            format!("not ({field} in {})", render_list(items))
        }
        (op, Literal::Scalar(scalar)) => {
            let symbol = match op {
                CompareOp::Eq => "==",
                CompareOp::Ne => "!=",
                CompareOp::Gt => ">",
                CompareOp::Gte => ">=",
                CompareOp::Lt => "<",
                CompareOp::Lte => "<=",
                CompareOp::In | CompareOp::Nin => unreachable!("list operators handled above"),
            };
            format!("({field} {symbol} {})", render_scalar(scalar))
        }
        _ => unreachable!("operator/literal shape mismatch"),
    }
}

fn render_list(items: &[ScalarValue]) -> String {
    let mut out = String::from("[");
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{}", render_scalar(item));
    }
    out.push(']');
    out
}

fn render_scalar(scalar: &ScalarValue) -> String {
    match scalar {
        ScalarValue::Bool(b) => b.to_string(),
        ScalarValue::Int(n) => n.to_string(),
        ScalarValue::Float(x) => serde_json::json!(x).to_string(),
        ScalarValue::Str(s) => {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    other => out.push(other),
                }
            }
            out.push('"');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(ast: &FilterAst) -> String {
        match transpile_milvus(ast).unwrap() {
            NativeFilter::Milvus(s) => s,
            other => panic!("expected milvus filter, got {other:?}"),
        }
    }

    #[test]
    fn and_of_eq_and_gte() {
        let ast = FilterAst::And(vec![
            FilterAst::eq("genre", "drama"),
            FilterAst::compare(
                "year",
                CompareOp::Gte,
                Literal::Scalar(ScalarValue::Int(2020)),
            ),
        ]);
        assert_eq!(expr(&ast), r#"(genre == "drama") && (year >= 2020)"#);
    }

    #[test]
    fn single_comparison_at_root() {
        let ast = FilterAst::compare(
            "year",
            CompareOp::Gt,
            Literal::Scalar(ScalarValue::Int(2020)),
        );
        assert_eq!(expr(&ast), "(year > 2020)");
    }

    #[test]
    fn match_all_is_empty_string() {
        assert_eq!(expr(&FilterAst::MatchAll), "");
    }

    #[test]
    fn in_and_nin_render_membership() {
        let ast = FilterAst::compare(
            "c",
            CompareOp::In,
            Literal::List(vec![ScalarValue::from("a"), ScalarValue::from("b")]),
        );
        assert_eq!(expr(&ast), r#"(c in ["a", "b"])"#);

        let ast = FilterAst::compare(
            "c",
            CompareOp::Nin,
            Literal::List(vec![ScalarValue::from(1i64), ScalarValue::from(2i64)]),
        );
        assert_eq!(expr(&ast), "not (c in [1, 2])");
    }

    #[test]
    fn not_wraps_with_bang() {
        let ast = FilterAst::Not(Box::new(FilterAst::eq("a", 1i64)));
        assert_eq!(expr(&ast), "!(a == 1)");
    }

    #[test]
    fn nested_composites_are_parenthesized() {
        let ast = FilterAst::Or(vec![
            FilterAst::And(vec![FilterAst::eq("a", 1i64), FilterAst::eq("b", 2i64)]),
            FilterAst::eq("c", 3i64),
        ]);
        assert_eq!(expr(&ast), "((a == 1) && (b == 2)) || (c == 3)");
    }

    #[test]
    fn strings_escape_quotes_and_backslashes() {
        let ast = FilterAst::eq("name", r#"say "hi" \ bye"#);
        assert_eq!(expr(&ast), r#"(name == "say \"hi\" \\ bye")"#);
    }

    #[test]
    fn floats_keep_a_decimal_point() {
        let ast = FilterAst::compare(
            "score",
            CompareOp::Lt,
            Literal::Scalar(ScalarValue::Float(3.0)),
        );
        assert_eq!(expr(&ast), "(score < 3.0)");
    }
}
