//! Weaviate emitter: a structured where-tree and its rendered
//! GraphQL-argument text.
//!
//! Weaviate's core where grammar has neither a general NOT nor an IN, so
//! negations are pushed to the leaves first, `in` rewrites to an Or of
//! Equal leaves, and `nin` to an And of NotEqual leaves. The emitted
//! operator set is exactly And, Or, Equal, NotEqual, GreaterThan,
//! GreaterThanEqual, LessThan, LessThanEqual.

use std::fmt::Write as _;

use crate::error::VextraError;
use crate::filter::ast::{CompareOp, Literal};
use crate::filter::{push_negations, FilterAst};
use crate::model::ScalarValue;
use crate::transpile::NativeFilter;

/// Logical or comparison operator of a where-tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhereOperator {
    And,
    Or,
    Equal,
    NotEqual,
    GreaterThan,
    GreaterThanEqual,
    LessThan,
    LessThanEqual,
}

impl WhereOperator {
    pub fn name(self) -> &'static str {
        match self {
            WhereOperator::And => "And",
            WhereOperator::Or => "Or",
            WhereOperator::Equal => "Equal",
            WhereOperator::NotEqual => "NotEqual",
            WhereOperator::GreaterThan => "GreaterThan",
            WhereOperator::GreaterThanEqual => "GreaterThanEqual",
            WhereOperator::LessThan => "LessThan",
            WhereOperator::LessThanEqual => "LessThanEqual",
        }
    }
}

/// Which value key a leaf uses, determined by the literal's kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhereValueKey {
    ValueText,
    ValueInt,
    ValueNumber,
    ValueBoolean,
}

impl WhereValueKey {
    pub fn name(self) -> &'static str {
        match self {
            WhereValueKey::ValueText => "valueText",
            WhereValueKey::ValueInt => "valueInt",
            WhereValueKey::ValueNumber => "valueNumber",
            WhereValueKey::ValueBoolean => "valueBoolean",
        }
    }
}

/// A comparison leaf: single-element path, operator, and a typed value.
#[derive(Debug, Clone, PartialEq)]
pub struct WhereLeaf {
    pub path: Vec<String>,
    pub operator: WhereOperator,
    pub value_key: WhereValueKey,
    pub value: ScalarValue,
}

/// The structured where-tree.
#[derive(Debug, Clone, PartialEq)]
pub enum WhereNode {
    Logical {
        operator: WhereOperator,
        operands: Vec<WhereNode>,
    },
    Leaf(WhereLeaf),
}

pub fn transpile_weaviate(ast: &FilterAst) -> Result<NativeFilter, VextraError> {
    let not_free = push_negations(ast)?;
    let tree = match &not_free {
        FilterAst::MatchAll => None,
        other => Some(build_node(other)),
    };
    let text = match &tree {
        Some(node) => {
            let mut out = String::from("where: ");
            render_node(node, &mut out);
            out
        }
        None => String::new(),
    };
    Ok(NativeFilter::Weaviate { tree, text })
}

fn build_node(ast: &FilterAst) -> WhereNode {
    match ast {
        FilterAst::And(children) => WhereNode::Logical {
            operator: WhereOperator::And,
            operands: children.iter().map(build_node).collect(),
        },
        FilterAst::Or(children) => WhereNode::Logical {
            operator: WhereOperator::Or,
            operands: children.iter().map(build_node).collect(),
        },
        FilterAst::Compare { field, op, literal } => build_compare(field, *op, literal),
        // push_negations removed Not nodes, and MatchAll only occurs at the
        // root, which the caller handled.
        FilterAst::Not(_) | FilterAst::MatchAll => {
            unreachable!("negation-free AST with MatchAll only at the root")
        }
    }
}

fn build_compare(field: &str, op: CompareOp, literal: &Literal) -> WhereNode {
    match (op, literal) {
        (CompareOp::In, Literal::List(items)) => {
            group(field, WhereOperator::Or, WhereOperator::Equal, items)
        }
        (CompareOp::Nin, Literal::List(items)) => {
            group(field, WhereOperator::And, WhereOperator::NotEqual, items)
        }
        (op, Literal::Scalar(scalar)) => WhereNode::Leaf(leaf(field, scalar_op(op), scalar)),
        // Shape mismatches cannot be produced by the parser.
        _ => unreachable!("operator/literal shape mismatch"),
    }
}

fn scalar_op(op: CompareOp) -> WhereOperator {
    match op {
        CompareOp::Eq => WhereOperator::Equal,
        CompareOp::Ne => WhereOperator::NotEqual,
        CompareOp::Gt => WhereOperator::GreaterThan,
        CompareOp::Gte => WhereOperator::GreaterThanEqual,
        CompareOp::Lt => WhereOperator::LessThan,
        CompareOp::Lte => WhereOperator::LessThanEqual,
        CompareOp::In | CompareOp::Nin => unreachable!("rewritten before leaf construction"),
    }
}

/// Or-of-Equal / And-of-NotEqual rewrite for list membership; a single
/// element collapses to its leaf.
fn group(
    field: &str,
    logical: WhereOperator,
    comparison: WhereOperator,
    items: &[ScalarValue],
) -> WhereNode {
    let mut operands: Vec<WhereNode> = items
        .iter()
        .map(|item| WhereNode::Leaf(leaf(field, comparison, item)))
        .collect();
    if operands.len() == 1 {
        operands.pop().expect("non-empty")
    } else {
        WhereNode::Logical {
            operator: logical,
            operands,
        }
    }
}

fn leaf(field: &str, operator: WhereOperator, value: &ScalarValue) -> WhereLeaf {
    let value_key = match value {
        ScalarValue::Str(_) => WhereValueKey::ValueText,
        ScalarValue::Int(_) => WhereValueKey::ValueInt,
        ScalarValue::Float(_) => WhereValueKey::ValueNumber,
        ScalarValue::Bool(_) => WhereValueKey::ValueBoolean,
    };
    WhereLeaf {
        path: vec![field.to_string()],
        operator,
        value_key,
        value: value.clone(),
    }
}

/// Render GraphQL argument syntax: unquoted enum operators, quoted strings,
/// integers bare, floats always with a decimal point.
fn render_node(node: &WhereNode, out: &mut String) {
    match node {
        WhereNode::Logical { operator, operands } => {
            let _ = write!(out, "{{operator: {}, operands: [", operator.name());
            for (i, operand) in operands.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_node(operand, out);
            }
            out.push_str("]}");
        }
        WhereNode::Leaf(leaf) => {
            out.push_str("{path: [");
            for (i, part) in leaf.path.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}", serde_json::Value::String(part.clone()));
            }
            let _ = write!(out, "], operator: {}, ", leaf.operator.name());
            out.push_str(leaf.value_key.name());
            out.push_str(": ");
            out.push_str(&render_value(&leaf.value));
            out.push('}');
        }
    }
}

fn render_value(value: &ScalarValue) -> String {
    match value {
        ScalarValue::Bool(b) => b.to_string(),
        ScalarValue::Int(n) => n.to_string(),
        // serde_json keeps a trailing ".0" on round floats.
        ScalarValue::Float(x) => serde_json::json!(x).to_string(),
        ScalarValue::Str(s) => serde_json::Value::String(s.clone()).to_string(),
    }
}
