//! The universal filter representation every transpiler consumes.

use crate::model::ScalarValue;

/// Comparison operators of the unified filter language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareOp {
    Eq,
    Ne,
    Gt,
    Gte,
    Lt,
    Lte,
    In,
    Nin,
}

impl CompareOp {
    /// The `$`-prefixed source token.
    pub fn token(self) -> &'static str {
        match self {
            CompareOp::Eq => "$eq",
            CompareOp::Ne => "$ne",
            CompareOp::Gt => "$gt",
            CompareOp::Gte => "$gte",
            CompareOp::Lt => "$lt",
            CompareOp::Lte => "$lte",
            CompareOp::In => "$in",
            CompareOp::Nin => "$nin",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Some(match token {
            "$eq" => CompareOp::Eq,
            "$ne" => CompareOp::Ne,
            "$gt" => CompareOp::Gt,
            "$gte" => CompareOp::Gte,
            "$lt" => CompareOp::Lt,
            "$lte" => CompareOp::Lte,
            "$in" => CompareOp::In,
            "$nin" => CompareOp::Nin,
            _ => return None,
        })
    }

    /// The operator equivalent to `NOT (field op literal)` on payloads where
    /// the field is present. Under the missing-field rule the complement is
    /// not a full logical negation; see the negation module.
    pub fn complement(self) -> Self {
        match self {
            CompareOp::Eq => CompareOp::Ne,
            CompareOp::Ne => CompareOp::Eq,
            CompareOp::Gt => CompareOp::Lte,
            CompareOp::Lte => CompareOp::Gt,
            CompareOp::Lt => CompareOp::Gte,
            CompareOp::Gte => CompareOp::Lt,
            CompareOp::In => CompareOp::Nin,
            CompareOp::Nin => CompareOp::In,
        }
    }

    /// Whether the operator takes a list literal ($in/$nin) rather than a
    /// scalar.
    pub fn takes_list(self) -> bool {
        matches!(self, CompareOp::In | CompareOp::Nin)
    }

    /// Whether the operator requires a numeric literal.
    pub fn is_ordering(self) -> bool {
        matches!(
            self,
            CompareOp::Gt | CompareOp::Gte | CompareOp::Lt | CompareOp::Lte
        )
    }
}

/// Literal payload of a comparison: a scalar, or a homogeneous list for
/// $in/$nin.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Scalar(ScalarValue),
    List(Vec<ScalarValue>),
}

/// Canonical filter AST.
///
/// Invariants maintained by the parser and expected by the transpilers:
/// `And`/`Or` children are non-empty, `In`/`Nin` carry list literals and all
/// other operators scalars, ordering operators carry numeric literals,
/// field names are non-empty and never start with `$`, and `MatchAll`
/// appears only as the root.
#[derive(Debug, Clone, PartialEq)]
pub enum FilterAst {
    /// The empty filter; matches every record.
    MatchAll,
    And(Vec<FilterAst>),
    Or(Vec<FilterAst>),
    Not(Box<FilterAst>),
    Compare {
        field: String,
        op: CompareOp,
        literal: Literal,
    },
}

impl FilterAst {
    pub fn compare(field: impl Into<String>, op: CompareOp, literal: Literal) -> Self {
        FilterAst::Compare {
            field: field.into(),
            op,
            literal,
        }
    }

    pub fn eq(field: impl Into<String>, value: impl Into<ScalarValue>) -> Self {
        Self::compare(field, CompareOp::Eq, Literal::Scalar(value.into()))
    }

    /// Every field name referenced anywhere in the tree.
    pub fn referenced_fields(&self) -> Vec<&str> {
        let mut fields = Vec::new();
        self.collect_fields(&mut fields);
        fields.sort_unstable();
        fields.dedup();
        fields
    }

    fn collect_fields<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            FilterAst::MatchAll => {}
            FilterAst::And(children) | FilterAst::Or(children) => {
                for child in children {
                    child.collect_fields(out);
                }
            }
            FilterAst::Not(child) => child.collect_fields(out),
            FilterAst::Compare { field, .. } => out.push(field),
        }
    }
}
