//! Seeded generators for random filter ASTs and payloads, shared by the
//! property suites.

// Each test target uses a subset of these helpers.
#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use vextra::filter::ast::{CompareOp, FilterAst, Literal};
use vextra::model::{Payload, PayloadValue, ScalarValue};

pub const FIELDS: &[&str] = &["genre", "year", "category", "score", "active", "region"];

const STR_POOL: &[&str] = &["a", "b", "c", "d", "e", "drama", "sci-fi"];
const INT_POOL: &[i64] = &[0, 1, 2, 3, 5, 2020, 2021, 2024];
const FLOAT_POOL: &[f64] = &[0.5, 1.0, 2.5, 3.25, 2020.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldKind {
    Str,
    Num,
    Bool,
}

/// Assigns each field a fixed kind for one generated case, so ordering
/// operators always see numeric literals and payload values can be drawn
/// kind-consistently.
pub struct CaseGen {
    pub kinds: Vec<FieldKind>,
    pub allow_not: bool,
}

impl CaseGen {
    pub fn new(rng: &mut ChaCha8Rng, allow_not: bool) -> Self {
        let kinds = FIELDS
            .iter()
            .map(|_| match rng.gen_range(0..6) {
                0..=1 => FieldKind::Str,
                2..=4 => FieldKind::Num,
                _ => FieldKind::Bool,
            })
            .collect();
        Self { kinds, allow_not }
    }

    pub fn ast(&self, rng: &mut ChaCha8Rng, depth: usize) -> FilterAst {
        if depth == 0 {
            return self.compare(rng);
        }
        match rng.gen_range(0..10) {
            0..=4 => self.compare(rng),
            5 | 6 => FilterAst::And(self.children(rng, depth)),
            7 | 8 => FilterAst::Or(self.children(rng, depth)),
            _ if self.allow_not => FilterAst::Not(Box::new(self.ast(rng, depth - 1))),
            _ => self.compare(rng),
        }
    }

    fn children(&self, rng: &mut ChaCha8Rng, depth: usize) -> Vec<FilterAst> {
        let n = rng.gen_range(2..=3);
        (0..n).map(|_| self.ast(rng, depth - 1)).collect()
    }

    fn compare(&self, rng: &mut ChaCha8Rng) -> FilterAst {
        let index = rng.gen_range(0..FIELDS.len());
        let field = FIELDS[index];
        let kind = self.kinds[index];
        let ops: &[CompareOp] = match kind {
            FieldKind::Str => &[CompareOp::Eq, CompareOp::Ne, CompareOp::In, CompareOp::Nin],
            FieldKind::Num => &[
                CompareOp::Eq,
                CompareOp::Ne,
                CompareOp::Gt,
                CompareOp::Gte,
                CompareOp::Lt,
                CompareOp::Lte,
                CompareOp::In,
                CompareOp::Nin,
            ],
            FieldKind::Bool => &[CompareOp::Eq, CompareOp::Ne],
        };
        let op = *ops.choose(rng).expect("non-empty");
        let literal = if op.takes_list() {
            let n = rng.gen_range(1..=4);
            Literal::List((0..n).map(|_| self.scalar(rng, kind)).collect())
        } else {
            Literal::Scalar(self.scalar(rng, kind))
        };
        FilterAst::compare(field, op, literal)
    }

    fn scalar(&self, rng: &mut ChaCha8Rng, kind: FieldKind) -> ScalarValue {
        match kind {
            FieldKind::Str => ScalarValue::from(*STR_POOL.choose(rng).expect("non-empty")),
            FieldKind::Bool => ScalarValue::Bool(rng.gen()),
            FieldKind::Num => {
                if rng.gen_bool(0.6) {
                    ScalarValue::Int(*INT_POOL.choose(rng).expect("non-empty"))
                } else {
                    ScalarValue::Float(*FLOAT_POOL.choose(rng).expect("non-empty"))
                }
            }
        }
    }

    /// Kind of the field as assigned for this case.
    fn kind_of(&self, field: &str) -> FieldKind {
        FIELDS
            .iter()
            .position(|f| *f == field)
            .map(|i| self.kinds[i])
            .unwrap_or(FieldKind::Str)
    }

    /// Draw a payload for an AST. Each referenced field is present with
    /// probability `presence`; present values are drawn from the field's
    /// kind pool, or from a random kind with probability `cross_kind`.
    pub fn payload(
        &self,
        rng: &mut ChaCha8Rng,
        ast: &FilterAst,
        presence: f64,
        cross_kind: f64,
    ) -> Option<Payload> {
        if rng.gen_bool(0.05) && presence < 1.0 {
            return None;
        }
        let mut payload = Payload::new();
        for field in ast.referenced_fields() {
            if !rng.gen_bool(presence) {
                continue;
            }
            let kind = if cross_kind > 0.0 && rng.gen_bool(cross_kind) {
                match rng.gen_range(0..3) {
                    0 => FieldKind::Str,
                    1 => FieldKind::Num,
                    _ => FieldKind::Bool,
                }
            } else {
                self.kind_of(field)
            };
            payload.insert(
                field.to_string(),
                PayloadValue::Scalar(self.scalar(rng, kind)),
            );
        }
        // Unreferenced extra fields, occasionally list-valued.
        if rng.gen_bool(0.3) {
            let value = if rng.gen_bool(0.5) {
                PayloadValue::List(vec![ScalarValue::from("x"), ScalarValue::from("y")])
            } else {
                PayloadValue::Scalar(ScalarValue::Int(7))
            };
            payload.insert("extra".to_string(), value);
        }
        Some(payload)
    }
}

/// Convenience wrapper: a fresh case generator plus one AST.
pub fn random_case(rng: &mut ChaCha8Rng, allow_not: bool) -> (CaseGen, FilterAst) {
    let gen = CaseGen::new(rng, allow_not);
    let ast = if rng.gen_bool(0.03) {
        FilterAst::MatchAll
    } else {
        gen.ast(rng, 3)
    };
    (gen, ast)
}
