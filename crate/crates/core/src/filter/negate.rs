//! Negation pushdown: rewrite an AST into an equivalent one with no `Not`
//! nodes, for targets whose filter language lacks a general NOT.
//!
//! De Morgan distributes `Not` over `And`/`Or`, double negation cancels,
//! and comparisons flip to their complement operator (eq/ne, gt/lte,
//! lt/gte, in/nin). On payloads where a referenced field is absent the
//! complement is not a logical negation: the missing-field rule makes both
//! an operator and its complement fail. Callers that need exact negation
//! semantics on partial payloads must keep the `Not` node (see the qdrant
//! transpiler).

use crate::error::VextraError;
use crate::filter::ast::FilterAst;

/// Return an equivalent AST containing no `Not` nodes.
///
/// `Not(MatchAll)` is rejected: an always-false filter has no
/// representation in the filter language.
pub fn push_negations(ast: &FilterAst) -> Result<FilterAst, VextraError> {
    rewrite(ast, false)
}

fn rewrite(ast: &FilterAst, negated: bool) -> Result<FilterAst, VextraError> {
    match ast {
        FilterAst::MatchAll => {
            if negated {
                Err(VextraError::validation(
                    "a negated empty filter matches nothing and cannot be expressed",
                ))
            } else {
                Ok(FilterAst::MatchAll)
            }
        }
        FilterAst::Not(child) => rewrite(child, !negated),
        FilterAst::And(children) => {
            let rewritten = children
                .iter()
                .map(|c| rewrite(c, negated))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(if negated {
                FilterAst::Or(rewritten)
            } else {
                FilterAst::And(rewritten)
            })
        }
        FilterAst::Or(children) => {
            let rewritten = children
                .iter()
                .map(|c| rewrite(c, negated))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(if negated {
                FilterAst::And(rewritten)
            } else {
                FilterAst::Or(rewritten)
            })
        }
        FilterAst::Compare { field, op, literal } => {
            let op = if negated { op.complement() } else { *op };
            Ok(FilterAst::compare(field.clone(), op, literal.clone()))
        }
    }
}
