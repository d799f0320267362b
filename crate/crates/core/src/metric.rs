//! Distance metrics and score normalization.
//!
//! The kernels are generic over the scalar type ([`crate::scalar::Scalar`]);
//! stored vectors instantiate them at `f64`.
//!
//! Normalization maps every metric into [0, 1] with 1 meaning "closest",
//! preserving rank order per query:
//! cosine `(s + 1) / 2`, euclidean `1 / (1 + d)`, dot product logistic
//! `1 / (1 + exp(-s))`. Absolute comparability across metrics is not a
//! goal; rank preservation is.

use crate::error::VextraError;
use crate::model::MetricKind;
use crate::scalar::Scalar;

/// Slack accepted (and clamped away) on the cosine domain bounds.
const COSINE_SLACK: f64 = 1e-9;

fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm<S: Scalar>(a: &[S]) -> S {
    dot(a, a).sqrt()
}

fn check_pair<S: Scalar>(a: &[S], b: &[S]) -> Result<(), VextraError> {
    if a.is_empty() || b.is_empty() {
        return Err(VextraError::validation("vectors must be non-empty"));
    }
    if a.len() != b.len() {
        return Err(VextraError::validation(format!(
            "vector length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|c| !c.is_finite()) {
        return Err(VextraError::validation(
            "vectors must have finite components",
        ));
    }
    Ok(())
}

/// Native metric value between two vectors: cosine similarity, euclidean
/// distance, or dot product.
pub fn raw_score<S: Scalar>(metric: MetricKind, a: &[S], b: &[S]) -> Result<S, VextraError> {
    check_pair(a, b)?;
    match metric {
        MetricKind::Cosine => {
            let na = norm(a);
            let nb = norm(b);
            if na.is_zero() || nb.is_zero() {
                return Err(VextraError::validation(
                    "cosine similarity is undefined for zero-norm vectors",
                ));
            }
            Ok(dot(a, b) / (na * nb))
        }
        MetricKind::Euclidean => {
            let sum = a
                .iter()
                .zip(b)
                .fold(S::zero(), |acc, (&x, &y)| acc + (x - y) * (x - y));
            Ok(sum.sqrt())
        }
        MetricKind::DotProduct => Ok(dot(a, b)),
    }
}

/// Map a raw metric value into [0, 1], strictly monotone in the metric's
/// "better" direction.
pub fn normalize_score<S: Scalar>(metric: MetricKind, raw: S) -> Result<S, VextraError> {
    if !raw.is_finite() {
        return Err(VextraError::validation("raw score must be finite"));
    }
    let one = S::one();
    let two = one + one;
    match metric {
        MetricKind::Cosine => {
            let slack = S::from(COSINE_SLACK).expect("slack fits any float");
            if raw.abs() > one + slack {
                return Err(VextraError::validation(format!(
                    "cosine raw score out of [-1, 1]: {}",
                    raw.to_f64().unwrap_or(f64::NAN)
                )));
            }
            let clamped = raw.min(one).max(-one);
            Ok((clamped + one) / two)
        }
        MetricKind::Euclidean => {
            if raw < S::zero() {
                return Err(VextraError::validation(format!(
                    "euclidean distance must be non-negative, got {}",
                    raw.to_f64().unwrap_or(f64::NAN)
                )));
            }
            Ok(one / (one + raw))
        }
        MetricKind::DotProduct => Ok(one / (one + (-raw).exp())),
    }
}
