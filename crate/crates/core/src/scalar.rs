//! Floating-point scalar abstraction for the distance kernels.

use num_traits::Float;

/// Scalar type the distance and normalization kernels are generic over:
/// `f32` or `f64`. Stored vectors use the crate-level [`crate::Vector`]
/// alias (`f64`), but the kernels themselves are scalar-agnostic.
pub trait Scalar: Float + Send + Sync + 'static {}

impl Scalar for f32 {}
impl Scalar for f64 {}
