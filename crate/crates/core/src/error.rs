//! Canonical error taxonomy shared by every layer of the middleware.
//!
//! Core operations and adapters raise [`VextraError`], a classified error
//! that is not yet attributed to a provider. The client facade turns these
//! into [`UnifiedError`] via [`crate::client::map_error`], attaching the
//! bound provider name and the transient/permanent flag.

use std::fmt;

use thiserror::Error;

/// Canonical error codes. Every failure surfaced by the unified API is one
/// of these, regardless of which backend produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ErrorCode {
    Configuration,
    Authentication,
    Schema,
    Validation,
    NotFound,
    Connection,
    RateLimit,
    Internal,
}

impl ErrorCode {
    /// Public name of the code, matching the unified exception naming scheme.
    pub fn name(self) -> &'static str {
        match self {
            ErrorCode::Configuration => "ConfigurationError",
            ErrorCode::Authentication => "AuthenticationError",
            ErrorCode::Schema => "SchemaError",
            ErrorCode::Validation => "ValidationError",
            ErrorCode::NotFound => "NotFoundError",
            ErrorCode::Connection => "ConnectionError",
            ErrorCode::RateLimit => "RateLimitError",
            ErrorCode::Internal => "InternalError",
        }
    }

    /// Whether a retry is advisable for errors of this code.
    ///
    /// Rate limiting and connection failures are transient; configuration,
    /// authentication, schema, validation, and not-found failures are
    /// permanent. Unclassified internal errors default to permanent.
    pub fn is_transient(self) -> bool {
        matches!(self, ErrorCode::Connection | ErrorCode::RateLimit)
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A classified error from a core operation or an adapter.
///
/// Adapters declare the category themselves rather than encoding it in the
/// message text; an adapter that cannot classify a backend failure uses
/// [`VextraError::opaque`], which preserves the raw detail verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}: {message}", code.name())]
pub struct VextraError {
    pub code: ErrorCode,
    pub message: String,
    /// Raw backend error text, preserved verbatim when present.
    pub native_detail: Option<String>,
}

impl VextraError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            native_detail: None,
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Validation, message)
    }

    pub fn schema(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Schema, message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::NotFound, message)
    }

    pub fn configuration(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Configuration, message)
    }

    pub fn connection(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Connection, message)
    }

    pub fn rate_limit(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::RateLimit, message)
    }

    pub fn authentication(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Authentication, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Internal, message)
    }

    /// An unclassified backend failure. The raw text is kept verbatim in
    /// `native_detail` and the error maps to `InternalError`.
    pub fn opaque(detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Self {
            code: ErrorCode::Internal,
            message: "unclassified backend error".to_string(),
            native_detail: Some(detail),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.native_detail = Some(detail.into());
        self
    }
}

/// The error type surfaced by the unified client: a canonical code, the
/// provider it came from, and whether a retry is advisable.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("[{provider}] {}: {message}", code.name())]
pub struct UnifiedError {
    pub code: ErrorCode,
    pub message: String,
    pub transient: bool,
    pub provider: String,
    pub native_detail: Option<String>,
}
