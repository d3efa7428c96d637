//! The versioned JSON envelope shared by all commands.

use padic_heights::Error;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Precision {
    pub requested: i64,
    pub target: Option<i64>,
    /// Digits actually certified by the run; `None` for exact computations.
    pub achieved: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub pass: bool,
    pub precision: Precision,
    pub result: Value,
    pub error: Option<ErrorBody>,
}

/// A command's outcome before it is wrapped into a [`Report`].
pub struct Outcome {
    pub pass: bool,
    pub precision: Precision,
    pub result: Value,
}

pub fn error_body(e: &Error) -> ErrorBody {
    let debug = format!("{e:?}");
    let kind = debug.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    ErrorBody { kind, message: e.to_string() }
}

/// Errors caused by the request rather than by the mathematics.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::InvalidInput(_)
            | Error::PrimeMismatch(..)
            | Error::EvenPrimeUnsupported
            | Error::BadReduction
            | Error::NotMultiplicative(_)
    )
}

#[derive(Debug, Serialize)]
struct UsageReport<'a> {
    schema_version: u32,
    command: Option<&'a str>,
    error: ErrorBody,
}

pub fn usage_json(command: Option<&str>, kind: &str, message: &str) -> String {
    let r = UsageReport {
        schema_version: SCHEMA_VERSION,
        command,
        error: ErrorBody { kind: kind.into(), message: message.trim().into() },
    };
    serde_json::to_string(&r).expect("plain data serializes")
}
