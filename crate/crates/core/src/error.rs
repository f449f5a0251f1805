use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain { field: &'static str, value: f64, expected: &'static str },
    /// Two inputs that must agree in shape do not.
    Mismatch(String),
    /// A numerically impossible state was reached.
    Internal(&'static str),
}

impl Error {
    pub(crate) fn domain(field: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain { field, value, expected }
    }

    /// Name of the offending input, when there is one.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::Domain { field, .. } => Some(field),
            _ => None,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { field, value, expected } => {
                write!(f, "`{field}` = {value} is invalid: expected {expected}")
            }
            Error::Mismatch(msg) => write!(f, "mismatched inputs: {msg}"),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Returns `Err(Domain)` unless `value` is finite and `pred(value)` holds.
pub(crate) fn require(
    field: &'static str,
    value: f64,
    expected: &'static str,
    pred: impl FnOnce(f64) -> bool,
) -> Result<f64> {
    if value.is_finite() && pred(value) {
        Ok(value)
    } else {
        Err(Error::domain(field, value, expected))
    }
}
