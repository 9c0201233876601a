use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Coarse error class, stable across versions and used for exit codes and
/// trace results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ErrorKind {
    Domain,
    Overflow,
    NonConvergence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operand lies outside the operation's domain.
    Domain {
        op: &'static str,
        reason: &'static str,
    },
    /// Division by zero.
    ZeroDivisor,
    /// A value left the 64-bit integer or binary64 range. `step` is the
    /// 1-based loop step at which it happened.
    Overflow {
        op: &'static str,
        step: u32,
        what: &'static str,
    },
    /// The iteration cap was reached before the convergence test passed.
    NonConvergence { op: &'static str, iterations: u32 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain { .. } | Error::ZeroDivisor => ErrorKind::Domain,
            Error::Overflow { .. } => ErrorKind::Overflow,
            Error::NonConvergence { .. } => ErrorKind::NonConvergence,
        }
    }

    pub(crate) fn domain(op: &'static str, reason: &'static str) -> Self {
        Error::Domain { op, reason }
    }

    pub(crate) fn overflow(op: &'static str, step: u32, what: &'static str) -> Self {
        Error::Overflow { op, step, what }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { op, reason } => write!(f, "{op}: domain error: {reason}"),
            Error::ZeroDivisor => f.write_str("div_qr: division by zero"),
            Error::Overflow { op, step, what } => {
                write!(f, "{op}: overflow in {what} at step {step}")
            }
            Error::NonConvergence { op, iterations } => {
                write!(f, "{op}: no convergence after {iterations} iterations")
            }
        }
    }
}

impl core::error::Error for Error {}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Domain => "domain",
            ErrorKind::Overflow => "overflow",
            ErrorKind::NonConvergence => "non_convergence",
        })
    }
}
