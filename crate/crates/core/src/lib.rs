//! Arithmetic by binary expansion.
//!
//! Multiplication writes one operand as a sum of powers of two and turns the
//! product into a sum of doublings; division runs the same identity backwards
//! by halving. Exponentiation follows the same pattern one level up, with
//! squaring in place of doubling and square roots in place of halving, which
//! yields fractional powers and logarithms to any base.
//!
//! Every algorithm keeps its loop invariant as a `debug_assert!` and can
//! record each step into a [`TraceLog`].
//!
//! ```
//! use binexp_core::{div_qr, egyptian_mul};
//!
//! assert_eq!(egyptian_mul(27, 23, None).unwrap(), 621);
//! let qr = div_qr(626, 27, None).unwrap();
//! assert_eq!((qr.quotient, qr.remainder), (23, 5));
//! ```

#![no_std]

extern crate alloc;

mod error;
pub mod intops;
pub mod realops;
pub mod trace;

pub use error::{Error, ErrorKind, Result};
pub use intops::{binary_digits, div_qr, egyptian_mul, BinaryExpansion, QuotRem};
pub use realops::{
    briggs_chain, heron_run, heron_sqrt, log_base, pow_rational, pow_real, BinaryFraction,
    BriggsChain, RationalExponent, SqrtMode, SqrtRun, ToleranceConfig,
};
pub use trace::{
    Algorithm, Inputs, LogShapeError, Payload, PowAction, TraceEvent, TraceHeader, TraceLog,
    TraceResult,
};
