//! Logarithms to any base by digit extraction over the square-root chain.
//!
//! With `b^x = a`, `0 <= x < 1`, the `k`-th binary digit of `x` is 1 exactly
//! when multiplying the accumulated power `z = b^(d_1 .. d_{k-1})` by
//! `b^(2^-k)` does not overshoot `a`. The comparison is non-strict so that
//! logarithms with a finite binary expansion (`log_4 2 = 0.1`) come out as
//! that expansion rather than `0.0111...`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::trace::{Inputs, Payload, Recorder, TraceLog, TraceResult};

use super::heron::heron_sqrt;
use super::{BinaryFraction, ToleranceConfig};

/// Safety cap on the square-root chain. Binary64 reaches 1 in at most about
/// 62 roots (for bases near `f64::MAX`).
pub(crate) const MAX_CHAIN: u32 = 64;

/// `log_b a` for `b > 1`, `1 <= a < b`, as a binary fraction.
///
/// The base is square-rooted with [`heron_sqrt`] until it no longer exceeds
/// 1; each root contributes one digit.
pub fn log_base(
    b: f64,
    a: f64,
    cfg: &ToleranceConfig,
    trace: Option<&mut TraceLog>,
) -> Result<BinaryFraction> {
    let mut rec = Recorder::start(trace, Inputs::LogBase { b, a }, Some(*cfg));
    let outcome = extract_digits(b, a, cfg, &mut rec);
    rec.finish(outcome, |f| TraceResult::Fraction {
        value: f.value(),
        digits: f.digits().to_vec(),
    })
}

fn extract_digits(
    b0: f64,
    a: f64,
    cfg: &ToleranceConfig,
    rec: &mut Recorder<'_>,
) -> Result<BinaryFraction> {
    const OP: &str = "log_base";
    cfg.validate()?;
    if !(b0.is_finite() && b0 > 1.0) {
        return Err(Error::domain(OP, "base must be finite and greater than 1"));
    }
    if !(a >= 1.0 && a < b0) {
        return Err(Error::domain(OP, "argument must satisfy 1 <= a < b"));
    }

    let (mut root, mut z, mut frac, mut x) = (b0, 1.0f64, 1.0f64, 0.0f64);
    let mut digits = Vec::new();
    let mut k = 0u32;
    while root > 1.0 {
        k += 1;
        if k > MAX_CHAIN {
            return Err(Error::NonConvergence {
                op: OP,
                iterations: MAX_CHAIN,
            });
        }
        root = heron_sqrt(root, cfg, None)?;
        frac /= 2.0;
        // A root that has reached 1 carries no more information.
        let digit = root > 1.0 && z * root <= a;
        if digit {
            z *= root;
            x += frac;
        }
        digits.push(u8::from(digit));
        rec.push(Payload::LogBase {
            k,
            root,
            frac,
            digit: u8::from(digit),
            z,
            x,
        });
        debug_assert!(frac == libm::ldexp(1.0, -(k as i32)));
        debug_assert!(
            super::roughly_equal(z, libm::pow(b0, x), 1e-9),
            "{OP}: z drifted from b^x at digit {k}"
        );
    }
    Ok(BinaryFraction::new(digits, x))
}
