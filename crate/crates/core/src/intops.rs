//! Integer multiplication and division by binary expansion.
//!
//! `a * b` is evaluated as `sum d_i 2^i a` over the binary digits `d_i` of
//! `b`, generating the digits and the doublings of `a` in one loop. Division
//! uses the same sum in reverse: find the largest doubling of the divisor that
//! fits, then halve it back down, subtracting wherever it still fits.
//!
//! All arithmetic is checked `u64`; a step that would wrap returns
//! [`Error::Overflow`] naming that step instead of a wrong answer.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::trace::{Inputs, Payload, Recorder, TraceLog, TraceResult};

/// Positions of the 1-digits of a non-negative integer, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryExpansion {
    positions: Vec<u32>,
}

impl BinaryExpansion {
    /// Builds an expansion from explicit positions. Returns `None` unless the
    /// positions are strictly ascending and each is below 64.
    pub fn from_positions(positions: Vec<u32>) -> Option<Self> {
        let ascending = positions.windows(2).all(|w| w[0] < w[1]);
        let in_range = positions.last().is_none_or(|&p| p < u64::BITS);
        (ascending && in_range).then_some(Self { positions })
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    /// `sum 2^i` over the positions.
    pub fn value(&self) -> u64 {
        self.positions.iter().fold(0, |acc, &i| acc | (1u64 << i))
    }

    /// Number of binary digits up to and including the highest 1.
    pub fn bit_length(&self) -> u32 {
        self.positions.last().map_or(0, |&p| p + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.positions.is_empty()
    }

    /// Whether digit `i` is 1.
    pub fn digit(&self, i: u32) -> bool {
        self.positions.binary_search(&i).is_ok()
    }
}

/// Binary digits of `n`, generated least significant first by repeated
/// halving.
pub fn binary_digits(n: u64) -> BinaryExpansion {
    let mut positions = Vec::new();
    let mut rest = n;
    let mut i = 0;
    while rest > 0 {
        if rest & 1 == 1 {
            positions.push(i);
        }
        rest >>= 1;
        i += 1;
    }
    BinaryExpansion { positions }
}

/// Quotient and remainder with `a = quotient * d + remainder`,
/// `remainder < d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuotRem {
    pub quotient: u64,
    pub remainder: u64,
}

impl QuotRem {
    /// Checks the defining identity against the operands it came from.
    pub fn satisfies(&self, a: u64, d: u64) -> bool {
        self.remainder < d
            && u128::from(self.quotient) * u128::from(d) + u128::from(self.remainder)
                == u128::from(a)
    }
}

/// Multiplies by doubling `a` once per binary digit of `b` and accumulating
/// the doublings that sit under a 1-digit.
///
/// Maintains `a0 * b0 == r + a * b`. When tracing, one row is recorded per
/// digit of `b` (its bit length), with `marked` set on the 1-digits.
///
/// The last doubling is skipped once `b` is exhausted, so every product that
/// fits in `u64` is computed without a spurious overflow.
pub fn egyptian_mul(a: u64, b: u64, trace: Option<&mut TraceLog>) -> Result<u64> {
    let mut rec = Recorder::start(trace, Inputs::EgyptianMul { a, b }, None);
    let outcome = mul_loop(a, b, &mut rec);
    rec.finish(outcome, |&value| TraceResult::Integer { value })
}

fn mul_loop(a0: u64, b0: u64, rec: &mut Recorder<'_>) -> Result<u64> {
    let product = u128::from(a0) * u128::from(b0);
    let holds = |r: u64, a: u64, b: u64| u128::from(r) + u128::from(a) * u128::from(b) == product;

    let (mut r, mut a, mut b) = (0u64, a0, b0);
    let mut power = 1u64;
    let mut step = 0u32;
    while b > 0 {
        step += 1;
        debug_assert!(
            holds(r, a, b),
            "egyptian_mul: invariant broken before step {step}"
        );
        let marked = b & 1 == 1;
        if marked {
            r = r
                .checked_add(a)
                .ok_or(Error::overflow("egyptian_mul", step, "accumulation"))?;
        }
        b >>= 1;
        rec.push(Payload::EgyptianMul {
            power,
            doubled: a,
            marked,
            accumulated: r,
            remaining: b,
        });
        if b > 0 {
            a = a
                .checked_add(a)
                .ok_or(Error::overflow("egyptian_mul", step, "doubling"))?;
            power <<= 1;
        }
        debug_assert!(
            holds(r, a, b),
            "egyptian_mul: invariant broken after step {step}"
        );
    }
    Ok(r)
}

/// Quotient and remainder by doubling and halving the divisor.
///
/// The divisor is doubled to `dd = 2^i d`, the least such multiple exceeding
/// `a`; then `dd` is halved back to `d`, doubling the quotient each time and
/// subtracting `dd` from the residue wherever it fits. `a = q * dd + r` holds
/// at every step. One trace event is recorded per halving, i.e. per quotient
/// digit from the most significant down.
pub fn div_qr(a: u64, d: u64, trace: Option<&mut TraceLog>) -> Result<QuotRem> {
    let mut rec = Recorder::start(trace, Inputs::DivQr { a, d }, None);
    let outcome = if d == 0 {
        Err(Error::ZeroDivisor)
    } else {
        div_loop(a, d, &mut rec)
    };
    rec.finish(outcome, |qr| TraceResult::QuotRem {
        quotient: qr.quotient,
        remainder: qr.remainder,
    })
}

fn div_loop(a: u64, d: u64, rec: &mut Recorder<'_>) -> Result<QuotRem> {
    let holds =
        |q: u64, dd: u64, r: u64| u128::from(q) * u128::from(dd) + u128::from(r) == u128::from(a);

    let (mut r, mut dd, mut q) = (a, d, 0u64);
    let mut position = 0u32;
    while dd <= r {
        dd = dd
            .checked_mul(2)
            .ok_or(Error::overflow("div_qr", position + 1, "doubling"))?;
        position += 1;
    }
    debug_assert!(holds(q, dd, r) && dd > r);

    while dd != d {
        debug_assert!(holds(q, dd, r));
        dd /= 2;
        q *= 2;
        position -= 1;
        debug_assert!(holds(q, dd, r));
        let residue_before = r;
        let fits = dd <= r;
        if fits {
            r -= dd;
            q += 1;
        }
        debug_assert!(holds(q, dd, r));
        rec.push(Payload::DivQr {
            position,
            multiple: dd,
            residue_before,
            digit: u8::from(fits),
            residue: r,
            quotient: q,
        });
    }
    Ok(QuotRem {
        quotient: q,
        remainder: r,
    })
}
