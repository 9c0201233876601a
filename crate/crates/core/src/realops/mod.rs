//! Square roots, fractional powers and logarithms in binary64.
//!
//! Squaring and square-rooting play the roles that doubling and halving play
//! for integers: `a^t` is evaluated by walking the binary expansion of `t`,
//! and `log_b a` is recovered digit by digit from the chain `b, √b, √√b, ...`.

use alloc::vec::Vec;

use crate::error::{Error, Result};

mod briggs;
mod heron;
mod log;
mod pow;

pub use briggs::briggs_chain;
pub use heron::{heron_run, heron_sqrt, SqrtRun};
pub use log::log_base;
pub use pow::{pow_rational, pow_real};

/// Convergence thresholds and iteration caps shared by the real-valued
/// algorithms.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ToleranceConfig {
    /// Heron stops once successive iterates differ by at most this much,
    /// relative to the iterate (or absolutely, see `heron_relative_mode`).
    pub heron_eps: f64,
    /// The power loops stop once the base is within this distance of 1.
    pub pow_eps: f64,
    /// Cap on iterations of any single loop.
    pub max_iterations: u32,
    /// `false` selects the absolute test `|x - x'| < eps`, which only
    /// terminates for roots small enough that `eps` exceeds their spacing.
    pub heron_relative_mode: bool,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            heron_eps: 1.0e-16,
            pow_eps: 1.0e-14,
            max_iterations: 1100,
            heron_relative_mode: true,
        }
    }
}

impl ToleranceConfig {
    /// Default thresholds with Heron's absolute stopping test.
    pub fn absolute() -> Self {
        Self {
            heron_relative_mode: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |eps: f64| eps.is_finite() && eps > 0.0;
        if !positive(self.heron_eps) {
            return Err(Error::domain(
                "config",
                "heron_eps must be positive and finite",
            ));
        }
        if !positive(self.pow_eps) {
            return Err(Error::domain(
                "config",
                "pow_eps must be positive and finite",
            ));
        }
        if self.max_iterations == 0 {
            return Err(Error::domain("config", "max_iterations must be at least 1"));
        }
        Ok(())
    }
}

/// Exponent `p/q` with `p >= 0`, `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    p: u64,
    q: u64,
}

impl RationalExponent {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::domain(
                "pow_rational",
                "denominator must be positive",
            ));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

/// Logarithm digits `d_1 d_2 ...` after the binary point, most significant
/// first, and their value `sum d_i 2^-i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryFraction {
    digits: Vec<u8>,
    value: f64,
}

impl BinaryFraction {
    pub(crate) fn new(digits: Vec<u8>, value: f64) -> Self {
        Self { digits, value }
    }

    /// One entry per step of the square-root chain; each is 0 or 1.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

/// Square-root implementation used for a Briggs chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SqrtMode {
    /// IEEE 754 square root, correctly rounded.
    #[default]
    CorrectlyRounded,
    /// [`heron_sqrt`] under the supplied config.
    Heron,
}

/// Successive square roots of `base`, every one strictly above 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BriggsChain {
    base: f64,
    values: Vec<f64>,
}

impl BriggsChain {
    pub fn base(&self) -> f64 {
        self.base
    }

    /// `√base, √√base, ...` in order of computation.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of distinct roots produced before the iterate reached 1.
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

/// Relative closeness used by the debug-build invariant checks. Values
/// outside the normal binary64 range are not judged.
#[cfg(debug_assertions)]
pub(crate) fn roughly_equal(x: f64, y: f64, rel: f64) -> bool {
    if !(x.is_normal() && y.is_normal()) {
        return true;
    }
    (x - y).abs() <= rel * x.abs().max(y.abs())
}
