//! `a^(p/q)` and `a^t` by squaring and square-rooting.
//!
//! Both loops keep `a0^e0 = z * a^e` where `e` is the remaining exponent:
//! squaring the base halves `e`, a square root doubles it, and whenever
//! `e >= 1` one whole power of the base moves into `z`. They stop once the
//! base is within `pow_eps` of 1, where the remaining factor `a^e` with
//! `e < 2` no longer matters.

use crate::error::{Error, Result};
use crate::trace::{Inputs, Payload, PowAction, Recorder, TraceLog, TraceResult};

use super::heron::heron_sqrt;
use super::{RationalExponent, ToleranceConfig};

#[cfg(debug_assertions)]
use super::roughly_equal;

#[cfg(debug_assertions)]
const INVARIANT_REL: f64 = 1e-9;

/// `a^(p/q)` for `a > 0`.
///
/// First, while `p > q`, the base is squared and the exponent halved, by
/// halving `p` when it is even and doubling `q` otherwise. Then the exponent
/// is driven around 1: below 1 the base is square-rooted and `p` doubled,
/// above 1 one factor of the base is moved into the accumulator.
pub fn pow_rational(
    a: f64,
    e: RationalExponent,
    cfg: &ToleranceConfig,
    trace: Option<&mut TraceLog>,
) -> Result<f64> {
    let inputs = Inputs::PowRational {
        a,
        p: e.p(),
        q: e.q(),
    };
    let mut rec = Recorder::start(trace, inputs, Some(*cfg));
    let outcome = rational_loop(a, e.p(), e.q(), cfg, &mut rec);
    rec.finish(outcome, |&value| TraceResult::Real { value })
}

fn rational_loop(
    a0: f64,
    p0: u64,
    q0: u64,
    cfg: &ToleranceConfig,
    rec: &mut Recorder<'_>,
) -> Result<f64> {
    const OP: &str = "pow_rational";
    cfg.validate()?;
    check_base(OP, a0)?;

    #[cfg(debug_assertions)]
    let target = libm::pow(a0, p0 as f64 / q0 as f64);
    #[cfg(debug_assertions)]
    let holds = |z: f64, a: f64, p: u64, q: u64| {
        roughly_equal(target, z * libm::pow(a, p as f64 / q as f64), INVARIANT_REL)
    };

    let (mut a, mut p, mut q, mut z) = (a0, p0, q0, 1.0f64);
    let mut step = 0u32;

    while p > q {
        step += 1;
        if p % 2 == 0 {
            p /= 2;
        } else {
            q = q
                .checked_mul(2)
                .ok_or(Error::overflow(OP, step, "exponent denominator"))?;
        }
        a *= a;
        check_range(OP, step, a, "squaring")?;
        rec.push(Payload::PowRational {
            action: PowAction::Square,
            a,
            p,
            q,
            z,
        });
        debug_assert!(holds(z, a, p, q), "{OP}: invariant broken at step {step}");
        if step >= cfg.max_iterations {
            return Err(Error::NonConvergence {
                op: OP,
                iterations: step,
            });
        }
    }

    let mut rounds = 0u32;
    loop {
        if 1.0 - cfg.pow_eps < a && a < 1.0 + cfg.pow_eps {
            return Ok(z);
        }
        if p == q {
            step += 1;
            z *= a;
            check_range(OP, step, z, "final product")?;
            rec.push(Payload::PowRational {
                action: PowAction::Accumulate,
                a,
                p: 0,
                q,
                z,
            });
            return Ok(z);
        }
        step += 1;
        let action = if p < q {
            a = heron_sqrt(a, cfg, None)?;
            p = p
                .checked_mul(2)
                .ok_or(Error::overflow(OP, step, "exponent numerator"))?;
            PowAction::Root
        } else {
            p -= q;
            z *= a;
            check_range(OP, step, z, "accumulation")?;
            PowAction::Accumulate
        };
        rec.push(Payload::PowRational { action, a, p, q, z });
        debug_assert!(holds(z, a, p, q), "{OP}: invariant broken at step {step}");
        rounds += 1;
        if rounds >= cfg.max_iterations {
            return Err(Error::NonConvergence {
                op: OP,
                iterations: rounds,
            });
        }
    }
}

/// `a^t` for `a > 0`, `t >= 0`.
///
/// The exponent is first halved while the base is squared until `t <= 1`;
/// after that each round moves one unit of `t` into the accumulator if
/// `t >= 1`, then square-roots the base and doubles `t` if `t < 1`.
pub fn pow_real(
    a: f64,
    t: f64,
    cfg: &ToleranceConfig,
    trace: Option<&mut TraceLog>,
) -> Result<f64> {
    let mut rec = Recorder::start(trace, Inputs::PowReal { a, t }, Some(*cfg));
    let outcome = real_loop(a, t, cfg, &mut rec);
    rec.finish(outcome, |&value| TraceResult::Real { value })
}

fn real_loop(a0: f64, t0: f64, cfg: &ToleranceConfig, rec: &mut Recorder<'_>) -> Result<f64> {
    const OP: &str = "pow_real";
    cfg.validate()?;
    check_base(OP, a0)?;
    if !t0.is_finite() || t0 < 0.0 {
        return Err(Error::domain(
            OP,
            "exponent must be finite and non-negative",
        ));
    }

    #[cfg(debug_assertions)]
    let target = libm::pow(a0, t0);
    #[cfg(debug_assertions)]
    let holds = |z: f64, a: f64, t: f64| roughly_equal(target, z * libm::pow(a, t), INVARIANT_REL);

    let (mut a, mut t, mut z) = (a0, t0, 1.0f64);
    let mut step = 0u32;

    while t > 1.0 {
        step += 1;
        t /= 2.0;
        a *= a;
        check_range(OP, step, a, "squaring")?;
        rec.push(Payload::PowReal {
            action: PowAction::Square,
            a,
            t,
            z,
        });
        debug_assert!(holds(z, a, t), "{OP}: invariant broken at step {step}");
        if step >= cfg.max_iterations {
            return Err(Error::NonConvergence {
                op: OP,
                iterations: step,
            });
        }
    }

    let mut rounds = 0u32;
    while a < 1.0 - cfg.pow_eps || 1.0 + cfg.pow_eps < a {
        if t >= 1.0 {
            step += 1;
            t -= 1.0;
            z *= a;
            check_range(OP, step, z, "accumulation")?;
            rec.push(Payload::PowReal {
                action: PowAction::Accumulate,
                a,
                t,
                z,
            });
            debug_assert!(holds(z, a, t), "{OP}: invariant broken at step {step}");
        }
        if t < 1.0 {
            step += 1;
            t *= 2.0;
            a = heron_sqrt(a, cfg, None)?;
            rec.push(Payload::PowReal {
                action: PowAction::Root,
                a,
                t,
                z,
            });
            debug_assert!(holds(z, a, t), "{OP}: invariant broken at step {step}");
        }
        rounds += 1;
        if rounds >= cfg.max_iterations {
            return Err(Error::NonConvergence {
                op: OP,
                iterations: rounds,
            });
        }
    }
    Ok(z)
}

fn check_base(op: &'static str, a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(op, "base must be positive and finite"))
    }
}

/// Squaring or accumulating can leave the binary64 range: to infinity, or
/// to zero/subnormal where the relative error is no longer bounded.
fn check_range(op: &'static str, step: u32, v: f64, what: &'static str) -> Result<()> {
    if v.is_normal() {
        Ok(())
    } else {
        Err(Error::overflow(op, step, what))
    }
}
