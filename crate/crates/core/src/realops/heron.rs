use crate::error::{Error, Result};
use crate::trace::{Inputs, Payload, Recorder, TraceLog, TraceResult};

use super::ToleranceConfig;

/// Outcome of a Heron run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtRun {
    pub root: f64,
    /// Number of updates performed; equals the number of trace events.
    pub iterations: u32,
}

/// Square root by Heron's rule `x <- (x + a/x) / 2`, starting from `x = 1`.
pub fn heron_sqrt(a: f64, cfg: &ToleranceConfig, trace: Option<&mut TraceLog>) -> Result<f64> {
    heron_run(a, cfg, trace).map(|run| run.root)
}

/// [`heron_sqrt`], also reporting the iteration count.
///
/// Stops when `|x - x'| <= heron_eps * x'` (relative mode) or
/// `|x - x'| < heron_eps` (absolute mode). `a = 0` returns 0 without
/// iterating, since the sequence only reaches 0 in the limit.
pub fn heron_run(a: f64, cfg: &ToleranceConfig, trace: Option<&mut TraceLog>) -> Result<SqrtRun> {
    let mut rec = Recorder::start(trace, Inputs::Heron { a }, Some(*cfg));
    let outcome = iterate(a, cfg, &mut rec);
    rec.finish(outcome, |run| TraceResult::Real { value: run.root })
}

fn iterate(a: f64, cfg: &ToleranceConfig, rec: &mut Recorder<'_>) -> Result<SqrtRun> {
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::domain("heron_sqrt", "operand must be finite"));
    }
    if a < 0.0 {
        return Err(Error::domain("heron_sqrt", "operand must be non-negative"));
    }
    if a == 0.0 {
        return Ok(SqrtRun {
            root: 0.0,
            iterations: 0,
        });
    }

    let eps = cfg.heron_eps;
    let mut x = 1.0f64;
    let mut iterations = 0u32;
    loop {
        let next = (x + a / x) / 2.0;
        let diff = x - next;
        x = next;
        iterations += 1;
        rec.push(Payload::Heron { iterate: x, diff });

        let converged = if cfg.heron_relative_mode {
            diff.abs() <= eps * x
        } else {
            -eps < diff && diff < eps
        };
        if converged {
            return Ok(SqrtRun {
                root: x,
                iterations,
            });
        }
        if iterations >= cfg.max_iterations {
            return Err(Error::NonConvergence {
                op: "heron_sqrt",
                iterations,
            });
        }
    }
}
