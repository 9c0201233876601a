//! Plain-text renderings of trace logs.
//!
//! [`render_rhind`] draws the doubling table of a multiplication. The other
//! renderers print exactly one line per trace event. Output is a pure
//! function of the log, uses `\n` line endings and ends with a newline.

use std::fmt::Write;

use binexp_core::{Algorithm, Payload, PowAction, TraceLog, TraceResult};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("expected a {} trace, found {}", expected.name(), found.map_or("an empty log", |a| a.name()))]
    SchemaMismatch {
        expected: Algorithm,
        found: Option<Algorithm>,
    },
}

/// Formats a real in its shortest round-trip form, switching to exponent
/// notation outside `[1e-5, 1e16)`.
pub fn format_real(x: f64) -> String {
    let magnitude = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&magnitude) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn expect(log: &TraceLog, expected: &[Algorithm]) -> Result<Algorithm, RenderError> {
    match log.algorithm() {
        Some(found) if expected.contains(&found) => Ok(found),
        found => Err(RenderError::SchemaMismatch {
            expected: expected[0],
            found,
        }),
    }
}

fn mismatch(expected: Algorithm, payload: &Payload) -> RenderError {
    RenderError::SchemaMismatch {
        expected,
        found: Some(payload.algorithm()),
    }
}

/// Doubling table of a multiplication: one row per power of two, `\` in the
/// margin of the rows that are added up, a rule, and the totals.
///
/// ```text
///     \  1   27
///     \  2   54
///     \  4  108
///        8  216
///     \ 16  432
/// -------------
/// Total 23  621
/// ```
pub fn render_rhind(log: &TraceLog) -> Result<String, RenderError> {
    expect(log, &[Algorithm::EgyptianMul])?;
    let mut rows = Vec::with_capacity(log.len());
    for event in log.events() {
        match event.payload {
            Payload::EgyptianMul {
                power,
                doubled,
                marked,
                ..
            } => rows.push((power, doubled, marked)),
            ref other => return Err(mismatch(Algorithm::EgyptianMul, other)),
        }
    }
    let multiplier: u64 = rows.iter().filter(|r| r.2).map(|r| r.0).sum();
    let total = match log.result() {
        Some(TraceResult::Integer { value }) => value.to_string(),
        Some(TraceResult::Error { error }) => error.to_string(),
        _ => "?".to_owned(),
    };

    let left = rows
        .iter()
        .map(|r| digits(r.0))
        .chain([digits(multiplier)])
        .max()
        .unwrap_or(1);
    let right = rows
        .iter()
        .map(|r| digits(r.1))
        .chain([total.len()])
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    for (power, doubled, marked) in rows {
        let mark = if marked { "\\" } else { "" };
        writeln!(out, "{mark:>5} {power:>left$}  {doubled:>right$}").unwrap();
    }
    writeln!(out, "{}", "-".repeat(5 + 1 + left + 2 + right)).unwrap();
    writeln!(out, "Total {multiplier:>left$}  {total:>right$}").unwrap();
    Ok(out)
}

fn digits(n: u64) -> usize {
    n.checked_ilog10().map_or(1, |d| d as usize + 1)
}

/// The subtraction chain of a division, most significant quotient digit
/// first: `d4=1  626 - 432 = 194`, or `d3=0  194 < 216` where the doubled
/// divisor does not fit.
pub fn render_division(log: &TraceLog) -> Result<String, RenderError> {
    expect(log, &[Algorithm::DivQr])?;
    let mut steps = Vec::with_capacity(log.len());
    for event in log.events() {
        match event.payload {
            Payload::DivQr {
                position,
                multiple,
                residue_before,
                digit,
                residue,
                ..
            } => steps.push((position, multiple, residue_before, digit, residue)),
            ref other => return Err(mismatch(Algorithm::DivQr, other)),
        }
    }
    let label = steps
        .iter()
        .map(|s| format!("d{}={}", s.0, s.3).len())
        .max()
        .unwrap_or(0);
    let width = steps
        .iter()
        .map(|s| digits(s.2).max(digits(s.1)))
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    for (position, multiple, before, digit, after) in steps {
        let tag = format!("d{position}={digit}");
        if digit == 1 {
            writeln!(
                out,
                "{tag:<label$}  {before:>width$} - {multiple:>width$} = {after}"
            )
            .unwrap();
        } else {
            writeln!(out, "{tag:<label$}  {before:>width$} < {multiple:>width$}").unwrap();
        }
    }
    Ok(out)
}

/// Heron iterates: `x1 = 1.5  (diff -0.5)`.
pub fn render_heron(log: &TraceLog) -> Result<String, RenderError> {
    expect(log, &[Algorithm::Heron])?;
    let mut out = String::new();
    for event in log.events() {
        match event.payload {
            Payload::Heron { iterate, diff } => {
                let x = format!("x{} = {}", event.step, format_real(iterate));
                writeln!(out, "{x:<30}  (diff {})", format_real(diff)).unwrap();
            }
            ref other => return Err(mismatch(Algorithm::Heron, other)),
        }
    }
    Ok(out)
}

/// Logarithm digit extraction, one line per square root of the base.
pub fn render_log_digits(log: &TraceLog) -> Result<String, RenderError> {
    expect(log, &[Algorithm::LogBase])?;
    let mut out = String::new();
    for event in log.events() {
        match event.payload {
            Payload::LogBase {
                k,
                root,
                digit,
                z,
                x,
                ..
            } => {
                writeln!(
                    out,
                    "k={k:<3} d={digit}  root={:<22} z={:<22} x={}",
                    format_real(root),
                    format_real(z),
                    format_real(x)
                )
                .unwrap();
            }
            ref other => return Err(mismatch(Algorithm::LogBase, other)),
        }
    }
    Ok(out)
}

/// Iterated square roots, one per line.
pub fn render_briggs(log: &TraceLog) -> Result<String, RenderError> {
    expect(log, &[Algorithm::Briggs])?;
    let mut out = String::new();
    for event in log.events() {
        match event.payload {
            Payload::Briggs { k, value } => {
                writeln!(out, "{k:>3}  {}", format_real(value)).unwrap();
            }
            ref other => return Err(mismatch(Algorithm::Briggs, other)),
        }
    }
    Ok(out)
}

/// Steps of either power loop: the rewrite applied and the state after it.
pub fn render_powers(log: &TraceLog) -> Result<String, RenderError> {
    let algorithm = expect(log, &[Algorithm::PowReal, Algorithm::PowRational])?;
    let mut out = String::new();
    for event in log.events() {
        let (action, a, exponent, z) = match event.payload {
            Payload::PowReal { action, a, t, z } => (action, a, format!("t={}", format_real(t)), z),
            Payload::PowRational { action, a, p, q, z } => (action, a, format!("p/q={p}/{q}"), z),
            ref other => return Err(mismatch(algorithm, other)),
        };
        let action = match action {
            PowAction::Square => "square",
            PowAction::Root => "root",
            PowAction::Accumulate => "accumulate",
        };
        writeln!(
            out,
            "{:>3}  {action:<10}  a={:<22} {exponent:<16} z={}",
            event.step,
            format_real(a),
            format_real(z)
        )
        .unwrap();
    }
    Ok(out)
}

/// Picks the renderer matching the log's algorithm.
pub fn render_text(log: &TraceLog) -> Result<String, RenderError> {
    match log.algorithm() {
        Some(Algorithm::EgyptianMul) => render_rhind(log),
        Some(Algorithm::DivQr) => render_division(log),
        Some(Algorithm::Heron) => render_heron(log),
        Some(Algorithm::PowRational | Algorithm::PowReal) => render_powers(log),
        Some(Algorithm::LogBase) => render_log_digits(log),
        Some(Algorithm::Briggs) => render_briggs(log),
        None => Err(RenderError::SchemaMismatch {
            expected: Algorithm::EgyptianMul,
            found: None,
        }),
    }
}
