//! Step records for traced runs.
//!
//! Every operation accepts an optional `&mut TraceLog`. When one is supplied
//! the operation overwrites it with its inputs, one [`TraceEvent`] per loop
//! step, and the final result (or error class). Tracing never changes the
//! numbers an operation computes.

use alloc::vec::Vec;

use crate::error::{Error, ErrorKind};
use crate::realops::{SqrtMode, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Algorithm {
    EgyptianMul,
    DivQr,
    Heron,
    PowRational,
    PowReal,
    LogBase,
    Briggs,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::EgyptianMul => "egyptian_mul",
            Algorithm::DivQr => "div_qr",
            Algorithm::Heron => "heron",
            Algorithm::PowRational => "pow_rational",
            Algorithm::PowReal => "pow_real",
            Algorithm::LogBase => "log_base",
            Algorithm::Briggs => "briggs",
        }
    }
}

/// Operands of a traced run, tagged by algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(
    feature = "serde",
    serde(tag = "algorithm", content = "inputs", rename_all = "snake_case")
)]
pub enum Inputs {
    EgyptianMul { a: u64, b: u64 },
    DivQr { a: u64, d: u64 },
    Heron { a: f64 },
    PowRational { a: f64, p: u64, q: u64 },
    PowReal { a: f64, t: f64 },
    LogBase { b: f64, a: f64 },
    Briggs { b: f64, sqrt_mode: SqrtMode },
}

impl Inputs {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Inputs::EgyptianMul { .. } => Algorithm::EgyptianMul,
            Inputs::DivQr { .. } => Algorithm::DivQr,
            Inputs::Heron { .. } => Algorithm::Heron,
            Inputs::PowRational { .. } => Algorithm::PowRational,
            Inputs::PowReal { .. } => Algorithm::PowReal,
            Inputs::LogBase { .. } => Algorithm::LogBase,
            Inputs::Briggs { .. } => Algorithm::Briggs,
        }
    }
}

/// Which rewrite a power loop applied in one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PowAction {
    /// Base squared, exponent halved.
    Square,
    /// Base replaced by its square root, exponent doubled.
    Root,
    /// One whole unit of exponent moved from the base into the accumulator.
    Accumulate,
}

/// Per-step state. The field set is fixed per algorithm; all values are the
/// state *after* the step.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum Payload {
    /// One doubling row: `doubled = a * power`, `marked` when the matching
    /// binary digit of the multiplier is 1.
    EgyptianMul {
        power: u64,
        doubled: u64,
        marked: bool,
        accumulated: u64,
        remaining: u64,
    },
    /// One halving step; `multiple = d * 2^position`.
    DivQr {
        position: u32,
        multiple: u64,
        residue_before: u64,
        digit: u8,
        residue: u64,
        quotient: u64,
    },
    Heron {
        iterate: f64,
        diff: f64,
    },
    PowRational {
        action: PowAction,
        a: f64,
        p: u64,
        q: u64,
        z: f64,
    },
    PowReal {
        action: PowAction,
        a: f64,
        t: f64,
        z: f64,
    },
    LogBase {
        k: u32,
        root: f64,
        frac: f64,
        digit: u8,
        z: f64,
        x: f64,
    },
    Briggs {
        k: u32,
        value: f64,
    },
}

impl Payload {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Payload::EgyptianMul { .. } => Algorithm::EgyptianMul,
            Payload::DivQr { .. } => Algorithm::DivQr,
            Payload::Heron { .. } => Algorithm::Heron,
            Payload::PowRational { .. } => Algorithm::PowRational,
            Payload::PowReal { .. } => Algorithm::PowReal,
            Payload::LogBase { .. } => Algorithm::LogBase,
            Payload::Briggs { .. } => Algorithm::Briggs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceEvent {
    /// 1-based, contiguous within a log.
    pub step: u32,
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum TraceResult {
    Integer { value: u64 },
    QuotRem { quotient: u64, remainder: u64 },
    Real { value: f64 },
    Fraction { value: f64, digits: Vec<u8> },
    Count { count: u64 },
    Error { error: ErrorKind },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceHeader {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub inputs: Inputs,
    pub config: Option<ToleranceConfig>,
}

/// Record of one run. Created empty, filled by the operation it is handed to.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TraceLog {
    header: Option<TraceHeader>,
    events: Vec<TraceEvent>,
    result: Option<TraceResult>,
}

/// Structural problems found when assembling a log from parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogShapeError {
    /// Step numbers are not 1, 2, 3, ...
    StepGap { index: usize, step: u32 },
    /// An event payload belongs to another algorithm than the header.
    ForeignEvent { index: usize },
    /// Events or a result without a header.
    MissingHeader,
}

impl core::fmt::Display for LogShapeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LogShapeError::StepGap { index, step } => {
                write!(f, "event {index} has step {step}, expected {}", index + 1)
            }
            LogShapeError::ForeignEvent { index } => {
                write!(f, "event {index} does not match the log's algorithm")
            }
            LogShapeError::MissingHeader => f.write_str("log has events but no header"),
        }
    }
}

impl core::error::Error for LogShapeError {}

impl TraceLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reassemble a log, e.g. after parsing it back from JSON.
    pub fn from_parts(
        header: Option<TraceHeader>,
        events: Vec<TraceEvent>,
        result: Option<TraceResult>,
    ) -> Result<Self, LogShapeError> {
        let Some(h) = &header else {
            if events.is_empty() && result.is_none() {
                return Ok(Self::default());
            }
            return Err(LogShapeError::MissingHeader);
        };
        let algorithm = h.inputs.algorithm();
        for (index, event) in events.iter().enumerate() {
            if event.step as usize != index + 1 {
                return Err(LogShapeError::StepGap {
                    index,
                    step: event.step,
                });
            }
            if event.payload.algorithm() != algorithm {
                return Err(LogShapeError::ForeignEvent { index });
            }
        }
        Ok(Self {
            header,
            events,
            result,
        })
    }

    pub fn header(&self) -> Option<&TraceHeader> {
        self.header.as_ref()
    }

    pub fn algorithm(&self) -> Option<Algorithm> {
        self.header.as_ref().map(|h| h.inputs.algorithm())
    }

    pub fn inputs(&self) -> Option<&Inputs> {
        self.header.as_ref().map(|h| &h.inputs)
    }

    pub fn config(&self) -> Option<&ToleranceConfig> {
        self.header.as_ref().and_then(|h| h.config.as_ref())
    }

    pub fn events(&self) -> &[TraceEvent] {
        &self.events
    }

    pub fn result(&self) -> Option<&TraceResult> {
        self.result.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }
}

/// Write side of an optional trace, used by the algorithms.
pub(crate) struct Recorder<'a> {
    log: Option<&'a mut TraceLog>,
}

impl<'a> Recorder<'a> {
    pub(crate) fn start(
        mut log: Option<&'a mut TraceLog>,
        inputs: Inputs,
        config: Option<ToleranceConfig>,
    ) -> Self {
        if let Some(log) = log.as_deref_mut() {
            log.header = Some(TraceHeader { inputs, config });
            log.events.clear();
            log.result = None;
        }
        Recorder { log }
    }

    pub(crate) fn push(&mut self, payload: Payload) {
        if let Some(log) = self.log.as_deref_mut() {
            let step = log.events.len() as u32 + 1;
            log.events.push(TraceEvent { step, payload });
        }
    }

    pub(crate) fn finish<T>(
        self,
        outcome: Result<T, Error>,
        summarize: impl FnOnce(&T) -> TraceResult,
    ) -> Result<T, Error> {
        if let Some(log) = self.log {
            log.result = Some(match &outcome {
                Ok(value) => summarize(value),
                Err(e) => TraceResult::Error { error: e.kind() },
            });
        }
        outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn row(step: u32) -> TraceEvent {
        TraceEvent {
            step,
            payload: Payload::Briggs {
                k: step,
                value: 2.0,
            },
        }
    }

    #[test]
    fn from_parts_checks_step_order() {
        let header = TraceHeader {
            inputs: Inputs::Briggs {
                b: 4.0,
                sqrt_mode: SqrtMode::CorrectlyRounded,
            },
            config: None,
        };
        assert!(TraceLog::from_parts(Some(header.clone()), vec![row(1), row(2)], None).is_ok());
        assert_eq!(
            TraceLog::from_parts(Some(header), vec![row(1), row(3)], None),
            Err(LogShapeError::StepGap { index: 1, step: 3 })
        );
    }

    #[test]
    fn from_parts_rejects_foreign_events() {
        let header = TraceHeader {
            inputs: Inputs::Heron { a: 2.0 },
            config: None,
        };
        assert_eq!(
            TraceLog::from_parts(Some(header), vec![row(1)], None),
            Err(LogShapeError::ForeignEvent { index: 0 })
        );
        assert_eq!(
            TraceLog::from_parts(None, vec![row(1)], None),
            Err(LogShapeError::MissingHeader)
        );
    }

    #[test]
    fn recorder_overwrites_previous_run() {
        let mut log = TraceLog::new();
        let mut rec = Recorder::start(Some(&mut log), Inputs::Heron { a: 1.0 }, None);
        rec.push(Payload::Heron {
            iterate: 1.0,
            diff: 0.0,
        });
        let _ = rec.finish(Ok(1.0), |v| TraceResult::Real { value: *v });
        assert_eq!(log.len(), 1);

        let rec = Recorder::start(Some(&mut log), Inputs::Heron { a: 0.0 }, None);
        let _ = rec.finish(Ok(0.0), |v| TraceResult::Real { value: *v });
        assert!(log.is_empty());
        assert_eq!(log.result(), Some(&TraceResult::Real { value: 0.0 }));
    }
}
