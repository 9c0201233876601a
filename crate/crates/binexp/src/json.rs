//! JSON form of a trace log.
//!
//! A document is one object:
//!
//! ```json
//! {
//!   "schema": 1,
//!   "algorithm": "div_qr",
//!   "inputs": { "a": 626, "d": 27 },
//!   "config": null,
//!   "events": [ { "step": 1, "kind": "div_qr", ... } ],
//!   "result": { "kind": "quot_rem", "quotient": 23, "remainder": 5 }
//! }
//! ```
//!
//! Reals are written in shortest round-trip form, so parsing a document
//! restores every value bit for bit. A log without a header omits
//! `algorithm`, `inputs` and `config`.

use binexp_core::{LogShapeError, TraceEvent, TraceHeader, TraceLog, TraceResult};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version written to and required in the `schema` field.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed trace document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unsupported schema version {0}, expected {SCHEMA_VERSION}")]
    Schema(u64),
    #[error("trace document has no usable header")]
    Header,
    #[error("inconsistent trace: {0}")]
    Shape(#[from] LogShapeError),
}

#[derive(Serialize)]
struct DocumentRef<'a> {
    schema: u32,
    #[serde(flatten)]
    header: Option<&'a TraceHeader>,
    events: &'a [TraceEvent],
    result: Option<&'a TraceResult>,
}

#[derive(Deserialize)]
struct Document {
    schema: u64,
    #[serde(flatten)]
    header: Option<TraceHeader>,
    events: Vec<TraceEvent>,
    #[serde(default)]
    result: Option<TraceResult>,
}

/// Pretty-printed document, without a trailing newline.
pub fn to_json(log: &TraceLog) -> String {
    let doc = DocumentRef {
        schema: SCHEMA_VERSION,
        header: log.header(),
        events: log.events(),
        result: log.result(),
    };
    serde_json::to_string_pretty(&doc).expect("trace logs always serialize")
}

/// Parses a document produced by [`to_json`].
pub fn from_json(text: &str) -> Result<TraceLog, JsonError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let has_header = value.get("algorithm").is_some();
    let doc: Document = serde_json::from_value(value)?;
    if doc.schema != u64::from(SCHEMA_VERSION) {
        return Err(JsonError::Schema(doc.schema));
    }
    // A flattened optional header that fails to parse comes back as `None`.
    if has_header != doc.header.is_some() {
        return Err(JsonError::Header);
    }
    Ok(TraceLog::from_parts(doc.header, doc.events, doc.result)?)
}
