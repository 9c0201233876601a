//! Text and JSON renderings of `binexp-core` traces, and the `binexp`
//! command-line tool.

pub mod cli;
pub mod json;
pub mod render;

pub use json::{from_json, to_json, JsonError, SCHEMA_VERSION};
pub use render::{
    format_real, render_briggs, render_division, render_heron, render_log_digits, render_powers,
    render_rhind, render_text, RenderError,
};
