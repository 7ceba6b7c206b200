//! Command-line surface of `tiling-core`: JSON system documents in, deterministic
//! JSON reports out.

pub mod app;
pub mod document;
pub mod report;

pub use app::{run, Outcome};
pub use document::{emit_system, parse_system, DocumentError, ParsedSystem, SystemDocument};
