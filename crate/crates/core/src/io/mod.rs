//! Reading and writing elections.
//!
//! Two families of formats are supported: Preflib order files
//! (`soc`, `soi`, `toc`, `toi`, both the legacy numeric header and the
//! `# ALTERNATIVE NAME` metadata header) and a native JSON format tagged
//! `"format": "stable-tally/1"` for profiles and margin graphs.

use std::fmt;
use std::path::Path;

use crate::methods::Election;

mod json;
mod preflib;

pub use json::{
    parse_json, parse_margin_graph, parse_profile_json, write_margin_graph, write_profile_json,
    JsonDocument, FORMAT_TAG,
};
pub use preflib::{parse_preflib, write_preflib, PreflibDocument, PreflibKind};

/// A parse failure, located by line number (text formats) or field path
/// (JSON).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ParseError {
    pub fn at_line(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: Some(line),
            field: None,
            message: message.into(),
        }
    }

    pub fn at_field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }

    pub fn general(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            field: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.field) {
            (Some(line), _) => write!(f, "line {line}: {}", self.message),
            (None, Some(field)) => write!(f, "{field}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// How an input file should be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Preflib(PreflibKind),
    Json,
}

impl InputFormat {
    /// Picks a format from the file extension, falling back to sniffing the
    /// text.
    pub fn detect(path: Option<&Path>, text: &str) -> InputFormat {
        if let Some(ext) = path.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            if ext.eq_ignore_ascii_case("json") {
                return InputFormat::Json;
            }
            if let Some(kind) = PreflibKind::from_extension(ext) {
                return InputFormat::Preflib(kind);
            }
        }
        if text.trim_start().starts_with('{') {
            return InputFormat::Json;
        }
        InputFormat::Preflib(PreflibKind::from_header(text).unwrap_or(PreflibKind::Toi))
    }
}

/// Parses any supported input into an [`Election`].
pub fn parse_election(text: &str, format: InputFormat) -> Result<Election, ParseError> {
    match format {
        InputFormat::Preflib(kind) => Ok(Election::from_profile(parse_preflib(text, kind)?)),
        InputFormat::Json => Ok(match parse_json(text)? {
            JsonDocument::Profile(p) => Election::from_profile(p),
            JsonDocument::MarginGraph(g) => Election::from_graph(g),
        }),
    }
}
