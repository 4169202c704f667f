//! Exit codes and the JSON error object written to stderr.

use std::fmt::Display;

use seamkit_core::{Error, ErrorKind};
use serde::Serialize;

pub const USAGE: i32 = 1;
pub const IO: i32 = 2;
pub const NUMERIC: i32 = 3;

#[derive(Debug, Serialize)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    pub context: Vec<String>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
            context: Vec::new(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: IO,
            message: message.into(),
            context: Vec::new(),
        }
    }

    /// Adds an outer context entry (outermost first).
    pub fn within(mut self, ctx: impl Display) -> Self {
        self.context.insert(0, ctx.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("failure serializes")
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Usage => USAGE,
            ErrorKind::Io => IO,
            ErrorKind::Numeric => NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
            context: Vec::new(),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;
