// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid clock time {hour}:{minute:02} (hour must be 0..=11, minute 0..=59)")]
    InvalidTime { hour: u32, minute: u32 },

    #[error("cannot parse time {0:?}: expected HH:MM with hour 01-12 and minute 00-59")]
    TimeSyntax(String),

    #[error("{path}:{line}: {message}")]
    Schema {
        path: String,
        line: usize,
        message: String,
    },

    #[error("duplicate prediction id {0:?}")]
    DuplicatePrediction(String),

    #[error("duplicate annotation id {0:?}")]
    DuplicateAnnotation(String),

    #[error("duplicate record id {0:?}")]
    DuplicateId(String),

    #[error("prediction id {0:?} does not match any annotation")]
    UnknownPrediction(String),

    #[error("{0} requires non-empty input")]
    EmptyInput(&'static str),

    #[error("image path {0:?} must be a non-empty relative path")]
    InvalidImagePath(String),

    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("{name} out of range: {message}")]
    OutOfRange { name: &'static str, message: String },

    #[error("face radius {radius}px is too small: {what} needs at least {min}px")]
    FaceTooSmall {
        radius: u32,
        min: u32,
        what: &'static str,
    },

    #[error("cannot decode image {path}: {message}")]
    Decode { path: String, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn out_of_range(name: &'static str, message: impl Into<String>) -> Self {
        Error::OutOfRange {
            name,
            message: message.into(),
        }
    }

    /// Process exit code for this error: 2 for usage and configuration
    /// problems, 1 for everything that went wrong while processing data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::TimeSyntax(_)
            | Error::OutOfRange { .. }
            | Error::FaceTooSmall { .. } => 2,
            _ => 1,
        }
    }
}
