//! Command implementations and the HTTP service. Each command is a function
//! from its arguments to the bytes it prints, so the binary, the service and
//! the tests share one code path.

pub mod commands;
pub mod service;

use serde::Serialize;
use thiserror::Error;
use zpstab::classifier::ClassifyError;
use zpstab::continuous::ContinuousError;
use zpstab::io::LoadError;
use zpstab::oracle::equivalence::PairError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Load { path: String, source: LoadError },
    #[error("{path}: {source}")]
    Curve { path: String, source: ContinuousError },
    #[error("{path}: {message}")]
    CurveParse { path: String, message: String },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<serde_json::Value>,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "IoError",
            CliError::Load { source, .. } => source.kind(),
            CliError::Curve { .. } | CliError::CurveParse { .. } => "CurveError",
            CliError::Classify(_) => "ClassifyError",
            CliError::Pair(_) => "PairError",
            CliError::Usage(_) => "UsageError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) => 64,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let detail = match self {
            CliError::Load { source, .. } => serde_json::to_value(source).ok(),
            CliError::Curve { source, .. } => serde_json::to_value(source).ok(),
            _ => None,
        };
        serde_json::to_string(&ErrorBody { error: self.kind(), message: self.to_string(), detail }).expect("error serializes")
    }
}
