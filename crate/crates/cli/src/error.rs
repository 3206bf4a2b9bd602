use std::path::PathBuf;

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{input}: {source}")]
    Input {
        input: String,
        #[source]
        source: finlat_core::Error,
    },
    #[error(transparent)]
    Core(#[from] finlat_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn core(&self) -> Option<&finlat_core::Error> {
        match self {
            CliError::Input { source, .. } | CliError::Core(source) => Some(source),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match (self, self.core()) {
            (_, Some(finlat_core::Error::SizeLimit { .. })) => "budget_exceeded",
            (
                CliError::Input {
                    source: finlat_core::Error::Malformed(_),
                    ..
                },
                _,
            ) => "parse_error",
            (CliError::Input { .. }, _) => "invalid_input",
            (CliError::Io { .. }, _) => "io_error",
            (CliError::Usage(_), _) => "usage_error",
            (CliError::Core(_), _) => "invalid_input",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        if let Some(finlat_core::Error::SizeLimit {
            dimension,
            requested,
            limit,
        }) = self.core()
        {
            v["dimension"] = json!(dimension);
            v["requested"] = json!(requested);
            v["limit"] = json!(limit);
        }
        if let CliError::Input { input, .. } = self {
            v["input"] = json!(input);
        }
        v
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
