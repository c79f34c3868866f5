use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// A report section that is either computed or skipped with a reason. Both
/// keys are always present.
#[derive(Debug, Serialize)]
pub struct Stage<T> {
    pub result: Option<T>,
    pub reason: Option<String>,
}

impl<T> Stage<T> {
    pub fn done(value: T) -> Self {
        Stage { result: Some(value), reason: None }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Stage { result: None, reason: Some(reason.into()) }
    }

    pub fn from_result<E: std::fmt::Display>(r: Result<T, E>) -> Self {
        match r {
            Ok(v) => Self::done(v),
            Err(e) => Self::skipped(e.to_string()),
        }
    }

    pub fn get(&self) -> Option<&T> {
        self.result.as_ref()
    }
}

#[derive(Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn of(path: &Path) -> anyhow::Result<Self> {
        let bytes = std::fs::read(path).map_err(|source| altafini_core::Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(InputFile {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Inputs {
    pub files: Vec<InputFile>,
    pub seed: u64,
    pub detection_tolerance: f64,
    pub row_sum_tolerance: f64,
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: env!("CARGO_PKG_NAME"),
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CrossCheck {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CrossCheck { name: name.into(), passed, detail: detail.into() }
    }
}
