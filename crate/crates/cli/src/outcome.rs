use std::path::{Path, PathBuf};

use qeuler::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug)]
pub struct CommandOutcome {
    pub code: u8,
    pub report: String,
    pub artifact: Option<PathBuf>,
}

impl CommandOutcome {
    pub fn new(passed: bool, report: String) -> Self {
        Self { code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED }, report, artifact: None }
    }

    pub fn with_artifact(mut self, path: Option<&Path>) -> Self {
        self.artifact = path.map(Path::to_path_buf);
        self
    }
}

/// A failure that ends the command before any report.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoOrthogonalMate { .. } | Error::NotAnOls(_) | Error::InvalidDesign(_) => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CmdResult = std::result::Result<CommandOutcome, Failure>;

/// Fifteen significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("malformed JSON in {}: {e}", path.display())))
}
