//! Report layout, fingerprints, CSV export and exit codes.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use hallforge::dha::Mismatch;
use hallforge::Error as EngineError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Engine(EngineError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Csv(_) => EXIT_USAGE,
            CliError::Engine(e) => match e {
                EngineError::EnumerationTooLarge { .. } => EXIT_RESOURCE,
                EngineError::InternalInconsistency(_)
                | EngineError::NotAPureQPower(_)
                | EngineError::RewriteBudgetExceeded(_) => EXIT_MISMATCH,
                _ => EXIT_USAGE,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub fingerprint: String,
    pub results: Value,
    pub counterexamples: Vec<Mismatch>,
    pub timing_ms: Option<u64>,
}

/// A flat table for CSV export.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn mismatch_table(ms: &[Mismatch]) -> Table {
    let mut t = Table::new(vec!["instance", "basis", "lhs", "rhs"]);
    for m in ms {
        t.push(vec![m.instance.clone(), m.basis.clone(), m.lhs.clone(), m.rhs.clone()]);
    }
    t
}

/// `sha256` of the canonical quiver followed by the JSON of every other parameter.
pub fn fingerprint(canonical_quiver: &str, params: &impl Serialize) -> String {
    let mut h = Sha256::new();
    h.update(canonical_quiver.as_bytes());
    h.update(b"\n");
    h.update(serde_json::to_string(params).expect("parameters serialize").as_bytes());
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_mapping() {
        let too_large = EngineError::EnumerationTooLarge {
            what: "x".into(),
            size: 2,
            bound: 1,
        };
        assert_eq!(CliError::from(too_large).exit_code(), EXIT_RESOURCE);
        assert_eq!(
            CliError::from(EngineError::UnsupportedPeriod(2)).exit_code(),
            EXIT_USAGE
        );
        assert_eq!(
            CliError::from(EngineError::NotAPureQPower("3".into())).exit_code(),
            EXIT_MISMATCH
        );
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        assert_eq!(EXIT_OK, 0);
    }

    #[test]
    fn fingerprint_depends_on_parameters() {
        assert_eq!(fingerprint("q", &(1, 2)), fingerprint("q", &(1, 2)));
        assert_ne!(fingerprint("q", &(1, 2)), fingerprint("q", &(1, 3)));
        assert_ne!(fingerprint("q", &(1, 2)), fingerprint("r", &(1, 2)));
    }
}
