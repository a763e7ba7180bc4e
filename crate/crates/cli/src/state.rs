//! Versioned JSON state files: `{"schema_version":1,"dim":d,"rho":[[[re,im],...],...],"sigma":...}`.

use std::path::Path;

use meo_core::{spectral_decompose, Hermitian64, Instance64, Kind64};
use serde::{Deserialize, Serialize};

use crate::output::{to_json, write_atomic};
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
const TRACE_TOLERANCE: f64 = 1e-9;

pub type Entries = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub schema_version: u32,
    pub dim: usize,
    pub rho: Entries,
    pub sigma: Entries,
}

fn entries_of(m: &Hermitian64) -> Entries {
    (0..m.dim()).map(|i| (0..m.dim()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect()).collect()
}

fn check(ok: bool, check: &'static str, message: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Validation { check, message: message() })
    }
}

impl StateFile {
    pub fn from_matrices(rho: &Hermitian64, sigma: &Hermitian64) -> Self {
        Self { schema_version: SCHEMA_VERSION, dim: rho.dim(), rho: entries_of(rho), sigma: entries_of(sigma) }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        write_atomic(path, to_json(self)?.as_bytes())
    }

    fn matrix(&self, name: &'static str, entries: &Entries) -> Result<Hermitian64, CliError> {
        let d = self.dim;
        check(entries.len() == d && entries.iter().all(|r| r.len() == d), "shape", || {
            format!("{name} must be {d}x{d}")
        })?;
        let flat: Vec<(f64, f64)> = entries.iter().flatten().map(|&[re, im]| (re, im)).collect();
        Hermitian64::from_pairs(d, &flat).map_err(|e| match e {
            meo_core::Error::NotHermitian { .. } => {
                CliError::Validation { check: "hermitian", message: format!("{name}: {e}") }
            }
            other => CliError::Validation { check: "finite", message: format!("{name}: {other}") },
        })
    }

    /// Runs the checks in order and names the first one that fails.
    pub fn matrices(&self) -> Result<(Hermitian64, Hermitian64), CliError> {
        check(self.schema_version == SCHEMA_VERSION, "schema", || {
            format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version)
        })?;
        check(self.dim >= 1, "shape", || "dim must be at least 1".into())?;
        let rho = self.matrix("rho", &self.rho)?;
        let sigma = self.matrix("sigma", &self.sigma)?;
        let tr = rho.trace();
        check((tr - 1.0).abs() <= TRACE_TOLERANCE, "trace", || format!("Tr[rho] = {tr}, expected 1"))?;
        for (name, m) in [("rho", &rho), ("sigma", &sigma)] {
            let s = spectral_decompose(m)?;
            if let Err(e) = s.ensure_positive_definite() {
                return Err(CliError::Validation { check: "positive-definite", message: format!("{name}: {e}") });
            }
        }
        Ok((rho, sigma))
    }

    pub fn instance(&self, kind: Kind64) -> Result<Instance64, CliError> {
        let (rho, sigma) = self.matrices()?;
        Ok(Instance64::new(rho, sigma, kind)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_file() -> StateFile {
        StateFile::from_matrices(
            &Hermitian64::from_real_diagonal(&[0.7, 0.3]).unwrap(),
            &Hermitian64::from_real_diagonal(&[0.4, 0.6]).unwrap(),
        )
    }

    #[test]
    fn parses_documented_layout() {
        let text = r#"{"schema_version":1,"dim":2,
            "rho":[[[0.7,0],[0,0]],[[0,0],[0.3,0]]],
            "sigma":[[[0.4,0],[0,0]],[[0,0],[0.6,0]]]}"#;
        let f: StateFile = serde_json::from_str(text).unwrap();
        assert_eq!(f, diag_file());
        assert!(f.instance(Kind64::MeasuredRelEnt).is_ok());
    }

    fn failing_check(f: &StateFile) -> &'static str {
        match f.matrices() {
            Err(CliError::Validation { check, .. }) => check,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn names_failing_check() {
        let mut f = diag_file();
        f.schema_version = 2;
        assert_eq!(failing_check(&f), "schema");
        let mut f = diag_file();
        f.rho[0][0][0] = 0.6;
        assert_eq!(failing_check(&f), "trace");
        let mut f = diag_file();
        f.sigma[0][0][0] = -1e-6;
        assert_eq!(failing_check(&f), "positive-definite");
        let mut f = diag_file();
        f.rho[0][1] = [0.1, 0.0];
        assert_eq!(failing_check(&f), "hermitian");
        let mut f = diag_file();
        f.rho.pop();
        assert_eq!(failing_check(&f), "shape");
    }
}
