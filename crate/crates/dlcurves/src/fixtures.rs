//! Checksummed reference data shipped under `fixtures/`.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::curves::Family;
use crate::graph_equations::ReferenceEquations;

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("checksum mismatch for {name}: expected {expected}, found {found}")]
    Checksum { name: String, expected: String, found: String },
    #[error("malformed {name}: {source}")]
    Parse { name: String, source: serde_json::Error },
    #[error("no reference file for {0}")]
    Missing(String),
}

/// File name and SHA-256 of every fixture.
pub const CHECKSUMS: [(&str, &str); 6] = [
    ("hermitian_equations.json", "8ad6639bd1add89cd3a833b9dd6ce6857096a022d917a1cb2aacf78fee523bcc"),
    ("ree_equations.json", "e7a53d91e2b9f17cb33294d27f6bd186198a856d3869fbd4dbc83553020f5100"),
    ("ree_generators.json", "4df2db9cf146f6cdc54bc3a7c752e1a29008aa6fcd969953b7eecb2a7a3c8714"),
    ("ree_stabilizer_action.json", "38bedb5e118acb5022daf8476b444f9527f758f101627723c07bf67e2420aaf4"),
    ("suzuki_equations.json", "9fbe8649a729440289c5917e0bef281038b081ad6de25db44164653f838ceef4"),
    ("valuations.json", "77e5705ebd4850cdb9a464c986d32b399d02a5e8c5791d5dafcdb5e235b2980a"),
];

pub fn default_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct FixtureStore {
    dir: PathBuf,
}

impl Default for FixtureStore {
    fn default() -> Self {
        Self::new(default_dir())
    }
}

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Reads a fixture and checks it against the pinned digest.
    pub fn read_verified(&self, name: &str) -> Result<Vec<u8>, FixtureError> {
        let expected = CHECKSUMS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, h)| *h)
            .ok_or_else(|| FixtureError::Missing(name.to_string()))?;
        let path = self.dir.join(name);
        let bytes = std::fs::read(&path).map_err(|source| FixtureError::Io { path, source })?;
        let found = sha256_hex(&bytes);
        if found != expected {
            return Err(FixtureError::Checksum { name: name.into(), expected: expected.into(), found });
        }
        Ok(bytes)
    }

    fn load<T: DeserializeOwned>(&self, name: &str) -> Result<T, FixtureError> {
        let bytes = self.read_verified(name)?;
        serde_json::from_slice(&bytes).map_err(|source| FixtureError::Parse { name: name.into(), source })
    }

    pub fn equations(&self, family: Family) -> Result<ReferenceEquations, FixtureError> {
        self.load(match family {
            Family::Ree => "ree_equations.json",
            Family::Suzuki => "suzuki_equations.json",
            Family::Hermitian => "hermitian_equations.json",
        })
    }

    pub fn valuations(&self) -> Result<ValuationsFixture, FixtureError> {
        self.load("valuations.json")
    }

    pub fn ree_generators(&self) -> Result<GeneratorsFixture, FixtureError> {
        self.load("ree_generators.json")
    }

    pub fn ree_action(&self) -> Result<ActionFixture, FixtureError> {
        self.load("ree_stabilizer_action.json")
    }
}

/// Coefficients over the basis `[q², q0·q, q, q0, 1]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValuationEntry {
    pub name: String,
    #[serde(default)]
    pub nu0: Option<[i64; 5]>,
    pub pole: [i64; 5],
}

impl ValuationEntry {
    pub fn eval(coeffs: &[i64; 5], q: i64, q0: i64) -> i64 {
        let basis = [q * q, q0 * q, q, q0, 1];
        coeffs.iter().zip(basis).map(|(c, b)| c * b).sum()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValuationsFixture {
    pub format: String,
    pub basis: Vec<String>,
    pub ree: Vec<ValuationEntry>,
    #[serde(default)]
    pub ree_notes: serde_json::Map<String, serde_json::Value>,
    pub suzuki: Vec<ValuationEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorsFixture {
    pub format: String,
    pub family: Family,
    pub m: u32,
    pub genus: u64,
    pub nongaps_below_2g: u64,
    pub seed_nongaps: u64,
    pub generators: Vec<u64>,
}

/// One monomial `coef · α^a β^b γ^c δ^d · basis` with exponents `c0 + c1·q0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionTerm {
    pub coef: i64,
    pub alpha: [u32; 2],
    pub beta: [u32; 2],
    pub gamma: [u32; 2],
    pub delta: [u32; 2],
    pub basis: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionRow {
    pub target: String,
    #[serde(default)]
    pub terms: Vec<ActionTerm>,
    #[serde(default)]
    pub sum_of: Vec<String>,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionFixture {
    pub format: String,
    pub family: Family,
    pub exponent_form: String,
    #[serde(default)]
    pub notes: Vec<String>,
    pub rows: Vec<ActionRow>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_verify() {
        let s = FixtureStore::default();
        for (name, _) in CHECKSUMS {
            s.read_verified(name).unwrap();
        }
    }

    #[test]
    fn tampered_copy_is_rejected() {
        let dir = std::env::temp_dir().join(format!("dlcurves-fx-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut bytes = std::fs::read(default_dir().join("valuations.json")).unwrap();
        bytes.push(b'\n');
        std::fs::write(dir.join("valuations.json"), bytes).unwrap();
        let err = FixtureStore::new(&dir).valuations().unwrap_err();
        assert!(matches!(err, FixtureError::Checksum { .. }));
        std::fs::remove_dir_all(&dir).ok();
    }
}
