//! The JSON document a search harness emits: one record per searched cell,
//! with embedded witnesses. A nonexistence claim is only ever the pair
//! (status COMPLETE, class_count 0).

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::codec::{self, CodecError};
use crate::planar_map::PlanarMap;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CellStatus {
    /// The cell's space was exhausted; its class_count is final.
    #[serde(rename = "COMPLETE")]
    Complete,
    /// A node or time budget stopped the search early; class_count is a
    /// lower bound and proves nothing about nonexistence.
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// One isomorphism class found by a search, in both interchange encodings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    /// Complete single-map planar_code stream, base64.
    pub planar_code_base64: String,
    /// Canonical code bytes, hex; equal exactly for isomorphic maps.
    pub canonical_code_hex: String,
}

impl WitnessRecord {
    pub fn of_map(map: &PlanarMap) -> Self {
        WitnessRecord {
            planar_code_base64: BASE64.encode(codec::encode_single(map)),
            canonical_code_hex: map.canonical_code().to_hex(),
        }
    }

    pub fn decode(&self) -> Result<PlanarMap, CodecError> {
        let bytes = BASE64
            .decode(&self.planar_code_base64)
            .map_err(|_| CodecError::BadHeader)?;
        let mut maps = codec::read_planar_code(&bytes)?;
        match maps.len() {
            1 => Ok(maps.remove(0)),
            _ => Err(CodecError::BadHeader),
        }
    }
}

/// Result for one (k, d₂, d₁, v) combination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d1: Option<usize>,
    pub v: usize,
    pub class_count: usize,
    pub status: CellStatus,
    pub nodes_explored: u64,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<WitnessRecord>,
    /// Free-form context, e.g. why arithmetic pruned the cell outright.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    /// What was searched, human-readable.
    pub task: String,
    /// Machine-readable task parameters; hashed into config_hash.
    pub parameters: serde_json::Value,
    /// Hex SHA-256 over task and parameters, so reports from identical
    /// configurations can be compared after stripping elapsed_ms.
    pub config_hash: String,
    pub cells: Vec<CellRecord>,
    /// Wall-clock total; deliberately the only nondeterministic field.
    pub elapsed_ms: u64,
}

impl ReportDocument {
    pub fn new(
        task: impl Into<String>,
        parameters: serde_json::Value,
        cells: Vec<CellRecord>,
        elapsed_ms: u64,
    ) -> Self {
        let task = task.into();
        let config_hash = Self::config_hash(&task, &parameters);
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            task,
            parameters,
            config_hash,
            cells,
            elapsed_ms,
        }
    }

    pub fn config_hash(task: &str, parameters: &serde_json::Value) -> String {
        let mut hasher = Sha256::new();
        hasher.update(task.as_bytes());
        hasher.update([0]);
        // Value objects keep sorted keys, so this encoding is canonical.
        hasher.update(parameters.to_string().as_bytes());
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// True when any cell exhausted its budget.
    pub fn any_unknown(&self) -> bool {
        self.cells
            .iter()
            .any(|c| c.status == CellStatus::Unknown)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_platonic, PlatonicId};
    use serde_json::json;

    fn sample() -> ReportDocument {
        let cube = generate_platonic(PlatonicId::Cube);
        ReportDocument::new(
            "unit-test",
            json!({"k": 3, "v_max": 8}),
            vec![CellRecord {
                k: 3,
                d2: Some(4),
                d1: None,
                v: 8,
                class_count: 1,
                status: CellStatus::Complete,
                nodes_explored: 42,
                witnesses: vec![WitnessRecord::of_map(&cube)],
                note: None,
            }],
            17,
        )
    }

    #[test]
    fn documents_round_trip_through_json() {
        let doc = sample();
        let text = doc.to_json();
        assert_eq!(ReportDocument::from_json(&text).unwrap(), doc);
        assert!(text.contains("\"COMPLETE\""));
    }

    #[test]
    fn witnesses_decode_back_to_their_map() {
        let cube = generate_platonic(PlatonicId::Cube);
        let witness = WitnessRecord::of_map(&cube);
        let decoded = witness.decode().unwrap();
        assert_eq!(decoded.canonical_code(), cube.canonical_code());
        assert_eq!(witness.canonical_code_hex, cube.canonical_code().to_hex());
    }

    #[test]
    fn config_hash_tracks_parameters_not_results() {
        let doc = sample();
        let same = ReportDocument::new("unit-test", json!({"k": 3, "v_max": 8}), vec![], 99);
        assert_eq!(doc.config_hash, same.config_hash);
        let other = ReportDocument::new("unit-test", json!({"k": 4, "v_max": 8}), vec![], 99);
        assert_ne!(doc.config_hash, other.config_hash);
    }

    #[test]
    fn unknown_cells_are_detected() {
        let mut doc = sample();
        assert!(!doc.any_unknown());
        doc.cells[0].status = CellStatus::Unknown;
        assert!(doc.any_unknown());
    }
}
