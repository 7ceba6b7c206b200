//! The JSON coset-system document:
//!
//! ```json
//! {"d": 1, "cosets": [{"n": [2], "m": [0]}, {"n": [4], "m": [1]}, {"n": [4], "m": [3]}]}
//! ```
//!
//! `name` and `comment` are optional and ignored by every computation.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tiling_core::{Coset, CosetSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub d: i64,
    pub cosets: Vec<CosetEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosetEntry {
    pub n: Vec<i64>,
    pub m: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed document at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

impl DocumentError {
    fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocumentError::Field {
            path: path.into(),
            message: message.into(),
        }
    }
}

/// A parsed system plus any warnings raised while canonicalizing it.
#[derive(Clone, Debug)]
pub struct ParsedSystem {
    pub system: CosetSystem,
    pub name: Option<String>,
    pub warnings: Vec<String>,
}

pub fn parse_system(text: &str) -> Result<ParsedSystem, DocumentError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: SystemDocument = serde_path_to_error::deserialize(de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.into_inner();
        if inner.is_data() && path != "." {
            DocumentError::field(path, inner.to_string())
        } else {
            DocumentError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        }
    })?;
    doc.to_system()
}

impl SystemDocument {
    pub fn to_system(&self) -> Result<ParsedSystem, DocumentError> {
        if self.d < 1 {
            return Err(DocumentError::field("d", format!("dimension must be at least 1, got {}", self.d)));
        }
        let d = self.d as usize;
        if self.cosets.is_empty() {
            return Err(DocumentError::field("cosets", "at least one coset is required"));
        }
        let mut warnings = Vec::new();
        let mut cosets = Vec::with_capacity(self.cosets.len());
        for (j, entry) in self.cosets.iter().enumerate() {
            if entry.n.len() != d {
                return Err(DocumentError::field(
                    format!("cosets[{j}].n"),
                    format!("expected {d} moduli, got {}", entry.n.len()),
                ));
            }
            if entry.m.len() != d {
                return Err(DocumentError::field(
                    format!("cosets[{j}].m"),
                    format!("expected {d} offsets, got {}", entry.m.len()),
                ));
            }
            if let Some(i) = entry.n.iter().position(|&n| n <= 0) {
                return Err(DocumentError::field(
                    format!("cosets[{j}].n[{i}]"),
                    format!("non-positive modulus {}", entry.n[i]),
                ));
            }
            let moduli: Vec<u64> = entry.n.iter().map(|&n| n as u64).collect();
            let coset = Coset::new(moduli, &entry.m).map_err(|e| DocumentError::field(format!("cosets[{j}]"), e.to_string()))?;
            if coset.offset().iter().zip(&entry.m).any(|(&c, &m)| c as i64 != m) {
                warnings.push(format!(
                    "cosets[{j}].m: offsets {:?} canonicalized to {:?}",
                    entry.m,
                    coset.offset()
                ));
            }
            cosets.push(coset);
        }
        let system = CosetSystem::new(cosets).map_err(|e| DocumentError::field("cosets", e.to_string()))?;
        Ok(ParsedSystem {
            system,
            name: self.name.clone(),
            warnings,
        })
    }

    pub fn from_system(system: &CosetSystem, name: Option<String>) -> Self {
        SystemDocument {
            d: system.dim() as i64,
            cosets: system
                .cosets()
                .iter()
                .map(|c| CosetEntry {
                    n: c.moduli().iter().map(|&n| n as i64).collect(),
                    m: c.offset().iter().map(|&m| m as i64).collect(),
                })
                .collect(),
            name,
            comment: None,
        }
    }
}

/// Serialize a system as a document, one coset per line.
pub fn emit_system(system: &CosetSystem, name: Option<String>) -> String {
    let doc = SystemDocument::from_system(system, name);
    let mut out = String::from("{\n");
    if let Some(name) = &doc.name {
        out.push_str(&format!("  \"name\": {},\n", serde_json::to_string(name).expect("string")));
    }
    out.push_str(&format!("  \"d\": {},\n  \"cosets\": [\n", doc.d));
    for (j, entry) in doc.cosets.iter().enumerate() {
        let sep = if j + 1 == doc.cosets.len() { "" } else { "," };
        out.push_str(&format!(
            "    {}{sep}\n",
            serde_json::to_string(entry).expect("plain integers serialize")
        ));
    }
    out.push_str("  ]\n}\n");
    out
}
