//! Uniform machine-readable row emitted by every command under
//! `--json`: what was asked, with which parameters, the resulting
//! value, and whether it came from a formula, a scan, or both in
//! agreement. Numbers are serialized as full decimal strings so
//! arbitrary-precision values survive the trip.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub query: String,
    pub parameters: Map<String, Value>,
    pub value: Value,
    pub provenance: String,
}

impl OutputRecord {
    pub fn new(query: &str, provenance: &str) -> Self {
        OutputRecord {
            query: query.to_string(),
            parameters: Map::new(),
            value: Value::Null,
            provenance: provenance.to_string(),
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(name.to_string(), value.into());
        self
    }

    pub fn value(mut self, value: impl Into<Value>) -> Self {
        self.value = value.into();
        self
    }

    /// One-line JSON rendering.
    pub fn line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}
