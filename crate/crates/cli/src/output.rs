use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_TOLERANCE: u8 = 3;

pub const SCHEMA_VERSION: &str = "1";

/// Top-level JSON document. Keys are emitted in sorted order because
/// every object passes through `serde_json::Value` (a `BTreeMap`).
#[derive(Debug, Serialize)]
pub struct OutputDocument {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Value,
}

pub struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Timer(Instant::now())
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}

impl OutputDocument {
    pub fn new(
        command: &'static str,
        inputs: Value,
        results: impl Serialize,
        warnings: &[String],
        timer: &Timer,
    ) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION,
            command,
            inputs,
            results: serde_json::to_value(results).expect("results serialise"),
            diagnostics: json!({ "timing_ms": timer.elapsed_ms(), "warnings": warnings }),
        }
    }

    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("document serialises");
        serde_json::to_string_pretty(&value).expect("document renders")
    }
}
