//! JSON reports and CSV formatting.

use schwarz_regions::Complex64;
use serde_json::{json, Value};

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

/// Result of one command: what goes to stdout, stderr, and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), code: 0 }
    }

    pub fn fail(code: i32, stderr: String) -> Self {
        Self { stdout: String::new(), stderr, code }
    }
}

pub fn cx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn report(command: &str, inputs: Value, outputs: Value, diagnostics: Value) -> String {
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "diagnostics": diagnostics,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("report is plain JSON");
    s.push('\n');
    s
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
