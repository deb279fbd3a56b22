//! Report plumbing: run manifests, lossless number formatting, exit codes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};
use singint_core::{ComplexScalar, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Verify,
    Sweep,
    Decompose,
    PoleProbe,
    Dcov,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: CommandKind,
    pub parameters: BTreeMap<String, Value>,
    pub started_at: String,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(command: CommandKind) -> Self {
        RunManifest {
            command,
            parameters: BTreeMap::new(),
            started_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

/// Formats a double with 17 significant digits (`null` if not finite).
pub fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    serde_json::from_str(&format_f64(x)).expect("formatted double is valid JSON")
}

/// Scientific notation with 17 significant digits and a signed exponent,
/// e.g. `3.1415926535897931e+0`.
pub fn format_f64(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

pub fn optional_number(x: Option<f64>) -> Value {
    x.map_or(Value::Null, number)
}

pub fn complex_fields(obj: &mut Map<String, Value>, prefix: &str, z: ComplexScalar) {
    obj.insert(format!("{prefix}_re"), number(z.re));
    obj.insert(format!("{prefix}_im"), number(z.im));
}

pub fn emit(manifest: &RunManifest, body: Map<String, Value>) -> anyhow::Result<()> {
    let mut obj = Map::new();
    obj.insert("manifest".into(), serde_json::to_value(manifest)?);
    obj.extend(body);
    println!("{}", serde_json::to_string_pretty(&Value::Object(obj))?);
    Ok(())
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Internal(_) => EXIT_FAILURE,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Internal(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Strip { m, .. } => Failure::Usage(format!(
                "{e}; the integral converges only for 2(m-1) < Re(alpha) < 2m (m = {m})"
            )),
            Error::Region { .. } => Failure::Usage(format!(
                "{e}; the decomposition needs 2(m-1) < Re(alpha) < 2(m+1) with Re(alpha) != 2m"
            )),
            Error::Pole { .. } => Failure::Usage(format!(
                "{e}; C(d, alpha) has poles at alpha = 0, 2, 4, ..."
            )),
            Error::Convergence { .. } => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(format!("{e:#}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}
