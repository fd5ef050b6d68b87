//! Run manifests: enough of a command line to reproduce its output.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{CliError, CliResult};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Effective flag values keyed by long flag name, defaults included.
    pub parameters: BTreeMap<String, String>,
    pub tool_version: String,
    /// ISO-8601 UTC.
    pub timestamp: String,
}

impl RunManifest {
    /// Builds a manifest from a serializable argument struct. Fields that
    /// serialize to `null` are left out; `false` flags are kept so the
    /// manifest lists every knob.
    pub fn new<A: Serialize>(command: &str, args: &A, timestamp: Option<&str>) -> CliResult<Self> {
        let serde_json::Value::Object(fields) = serde_json::to_value(args)? else {
            return Err(CliError::Numeric("arguments did not serialize to a map".into()));
        };
        let parameters = fields
            .into_iter()
            .filter_map(|(key, value)| stringify(&value).map(|v| (key, v)))
            .collect();
        let timestamp = match timestamp {
            Some(ts) => {
                chrono::DateTime::parse_from_rfc3339(ts)
                    .map_err(|e| CliError::Usage(format!("invalid --timestamp {ts:?}: {e}")))?;
                ts.to_string()
            }
            None => chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        };
        Ok(RunManifest {
            command: command.to_string(),
            parameters,
            tool_version: TOOL_VERSION.to_string(),
            timestamp,
        })
    }

    /// Command-line arguments (without the program name) that rerun this
    /// manifest, including its timestamp.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![self.command.clone()];
        for (key, value) in &self.parameters {
            match value.as_str() {
                "true" => args.push(format!("--{key}")),
                "false" => {}
                _ => {
                    args.push(format!("--{key}"));
                    args.push(value.clone());
                }
            }
        }
        args.push("--timestamp".into());
        args.push(self.timestamp.clone());
        args
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read manifest {}: {e}", path.display())))?;
        // a data file written with --format json embeds the manifest
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{} is not JSON: {e}", path.display())))?;
        let manifest = value.get("manifest").cloned().unwrap_or(value);
        serde_json::from_value(manifest)
            .map_err(|e| CliError::Usage(format!("{} is not a run manifest: {e}", path.display())))
    }

    pub fn to_json(&self) -> CliResult<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// `<output>.manifest.json`, written next to CSV and table outputs.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn stringify(value: &serde_json::Value) -> Option<String> {
    match value {
        serde_json::Value::Null => None,
        serde_json::Value::String(s) => Some(s.clone()),
        serde_json::Value::Bool(b) => Some(b.to_string()),
        serde_json::Value::Number(n) => Some(n.to_string()),
        other => Some(other.to_string()),
    }
}

/// `serialize_with` helper for flag values whose `Display` is their CLI form.
pub fn as_display<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
