//! The JSON envelope every command writes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub schema_version: u32,
    pub library_version: String,
    pub command: String,
    pub config: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
    /// Present only with `--timing`, so default output stays byte-stable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Envelope {
    pub fn new(command: &str, config: Value) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            library_version: latstat_core::VERSION.to_string(),
            command: command.to_string(),
            config,
            result: None,
            error: None,
            elapsed_ms: None,
        }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trips_byte_for_byte() {
        let mut e = Envelope::new("check", json!({"k": 2, "relation": "ge"}));
        e.result = Some(json!({"holds": true, "witness": null, "lhs": {"num": 148, "den": 1}}));
        let text = e.render();
        let back: Envelope = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.render(), text);
    }
}
