//! Reading JSON inputs and mapping failures to exit codes.

use std::fmt;
use std::io::Read;
use std::path::Path;

use latstat_core::Error;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or out-of-schema input; `pointer` locates the offending field.
    Input { message: String, pointer: Option<String> },
    Core(Error),
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input {
            message: message.into(),
            pointer: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Input { message, pointer } => json!({
                "kind": "input",
                "message": message,
                "pointer": pointer,
            }),
            CliError::Core(e) => {
                let kind = match e {
                    Error::BudgetExceeded { .. } => "budget_exceeded",
                    Error::NotDistributive { .. } => "not_distributive",
                    Error::ConstructionRefused { .. } => "construction_refused",
                    _ => "input",
                };
                let mut v = json!({"kind": kind, "message": e.to_string()});
                if let Error::ConstructionRefused { witness: Some(w), .. } | Error::NotDistributive { witness: w } = e {
                    v["witness"] = w.clone();
                }
                v
            }
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input {
                message,
                pointer: Some(p),
            } => write!(f, "{message} (at {p})"),
            CliError::Input { message, .. } => write!(f, "{message}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A serde path rendered as a JSON pointer.
fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

/// Parses `text` as `T`, reporting the failing field as a JSON pointer.
pub fn parse_str<T: DeserializeOwned>(text: &str, origin: &str) -> CliResult<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let mut p = pointer(e.path());
        // inside buffered (tagged) enums an unknown field is reported at its parent
        let inner = e.inner().to_string();
        if let Some(field) = inner.strip_prefix("unknown field `").and_then(|r| r.split('`').next()) {
            let seg = format!("/{}", field.replace('~', "~0").replace('/', "~1"));
            if !p.ends_with(&seg) {
                p.push_str(&seg);
            }
        }
        CliError::Input {
            message: format!("{origin}: {}", e.inner()),
            pointer: Some(if p.is_empty() { "/".into() } else { p }),
        }
    })
}

/// Reads a JSON file, or standard input for `-`.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?
    };
    parse_str(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use latstat_core::descriptor::LatticeDescriptor;
    use latstat_core::scalar::Q;

    #[derive(Debug, serde::Deserialize)]
    #[serde(deny_unknown_fields)]
    #[allow(dead_code)]
    struct Probe {
        lattice: LatticeDescriptor,
        values: Vec<Q>,
    }

    fn ptr(text: &str) -> Option<String> {
        match parse_str::<Probe>(text, "probe") {
            Err(CliError::Input { pointer, .. }) => pointer,
            other => panic!("expected an input error, got {other:?}"),
        }
    }

    #[test]
    fn zero_denominator_is_located() {
        let p = ptr(r#"{"lattice": {"kind": "m3"}, "values": [1, {"num": 1, "den": 0}]}"#);
        assert_eq!(p.as_deref(), Some("/values/1"));
    }

    #[test]
    fn unknown_field_is_located() {
        assert_eq!(ptr(r#"{"lattice": {"kind": "m3"}, "values": [], "extra": 1}"#).as_deref(), Some("/extra"));
    }

    #[test]
    fn minimal_config_parses() {
        let p: Probe = parse_str(r#"{"lattice": {"kind": "m3"}, "values": [{"num": 1, "den": 2}, 3]}"#, "probe").unwrap();
        assert_eq!(p.values.len(), 2);
    }

    #[test]
    fn budget_maps_to_exit_3() {
        let e = CliError::from(Error::BudgetExceeded { needed: 10, budget: 1 });
        assert_eq!(e.exit_code(), EXIT_BUDGET);
        assert_eq!(CliError::input("x").exit_code(), EXIT_INPUT);
    }
}
