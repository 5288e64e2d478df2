use serde_json::{json, Value};

use crate::error::CliError;

/// Result of one command. Keys are emitted in sorted order, so the output
/// is byte-for-byte reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub ok: bool,
    pub command: String,
    pub details: Value,
}

impl Verdict {
    pub fn new(command: &str, ok: bool, details: Value) -> Verdict {
        Verdict {
            ok,
            command: command.to_string(),
            details,
        }
    }

    pub fn error(command: &str, err: &CliError) -> Verdict {
        let mut error = json!({
            "kind": err.kind(),
            "exit": err.exit().code(),
            "message": err.to_string(),
        });
        if let CliError::Domain {
            source: wwcat_core::Error::NotComposableAt { index, .. },
            ..
        } = err
        {
            error["index"] = json!(index);
        }
        Verdict::new(command, false, json!({ "error": error }))
    }

    pub fn to_value(&self) -> Value {
        json!({
            "ok": self.ok,
            "command": self.command,
            "details": self.details,
        })
    }

    pub fn render(&self, pretty: bool) -> String {
        let v = self.to_value();
        if pretty {
            serde_json::to_string_pretty(&v).expect("values serialize")
        } else {
            serde_json::to_string(&v).expect("values serialize")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = Verdict::new("check", true, json!({"zeta": 1, "alpha": 2}));
        assert_eq!(
            v.render(false),
            r#"{"command":"check","details":{"alpha":2,"zeta":1},"ok":true}"#
        );
    }
}
