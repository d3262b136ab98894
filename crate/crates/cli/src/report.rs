//! One verification outcome per line, as JSON or text.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub params: Value,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(check: &str, params: Value, expected: impl ToString, got: impl ToString, pass: bool) -> Self {
        Self { check: check.to_string(), params, expected: expected.to_string(), got: got.to_string(), pass, detail: None, note: None }
    }

    /// A check whose expected and actual values are compared as strings.
    pub fn compare(check: &str, params: Value, expected: impl ToString, got: impl ToString) -> Self {
        let (e, g) = (expected.to_string(), got.to_string());
        let pass = e == g;
        Self::new(check, params, e, g, pass)
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn text_line(&self) -> String {
        let mark = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!("[{mark}] {} {}: expected {}, got {}", self.check, self.params, self.expected, self.got);
        if let Some(note) = &self.note {
            line.push_str("\n       note: ");
            line.push_str(note);
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_shape() {
        let c = Check::compare("chern", json!({"n": 2}), "-2", "-2");
        let v: Value = serde_json::from_str(&c.json_line()).unwrap();
        assert_eq!(v, json!({"check": "chern", "params": {"n": 2}, "expected": "-2", "got": "-2", "pass": true}));
        assert!(Check::compare("x", json!({}), 1, 2).text_line().starts_with("[FAIL]"));
    }
}
