//! The result record printed by every subcommand.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Yes,
    NoUpTo(usize),
    Error,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    fn render(self) -> String {
        match self {
            Verdict::True => "true".into(),
            Verdict::False => "false".into(),
            Verdict::Yes => "yes".into(),
            Verdict::NoUpTo(k) => format!("no-up-to-{k}"),
            Verdict::Error => "error".into(),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// A counterexample or witness synchronization.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub source: String,
    pub sync_word: String,
    pub input: String,
    pub output: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub details: Map<String, Value>,
    pub uniformizer: Option<String>,
    pub uniformizer_path: Option<String>,
    pub caveat: Option<String>,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, verdict: Verdict) -> Self {
        Report {
            command: command.into(),
            verdict,
            witness: None,
            details: Map::new(),
            uniformizer: None,
            uniformizer_path: None,
            caveat: None,
            error: None,
            timing_ms: None,
        }
    }

    pub fn error(command: &str, message: String) -> Self {
        let mut r = Report::new(command, Verdict::Error);
        r.error = Some(message);
        r
    }

    pub fn detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.details.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verdict: {}", self.verdict.render());
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {e}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness ({}): {}", w.source, w.sync_word);
            let _ = writeln!(s, "  input: {}", w.input);
            let _ = writeln!(s, "  output: {}", w.output);
        }
        for (k, v) in &self.details {
            match v {
                Value::String(text) if text.contains('\n') => {
                    let _ = writeln!(s, "{k}:");
                    for line in text.lines() {
                        let _ = writeln!(s, "  {line}");
                    }
                }
                Value::String(text) => {
                    let _ = writeln!(s, "{k}: {text}");
                }
                Value::Array(items) => {
                    let _ = writeln!(s, "{k}:");
                    for item in items {
                        let _ = writeln!(s, "  {}", item.as_str().map(str::to_string).unwrap_or_else(|| item.to_string()));
                    }
                }
                other => {
                    let _ = writeln!(s, "{k}: {other}");
                }
            }
        }
        if let Some(c) = &self.caveat {
            let _ = writeln!(s, "caveat: {c}");
        }
        if let Some(p) = &self.uniformizer_path {
            let _ = writeln!(s, "uniformizer written to {p}");
        } else if let Some(u) = &self.uniformizer {
            let _ = writeln!(s, "uniformizer:");
            s.push_str(u);
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(s, "time: {t} ms");
        }
        s
    }
}
