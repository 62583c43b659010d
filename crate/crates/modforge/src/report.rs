use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NON_REPRESENTABLE: i32 = 3;
pub const EXIT_CAP: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
    pub message: String,
}

/// Outcome of one job. Wall time is kept out of the JSON form so that equal
/// inputs give byte-identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub tool_version: String,
    pub input_digest: Option<String>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports are plain data") + "\n"
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let outcome = match self.exit_code {
            EXIT_OK => "ok",
            EXIT_NON_REPRESENTABLE => "non-representable",
            EXIT_INPUT => "input error",
            EXIT_CAP => "cap exceeded",
            _ => "internal error",
        };
        let _ = writeln!(out, "modforge {} {}: {outcome} (exit {})", self.command, self.tool_version, self.exit_code);
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input sha256: {d}");
        }
        if let Some(e) = &self.error {
            match &e.stage {
                Some(s) => {
                    let _ = writeln!(out, "error [{}] in {s}: {}", e.kind, e.message);
                }
                None => {
                    let _ = writeln!(out, "error [{}]: {}", e.kind, e.message);
                }
            }
        }
        if let Some(v) = &self.result {
            render(&mut out, v, 0);
        }
        let _ = writeln!(out, "time: {:.3} s", self.elapsed.as_secs_f64());
        out
    }
}

fn scalar_like(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(scalar_like),
        Value::Object(_) => false,
        _ => true,
    }
}

fn render(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if scalar_like(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render(out, x, depth + 1);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if scalar_like(x) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render(out, x, depth + 1);
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", inline(x));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        Report {
            command: "analyze".into(),
            tool_version: TOOL_VERSION.into(),
            input_digest: Some("ab".into()),
            exit_code: 0,
            result: Some(json!({"free": true, "rank": 2, "rows": [{"ideal": [[0]], "pass": true}]})),
            error: None,
            elapsed: Duration::from_millis(1500),
        }
    }

    #[test]
    fn json_omits_timing() {
        let mut a = sample();
        let j = a.to_json();
        a.elapsed = Duration::from_secs(9);
        assert_eq!(j, a.to_json());
        assert!(!j.contains("elapsed"));
    }

    #[test]
    fn human_mirrors_fields() {
        let h = sample().to_human();
        assert!(h.starts_with("modforge analyze"));
        assert!(h.contains("rank: 2"));
        assert!(h.contains("ideal: [[0]]"));
        assert!(h.contains("time: 1.500 s"));
    }
}
