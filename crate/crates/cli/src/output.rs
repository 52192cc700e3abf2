use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// What a command prints: the machine-readable record plus the text-mode lines
/// built from the same values.
#[derive(Debug)]
pub struct Report {
    pub record: OutputRecord,
    pub lines: Vec<String>,
    /// Extra text-mode notes for stderr.
    pub notes: Vec<String>,
    /// False when a checked identity or cross-check failed.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: String) -> Self {
        Self {
            record: OutputRecord {
                command,
                inputs: Map::new(),
                results: Map::new(),
                timing_ms: 0.0,
            },
            lines: Vec::new(),
            notes: Vec::new(),
            holds: true,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.record.inputs.insert(key.to_owned(), value.into());
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.record.results.insert(key.to_owned(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    /// Records a pass/fail verdict under `key`.
    pub fn verdict(&mut self, key: &str, ok: bool) {
        self.holds &= ok;
        self.result(key, ok);
    }
}

/// `n/d`, with `/1` for integers.
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Nearest double, as text; for display only.
pub fn approx(x: &BigRational) -> String {
    float_string(x.to_f64().unwrap_or(f64::NAN))
}

pub fn float_string(x: f64) -> String {
    format!("{x:e}")
        .parse::<f64>()
        .map(|v| format!("{v}"))
        .unwrap_or_else(|_| x.to_string())
}
