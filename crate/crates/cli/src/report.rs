//! JSON report envelope shared by every subcommand.

use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Map, Number, Value};

/// Process exit status reported by a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Member, certified or passed.
    Affirmative,
    /// Non-member, undecided, infeasible or failed.
    Negative,
    /// The input data was rejected.
    Rejected,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Affirmative => 0,
            Verdict::Negative => 1,
            Verdict::Rejected => 2,
        }
    }
}

/// Float with 12 significant digits; non-finite values become strings.
pub fn float12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    Number::from_str(&format!("{x:.11e}")).map(Value::Number).unwrap_or(Value::Null)
}

pub fn floats12(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(float12).collect())
}

/// Collects inputs, the verdict and timings for one invocation.
pub struct Report {
    command: Vec<String>,
    inputs: Map<String, Value>,
    timings: Map<String, Value>,
    started: Instant,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report { command, inputs: Map::new(), timings: Map::new(), started: Instant::now() }
    }

    pub fn input(&mut self, name: &str, value: Value) {
        self.inputs.insert(name.into(), value);
    }

    /// Runs `f` and records its wall time in milliseconds under `name`.
    pub fn timed<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(name.into(), float12(start.elapsed().as_secs_f64() * 1e3));
        out
    }

    pub fn finish(mut self, result: Value) -> Value {
        self.timings.insert("total".into(), float12(self.started.elapsed().as_secs_f64() * 1e3));
        json!({
            "tool": { "name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION") },
            "command": self.command,
            "inputs": self.inputs,
            "result": result,
            "timings_ms": self.timings,
        })
    }
}
