//! The versioned report envelope. Field order is fixed by the struct and
//! all maps are ordered, so reports are byte-identical for identical
//! inputs and seed; the per-phase wall-clock timings are the one exception
//! and carry no determinism guarantee.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "coverpoly/1";

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub findings: usize,
    pub timings_ms: BTreeMap<String, u128>,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report {
            schema: SCHEMA,
            command,
            inputs: BTreeMap::new(),
            results: Value::Null,
            findings: 0,
            timings_ms: BTreeMap::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn print_json(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("report serializes")
        );
    }
}

/// Phase timer feeding `timings_ms`.
pub struct Phases {
    started: Instant,
    timings: BTreeMap<String, u128>,
}

impl Phases {
    pub fn new() -> Phases {
        Phases {
            started: Instant::now(),
            timings: BTreeMap::new(),
        }
    }

    pub fn mark(&mut self, phase: &str) {
        self.timings
            .insert(phase.to_string(), self.started.elapsed().as_millis());
        self.started = Instant::now();
    }

    pub fn into_timings(self) -> BTreeMap<String, u128> {
        self.timings
    }
}
