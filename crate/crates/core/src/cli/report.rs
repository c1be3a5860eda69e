use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{Map, Value};

use super::format::pretty;

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    pub values: Map<String, Value>,
}

impl Assertion {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Assertion {
            name: name.into(),
            pass,
            values: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.values.insert(key.into(), value);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
        }
    }
}

/// The machine-readable outcome of one command. Serialized with sorted keys;
/// nothing in it depends on the clock or the environment.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub input_sha256: Option<String>,
    pub status: Status,
    pub results: Map<String, Value>,
    pub assertions: Vec<Assertion>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, flags: BTreeMap<String, String>) -> Self {
        Report {
            command: command.into(),
            flags,
            input_sha256: None,
            status: Status::Pass,
            results: Map::new(),
            assertions: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn result(&mut self, key: &str, value: Value) {
        self.results.insert(key.into(), value);
    }

    pub fn assert(&mut self, a: Assertion) {
        self.assertions.push(a);
    }

    pub fn check(&mut self, name: &str, pass: bool) {
        self.assertions.push(Assertion::new(name, pass));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Settles the status: an input error wins, then any failed assertion.
    pub fn finish(&mut self) {
        if self.status != Status::InputError && self.assertions.iter().any(|a| !a.pass) {
            self.status = Status::Fail;
        }
    }

    pub fn render(&self) -> String {
        // Round-tripping through `Value` sorts every object's keys.
        let v = serde_json::to_value(self).expect("reports serialize");
        pretty(&v)
    }
}
