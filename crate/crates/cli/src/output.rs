use std::io::{self, Write};

use clap::ValueEnum;
use natave::error::Location;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON record per line.
    Json,
    Csv,
    Text,
    /// Graphviz, `tree` only.
    Dot,
}

pub type Params = Map<String, Value>;

pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A command's result in every output format.
#[derive(Debug, Default)]
pub struct Payload {
    pub result: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Plain text, also used for DOT output.
    pub text: String,
}

#[derive(Debug, Clone)]
pub enum Failure {
    Domain(natave::Error),
    Io(String),
}

impl From<natave::Error> for Failure {
    fn from(e: natave::Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<natave::ParseError> for Failure {
    fn from(e: natave::ParseError) -> Self {
        Failure::Domain(e.into())
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        use natave::Error::*;
        match self {
            Failure::Domain(InvalidArgument(_)) => "invalid-argument",
            Failure::Domain(ResourceLimit { .. }) => "resource-limit",
            Failure::Domain(InvalidWord(_)) => "invalid-word",
            Failure::Domain(Overflow) => "overflow",
            Failure::Domain(Parse(_)) => "parse",
            Failure::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Domain(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }

    fn record(&self) -> Value {
        let mut error = Map::new();
        error.insert("kind".into(), json!(self.kind()));
        error.insert("message".into(), json!(self.message()));
        if let Failure::Domain(natave::Error::Parse(p)) = self {
            match p.location {
                Location::Offset(o) => error.insert("offset".into(), json!(o)),
                Location::Line(l) => error.insert("line".into(), json!(l)),
            };
        }
        Value::Object(error)
    }
}

pub fn emit(
    out: &mut impl Write,
    format: Format,
    command: &str,
    params: &Params,
    payload: &Payload,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let record =
                json!({ "command": command, "parameters": params, "result": payload.result });
            writeln!(out, "{record}")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&payload.header)?;
            for row in &payload.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
        Format::Text | Format::Dot => out.write_all(payload.text.as_bytes()),
    }
}

pub fn emit_error(
    out: &mut impl Write,
    format: Format,
    command: &str,
    params: &Params,
    failure: &Failure,
) -> io::Result<()> {
    match format {
        Format::Json => {
            let record =
                json!({ "command": command, "parameters": params, "error": failure.record() });
            writeln!(out, "{record}")
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["error", "message"])?;
            w.write_record([failure.kind(), &failure.message()])?;
            w.flush()
        }
        Format::Text | Format::Dot => {
            eprintln!("natave {command}: {}", failure.message());
            Ok(())
        }
    }
}
