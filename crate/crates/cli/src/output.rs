//! Rendering of command results as JSON, CSV or text.
//!
//! JSON output is an envelope `{"schema_version", "command", "result"}`;
//! rationals are `"p/q"` strings and certified values `{"lo", "hi"}`.

use serde::{Deserialize, Serialize};

use crate::args::Format;
use codebounds::algebra::interval::Interval;
use codebounds::algebra::scalar::Scalar;
use codebounds::{BoundError, Result};

/// Version of the JSON and CSV layouts.
pub const SCHEMA_VERSION: u32 = 1;

/// Top-level JSON document.
#[derive(Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub result: T,
}

/// A result that can be rendered in every format.
pub trait Render: Serialize {
    fn text(&self) -> String;
    /// CSV with a header row.
    fn csv(&self) -> Result<String>;
}

/// Prints `result` to standard output.
pub fn emit<T: Render>(command: &str, result: &T, format: Format) -> Result<()> {
    let out = match format {
        Format::Json => {
            let env = Envelope { schema_version: SCHEMA_VERSION, command: command.to_string(), result };
            serde_json::to_string_pretty(&env).map_err(|e| BoundError::InvalidParams(format!("cannot serialize: {e}")))? + "\n"
        }
        Format::Csv => result.csv()?,
        Format::Text => result.text(),
    };
    print!("{out}");
    Ok(())
}

/// Builds CSV from a header and rows of fields.
pub fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| BoundError::InvalidParams(format!("cannot write CSV: {e}"));
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| BoundError::InvalidParams(format!("cannot write CSV: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// `lo` and `hi` of an optional interval as two CSV fields.
pub fn bounds(x: &Option<Interval>) -> [String; 2] {
    match x {
        Some(i) => [i.lo.to_string(), i.hi.to_string()],
        None => [String::new(), String::new()],
    }
}

/// Distance `n(1-t)/2` when integral.
pub fn distance_of(n: u32, t: &Scalar) -> Option<u32> {
    let d = (Scalar::from_integer(1.into()) - t) * Scalar::from_integer(n.into()) / Scalar::from_integer(2.into());
    if d.is_integer() {
        u32::try_from(d.to_integer()).ok()
    } else {
        None
    }
}
