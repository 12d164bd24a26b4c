//! OEIS b-file interchange: one `index value` record per line, `#` comment
//! lines ignored, indices strictly increasing.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::recurrence::SequenceTable;
use crate::scalar::SequenceInt;

/// Parses b-file text into `(index, value)` pairs.
pub fn parse_bfile<T: SequenceInt>(text: &str) -> Result<Vec<(T, T)>> {
    let mut records = Vec::new();
    let mut previous: Option<T> = None;
    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        if line.starts_with('#') {
            continue;
        }
        let malformed = |reason: &str| Error::BFile {
            line: line_no,
            reason: reason.to_string(),
        };
        let (index_text, value_text) = line
            .split_once(' ')
            .ok_or_else(|| malformed("expected \"index value\""))?;
        let parse = |field: &str| {
            field
                .parse::<i128>()
                .ok()
                .and_then(T::from_i128)
                .ok_or_else(|| malformed(&format!("not an integer: {field:?}")))
        };
        let index = parse(index_text)?;
        let value = parse(value_text)?;
        if let Some(prev) = previous {
            if index <= prev {
                return Err(malformed(&format!(
                    "index {index} does not increase past {prev}"
                )));
            }
        }
        previous = Some(index);
        records.push((index, value));
    }
    Ok(records)
}

/// Renders a computed table as b-file text, indices starting at 1.
pub fn emit_bfile<T: SequenceInt>(table: &SequenceTable<T>) -> String {
    let mut out = String::new();
    for (offset, value) in table.values().iter().enumerate() {
        writeln!(out, "{} {value}", offset + 1).unwrap();
    }
    out
}
