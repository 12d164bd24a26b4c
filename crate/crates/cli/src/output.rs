//! Output formats and deterministic renderers.

use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::ValueEnum;
use serde::Serialize;

use conolly_core::Table;

/// How records leave the program. Sequences support plain, csv, bfile and
/// jsonl; tree commands emit DOT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-oriented text (the default everywhere).
    Plain,
    Csv,
    Bfile,
    Jsonl,
    Dot,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        <Self as ValueEnum>::from_str(input, true)
    }
}

#[derive(Serialize)]
struct TermRecord {
    n: u64,
    value: i64,
}

/// Renders a computed sequence prefix as `n value` records.
pub fn render_sequence(table: &Table, format: OutputFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        OutputFormat::Plain | OutputFormat::Bfile => {
            for (offset, value) in table.values().iter().enumerate() {
                writeln!(out, "{} {value}", offset + 1)?;
            }
        }
        OutputFormat::Csv => {
            out.push_str("n,value\n");
            for (offset, value) in table.values().iter().enumerate() {
                writeln!(out, "{},{value}", offset + 1)?;
            }
        }
        OutputFormat::Jsonl => {
            for (offset, value) in table.values().iter().enumerate() {
                let record = TermRecord {
                    n: offset as u64 + 1,
                    value: *value,
                };
                writeln!(out, "{}", serde_json::to_string(&record)?)?;
            }
        }
        OutputFormat::Dot => bail!("sequence export supports plain, csv, bfile or jsonl"),
    }
    Ok(out)
}

/// Renders generating-function coefficients `0..=order`.
pub fn render_coefficients(coefficients: &[i64], format: OutputFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        OutputFormat::Plain => {
            let joined: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", joined.join(","))?;
        }
        OutputFormat::Csv => {
            out.push_str("n,coefficient\n");
            for (exp, c) in coefficients.iter().enumerate() {
                writeln!(out, "{exp},{c}")?;
            }
        }
        OutputFormat::Jsonl => {
            for (exp, c) in coefficients.iter().enumerate() {
                let record = TermRecord {
                    n: exp as u64,
                    value: *c,
                };
                writeln!(out, "{}", serde_json::to_string(&record)?)?;
            }
        }
        OutputFormat::Bfile | OutputFormat::Dot => {
            bail!("coefficient export supports plain, csv or jsonl")
        }
    }
    Ok(out)
}

/// Renders the `h_s` table, rows `n = 1..=n_max`, columns `s = 0..=s_max`.
pub fn render_table(columns: &[Table], n_max: u64, format: OutputFormat) -> Result<String> {
    let headers: Vec<String> = std::iter::once("n".to_string())
        .chain((0..columns.len()).map(|s| format!("s={s}")))
        .collect();
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let mut row = vec![n.to_string()];
        row.extend(columns.iter().map(|table| table.value(n).to_string()));
        rows.push(row);
    }

    let mut out = String::new();
    match format {
        OutputFormat::Plain => {
            let mut widths: Vec<usize> = headers.iter().map(String::len).collect();
            for row in &rows {
                for (cell, width) in row.iter().zip(widths.iter_mut()) {
                    *width = (*width).max(cell.len());
                }
            }
            let render_row = |row: &[String]| {
                row.iter()
                    .zip(&widths)
                    .map(|(cell, width)| format!("{cell:>width$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", render_row(&headers))?;
            for row in &rows {
                writeln!(out, "{}", render_row(row))?;
            }
        }
        OutputFormat::Csv => {
            writeln!(out, "{}", headers.join(","))?;
            for row in &rows {
                writeln!(out, "{}", row.join(","))?;
            }
        }
        _ => bail!("table export supports plain or csv"),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use conolly_core::Spec;

    fn h0_table(n_max: u64) -> Table {
        Spec::canonical_h(0).evaluate(n_max).unwrap()
    }

    #[test]
    fn sequence_formats() {
        let table = h0_table(3);
        assert_eq!(render_sequence(&table, OutputFormat::Plain).unwrap(), "1 1\n2 1\n3 2\n");
        assert_eq!(
            render_sequence(&table, OutputFormat::Csv).unwrap(),
            "n,value\n1,1\n2,1\n3,2\n"
        );
        assert_eq!(
            render_sequence(&table, OutputFormat::Jsonl).unwrap(),
            "{\"n\":1,\"value\":1}\n{\"n\":2,\"value\":1}\n{\"n\":3,\"value\":2}\n"
        );
        assert!(render_sequence(&table, OutputFormat::Dot).is_err());
    }

    #[test]
    fn coefficient_formats() {
        let coeffs = [0i64, 1, 0, 1];
        assert_eq!(
            render_coefficients(&coeffs, OutputFormat::Plain).unwrap(),
            "0,1,0,1\n"
        );
        assert_eq!(
            render_coefficients(&coeffs, OutputFormat::Csv).unwrap(),
            "n,coefficient\n0,0\n1,1\n2,0\n3,1\n"
        );
    }

    #[test]
    fn table_layout() {
        let columns = vec![h0_table(2), Spec::canonical_h(1).evaluate(2).unwrap()];
        let text = render_table(&columns, 2, OutputFormat::Plain).unwrap();
        assert_eq!(text, "n  s=0  s=1\n1    1    1\n2    1    1\n");
        let csv = render_table(&columns, 2, OutputFormat::Csv).unwrap();
        assert_eq!(csv, "n,s=0,s=1\n1,1,1\n2,1,1\n");
    }
}
