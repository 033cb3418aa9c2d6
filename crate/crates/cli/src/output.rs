//! Output envelopes. JSON goes out as one schema-versioned object per run;
//! TSV as a header row followed by data rows, in a column order that scripts
//! may rely on.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

pub const PARAMS_COLUMNS: &[&str] = &[
    "n", "k", "q", "d", "d_perp", "s", "t", "k_perp", "projective", "degenerate", "griesmer_met",
];
pub const BOUNDS_COLUMNS: &[&str] =
    &["direction", "value", "rule_id", "binding", "citation", "conditions", "witness"];
pub const TABLE3_COLUMNS: &[&str] =
    &["k", "q", "s", "lower", "lower_rule", "upper", "upper_rule"];
pub const TABLE4_COLUMNS: &[&str] =
    &["k", "q", "s", "t", "lower", "lower_rule", "upper", "upper_rule"];
pub const INTEGRALITY_COLUMNS: &[&str] = &["j", "quantity", "value", "reduced", "integer"];
pub const KAPPA_COLUMNS: &[&str] = &[
    "q", "s", "kappa", "lower", "lower_rule", "lower_witness", "upper", "upper_rule",
    "upper_reason", "probes",
];
pub const SEARCH_COLUMNS: &[&str] = &[
    "n_max", "exhaustive", "budget_exhausted", "nodes", "witness_file", "dual_defect", "rules_used",
];
pub const VERIFY_COLUMNS: &[&str] = &["id", "status", "elapsed_ms", "limit_ms", "title", "detail"];
pub const ERROR_COLUMNS: &[&str] = &["error", "message"];

#[derive(Clone, Debug)]
pub struct Table {
    pub header: &'static [&'static str],
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Table { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a subcommand hands back for rendering.
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    /// None when the rows were already streamed.
    pub table: Option<Table>,
    pub citations: Vec<String>,
    /// False on a verification failure.
    pub ok: bool,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    seed: u64,
    result: &'a Value,
    citations: &'a [String],
}

/// TSV fields cannot hold tabs or newlines.
pub fn cell(s: impl ToString) -> String {
    s.to_string().replace(['\t', '\n', '\r'], " ")
}

pub fn tsv_line(fields: &[String]) -> String {
    fields.iter().map(cell).collect::<Vec<_>>().join("\t")
}

pub fn header_line(header: &[&str]) -> String {
    header.join("\t")
}

pub fn emit(out: &mut impl Write, format: Format, seed: u64, report: &Report) -> io::Result<()> {
    match format {
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: report.command,
                seed,
                result: &report.result,
                citations: &report.citations,
            };
            serde_json::to_writer_pretty(&mut *out, &env)?;
            writeln!(out)
        }
        Format::Tsv => {
            let Some(table) = &report.table else {
                return Ok(());
            };
            writeln!(out, "{}", header_line(table.header))?;
            for row in &table.rows {
                writeln!(out, "{}", tsv_line(row))?;
            }
            Ok(())
        }
    }
}

pub fn citations<'a>(it: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut v: Vec<String> = it.into_iter().filter(|c| !c.is_empty()).map(String::from).collect();
    v.sort();
    v.dedup();
    v
}
