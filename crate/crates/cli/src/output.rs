use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// Provenance written next to every dataset: what produced it and with
/// which parameters. Deliberately free of timestamps and host details so
/// reruns are byte-identical.
pub struct Meta {
    pub command: &'static str,
    pub parameters: Value,
    pub tolerances: Value,
    pub checks: Value,
}

impl Meta {
    fn to_json(&self, table: &Table) -> Value {
        json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "parameters": self.parameters,
            "tolerances": self.tolerances,
            "checks": self.checks,
            "columns": table.columns,
            "rows": table.rows.len(),
        })
    }
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn write_json<W: Write + ?Sized>(out: &mut W, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")
}

fn with_sink<F>(path: Option<&Path>, write: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::io_at("create", p, e))?;
            let mut out = BufWriter::new(file);
            write(&mut out)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io_at("write", p, e))
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("cannot write to standard output", e))
        }
    }
}

/// Write `table` as CSV (plus a `<path>.json` sidecar when writing to a
/// file) or as a single JSON document carrying the same metadata.
pub fn emit(path: Option<&Path>, format: Format, table: &Table, meta: &Meta) -> CliResult<()> {
    match format {
        Format::Csv => {
            with_sink(path, |out| {
                mirrorfield::io::write_csv(out, &table.columns, &table.rows)
            })?;
            if let Some(p) = path {
                let side = sidecar_path(p);
                with_sink(Some(&side), |out| write_json(out, &meta.to_json(table)))?;
            }
            Ok(())
        }
        Format::Json => {
            let mut doc = meta.to_json(table);
            doc["rows"] = json!(table.rows);
            with_sink(path, |out| write_json(out, &doc))
        }
    }
}

/// A JSON report on its own, for commands whose result is not a table.
pub fn emit_report(path: Option<&Path>, report: &Value) -> CliResult<()> {
    with_sink(path, |out| write_json(out, report))
}
