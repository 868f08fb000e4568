//! Table emission: a `#`-prefixed provenance header followed by numeric
//! rows. Payloads are purely numeric, so no quoting is needed; identical
//! configs produce byte-identical output.

use std::io::Write;
use std::path::Path;

use crate::config::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "tsv" => Ok(Format::Tsv),
            other => Err(CliError::Config(format!("unknown format {other:?}"))),
        }
    }

    fn sep(&self) -> char {
        match self {
            Format::Csv => ',',
            Format::Tsv => '\t',
        }
    }
}

/// One table: column names, stringified rows, and the count of rows that
/// failed their internal check (drives `--assert`).
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub failures: usize,
    /// Extra `# key: value` summary lines appended after the data.
    pub trailers: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            failures: 0,
            trailers: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_checked(&mut self, row: Vec<String>, ok: bool) {
        if !ok {
            self.failures += 1;
        }
        self.push(row);
    }

    pub fn trailer(&mut self, key: &str, value: String) {
        self.trailers.push((key.to_string(), value));
    }
}

/// Canonical float formatting: full-precision scientific notation, stable
/// across runs.
pub fn fnum(x: f64) -> String {
    format!("{x:.15e}")
}

/// Render the table with its provenance header.
pub fn render(command: &str, provenance: &str, format: Format, table: &Table) -> String {
    let sep = format.sep();
    let mut out = String::new();
    out.push_str(&format!("# lowzeros {}\n", env!("CARGO_PKG_VERSION")));
    out.push_str(&format!("# command: {command}\n"));
    out.push_str(&format!("# config: {provenance}\n"));
    out.push_str(&format!("# columns: {}\n", table.columns.join(&sep.to_string())));
    for row in &table.rows {
        out.push_str(&row.join(&sep.to_string()));
        out.push('\n');
    }
    for (k, v) in &table.trailers {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out
}

/// Write to the requested sink.
pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}
