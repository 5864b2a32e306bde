//! CSV tables with a `#` manifest header, and companion gnuplot scripts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    /// A value that does not exist, e.g. a relative error against zero.
    Undefined,
}

impl Cell {
    pub fn value(self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(v),
            Cell::Undefined => None,
        }
    }
}

/// Twelve significant digits, scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.11e}")
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Num(v) => f.write_str(&format_number(*v)),
            Cell::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    /// Values of one column; `None` marks undefined cells.
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[i].value()).collect())
    }
}

/// Provenance written at the top of every CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub command: String,
    pub version: &'static str,
    pub config: Vec<(&'static str, String)>,
    pub epsilon: f64,
    pub tau0: f64,
    pub notes: Vec<String>,
    pub outputs: Vec<String>,
}

impl Manifest {
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("tripleslit {}", self.version),
            format!("command: {}", self.command),
        ];
        out.extend(self.config.iter().map(|(k, v)| format!("config {k} = {v}")));
        out.push(format!("derived epsilon = {:e} s", self.epsilon));
        out.push(format!("derived tau0 = {:e} s", self.tau0));
        out.extend(self.notes.iter().map(|n| format!("note: {n}")));
        out.push(format!("outputs: {}", self.outputs.join(", ")));
        out
    }
}

pub fn write_csv(path: &Path, manifest: &Manifest, table: &Table) -> Result<()> {
    let io = |e| CliError::io(path, e);
    let file = File::create(path).map_err(io)?;
    let mut w = BufWriter::new(file);
    for line in manifest.lines() {
        writeln!(w, "# {line}").map_err(io)?;
    }
    let mut csv = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| CliError::io(path, e.into());
    csv.write_record(&table.columns).map_err(csv_err)?;
    for row in &table.rows {
        csv.write_record(row.iter().map(|c| c.to_string())).map_err(csv_err)?;
    }
    csv.flush().map_err(io)
}

/// Parse a CSV written by [`write_csv`] back into a header and rows.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let csv_err = |e: csv::Error| CliError::io(path, e.into());
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .map_err(csv_err)?;
    let header = reader.headers().map_err(csv_err)?.iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|r| r.iter().map(String::from).collect()))
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_err)?;
    Ok((header, rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    /// Every other column against the first.
    Lines,
    /// Third column over the first two.
    Surface,
}

/// A gnuplot script that plots `csv_name`, referenced relative to the
/// script's directory.
pub fn gnuplot_script(csv_name: &str, table: &Table, style: PlotStyle, title: &str) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\nset datafile commentschars '#'\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set title '{title}'\n"));
    s.push_str(&format!("set xlabel '{}'\n", table.columns[0]));
    match style {
        PlotStyle::Lines => {
            let curves: Vec<String> = (2..=table.columns.len())
                .map(|i| format!("'{csv_name}' using 1:{i} with lines"))
                .collect();
            s.push_str(&format!("plot {}\n", curves.join(", \\\n     ")));
        }
        PlotStyle::Surface => {
            s.push_str(&format!("set ylabel '{}'\n", table.columns[1]));
            s.push_str("set view map\nset palette rgbformulae 33,13,10\n");
            s.push_str(&format!("splot '{csv_name}' using 1:2:3 with points palette pointtype 5 pointsize 0.5\n"));
        }
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// `name.csv` → `name.gp` next to it.
pub fn script_path(csv: &Path) -> PathBuf {
    csv.with_extension("gp")
}
