//! Tables rendered as CSV or as JSON with a `meta` header.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            // serde_json writes non-finite floats as null
            Cell::Num(x) => s.serialize_f64(*x),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, meta: &Meta, w: &mut W) -> io::Result<()> {
        let doc = Document {
            meta,
            records: Records(self),
        };
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    }
}

struct Records<'a>(&'a Table);

struct Record<'a>(&'a [String], &'a [Cell]);

impl Serialize for Records<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.rows.iter().map(|r| Record(&self.0.columns, r)))
    }
}

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Run parameters echoed in JSON output; swept or inapplicable values are null.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub k: Option<f64>,
    pub a: Option<f64>,
    pub alpha: Option<f64>,
    pub tol: f64,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub version: &'static str,
}

#[derive(Serialize)]
struct Document<'a> {
    meta: &'a Meta,
    records: Records<'a>,
}
