//! Deterministic CSV emission: 17 significant digits, LF endings, header
//! with unit annotations on dimensional columns.

use std::io::Write;
use std::path::Path;

use fewbody_interference::units::UnitSystem;

#[derive(Debug, Clone)]
pub struct Column {
    pub name: String,
    /// Dimensional columns carry the unit mode in brackets.
    pub annotated: bool,
}

impl Column {
    pub fn plain(name: &str) -> Self {
        Self {
            name: name.into(),
            annotated: false,
        }
    }

    pub fn unit(name: &str) -> Self {
        Self {
            name: name.into(),
            annotated: true,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Float(f64),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Float(v) => format!("{v:.16e}"),
            Value::Text(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn write_csv(path: &Path, table: &Table, units: &UnitSystem) -> std::io::Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    let header: Vec<String> = table
        .columns
        .iter()
        .map(|c| {
            if c.annotated {
                format!("{}[{}]", c.name, units.mode)
            } else {
                c.name.clone()
            }
        })
        .collect();
    w.write_all(header.join(",").as_bytes())?;
    w.write_all(b"\n")?;
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(Value::render).collect();
        w.write_all(line.join(",").as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()
}
