use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl Cell {
    /// Shortest text that parses back to the same value.
    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

/// `Debug` on f64 is the shortest round-trip form and switches to
/// exponent notation for very large and very small magnitudes. Negative
/// zero prints as zero.
pub fn num(v: f64) -> String {
    format!("{:?}", if v == 0.0 { 0.0 } else { v })
}

/// What a subcommand produces: rows for csv/table, and a JSON document
/// (the rows as objects unless a richer one is given). Notes go to stderr.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub json: Option<Value>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Report {
        Report { columns: columns.iter().map(|c| c.to_string()).collect(), ..Report::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    fn rows_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => {
                let mut doc = self.json.clone().unwrap_or_else(|| self.rows_json());
                unsign_zeros(&mut doc);
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)
            }
            Format::Csv => {
                writeln!(out, "{}", self.columns.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","))?;
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(|c| csv_field(&c.render())).collect();
                    writeln!(out, "{}", line.join(","))?;
                }
                Ok(())
            }
            Format::Table => {
                let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
                let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
                for row in &cells {
                    for (w, c) in widths.iter_mut().zip(row) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |items: &[String]| -> String {
                    let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                    padded.join("  ").trim_end().to_string()
                };
                writeln!(out, "{}", line(&self.columns))?;
                let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
                writeln!(out, "{}", line(&rule))?;
                for row in &cells {
                    writeln!(out, "{}", line(row))?;
                }
                Ok(())
            }
        }
    }
}

fn unsign_zeros(v: &mut Value) {
    match v {
        Value::Number(n) if n.as_f64() == Some(0.0) && n.is_f64() => *v = Value::from(0.0),
        Value::Array(items) => items.iter_mut().for_each(unsign_zeros),
        Value::Object(map) => map.values_mut().for_each(unsign_zeros),
        _ => {}
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 123456.789, f64::MIN_POSITIVE] {
            assert_eq!(num(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(num(0.25), "0.25");
        assert_eq!(num(1e-10), "1e-10");
    }

    #[test]
    fn formats() {
        let mut r = Report::new(&["m", "g"]);
        r.push(vec![Cell::Num(1.0), Cell::Num(-1.0)]);
        r.push(vec![Cell::Num(0.5), Cell::Text("a,b".into())]);
        fn render_with(r: &Report, f: Format) -> String {
            let mut buf = Vec::new();
            r.write(f, &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        }
        let render = |f| render_with(&r, f);
        assert_eq!(render(Format::Csv), "m,g\n1.0,-1.0\n0.5,\"a,b\"\n");
        let v: Value = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(v[0]["g"], -1.0);
        let mut r = r.clone();
        r.json = Some(serde_json::json!({"z": [-0.0]}));
        assert_eq!(render_with(&r, Format::Json).replace(char::is_whitespace, ""), "{\"z\":[0.0]}");
        assert!(render(Format::Table).starts_with("m    g\n---  ----\n1.0  -1.0\n"));
    }
}
