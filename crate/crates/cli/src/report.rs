//! Tabular reports rendered as JSON, CSV or Markdown.

use infoeval_core::Score;
use serde_json::{Map, Number, Value};

use crate::args::{Format, Precision};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(u64),
    Bool(bool),
    /// A number and the decimals it is printed with.
    Num(f64, u32),
    Singular,
    Missing,
}

impl Cell {
    pub fn score(score: Score, decimals: u32) -> Self {
        match score {
            Score::Finite(v) => Cell::Num(v, decimals),
            Score::Singular => Cell::Singular,
            Score::Undefined => Cell::Missing,
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn render(&self, precision: Precision) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Num(v, decimals) => format_number(*v, *decimals, precision),
            Cell::Singular => "S".to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn to_json(&self, precision: Precision) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(v) => Value::Number((*v).into()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Num(..) => {
                let printed = self.render(precision);
                let parsed: f64 = printed.parse().expect("formatted number parses");
                Number::from_f64(parsed).map_or(Value::Null, Value::Number)
            }
            Cell::Singular => Value::String("S".to_string()),
            Cell::Missing => Value::Null,
        }
    }
}

pub fn format_number(v: f64, decimals: u32, precision: Precision) -> String {
    let s = match precision {
        Precision::Fixed => format!("{v:.*}", decimals as usize),
        Precision::Raw => format!("{v}"),
    };
    // Avoid printing "-0.000" for values that round to zero.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub title: Option<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: Vec<String>) -> Self {
        Self { title: None, headers, rows: Vec::new() }
    }

    pub fn titled(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

pub fn render(tables: &[Table], format: Format, precision: Precision) -> String {
    match format {
        Format::Json => render_json(tables, precision),
        Format::Csv => render_csv(tables, precision),
        Format::Markdown => render_markdown(tables, precision),
    }
}

fn table_json(table: &Table, precision: Precision) -> Value {
    let rows = table
        .rows
        .iter()
        .map(|row| {
            let object: Map<String, Value> =
                table.headers.iter().cloned().zip(row.iter().map(|c| c.to_json(precision))).collect();
            Value::Object(object)
        })
        .collect();
    Value::Array(rows)
}

fn render_json(tables: &[Table], precision: Precision) -> String {
    let value = match tables {
        [only] => table_json(only, precision),
        _ => Value::Object(
            tables
                .iter()
                .enumerate()
                .map(|(i, t)| (t.title.clone().unwrap_or_else(|| format!("table{}", i + 1)), table_json(t, precision)))
                .collect(),
        ),
    };
    let mut out = serde_json::to_string_pretty(&value).expect("json values serialize");
    out.push('\n');
    out
}

fn render_csv(tables: &[Table], precision: Precision) -> String {
    let mut out = String::new();
    for (i, table) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if tables.len() > 1 {
            if let Some(title) = &table.title {
                out.push_str(&format!("# {title}\n"));
            }
        }
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&table.headers).expect("write to memory");
        for row in &table.rows {
            writer.write_record(row.iter().map(|c| c.render(precision))).expect("write to memory");
        }
        let bytes = writer.into_inner().expect("flush to memory");
        out.push_str(&String::from_utf8(bytes).expect("utf-8 input"));
    }
    out
}

fn render_markdown(tables: &[Table], precision: Precision) -> String {
    let mut out = String::new();
    for (i, table) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if let Some(title) = &table.title {
            out.push_str(&format!("### {title}\n\n"));
        }
        let cells: Vec<Vec<String>> =
            table.rows.iter().map(|r| r.iter().map(|c| c.render(precision).replace('|', "\\|")).collect()).collect();
        let widths: Vec<usize> = (0..table.headers.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([table.headers[j].len(), 3]).max().unwrap_or(3))
            .collect();
        let line = |items: Vec<String>| {
            let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            format!("| {} |\n", padded.join(" | "))
        };
        out.push_str(&line(table.headers.clone()));
        out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect()));
        for row in cells {
            out.push_str(&line(row));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["model".into(), "NI1".into(), "NI20".into()]);
        t.push(vec![Cell::text("M1"), Cell::Num(0.83127, 3), Cell::Singular]);
        t.push(vec![Cell::text("M2"), Cell::Num(1.0, 3), Cell::Missing]);
        t
    }

    #[test]
    fn numbers() {
        assert_eq!(format_number(0.83127, 3, Precision::Fixed), "0.831");
        assert_eq!(format_number(-1e-17, 3, Precision::Fixed), "0.000");
        assert_eq!(format_number(0.1, 3, Precision::Raw), "0.1");
    }

    #[test]
    fn csv_output() {
        let out = render(&[sample()], Format::Csv, Precision::Fixed);
        assert_eq!(out, "model,NI1,NI20\nM1,0.831,S\nM2,1.000,\n");
    }

    #[test]
    fn json_output() {
        let out = render(&[sample()], Format::Json, Precision::Fixed);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["NI1"], 0.831);
        assert_eq!(v[0]["NI20"], "S");
        assert!(v[1]["NI20"].is_null());
    }

    #[test]
    fn markdown_output() {
        let out = render(&[sample()], Format::Markdown, Precision::Fixed);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "| model | NI1   | NI20 |");
        assert_eq!(lines[1], "| ----- | ----- | ---- |");
        assert_eq!(lines[2], "| M1    | 0.831 | S    |");
    }
}
