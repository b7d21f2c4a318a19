use bgft::C64;
use clap::ValueEnum;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    /// One JSON object per line.
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Complex(C64),
    List(Vec<Field>),
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v as i64)
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Float(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Bool(v)
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.into())
    }
}

impl From<C64> for Field {
    fn from(v: C64) -> Self {
        Field::Complex(v)
    }
}

impl<T: Into<Field>> From<Vec<T>> for Field {
    fn from(v: Vec<T>) -> Self {
        Field::List(v.into_iter().map(Into::into).collect())
    }
}

/// An ordered set of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Field)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Field>) -> Self {
        self.0.push((key, value.into()));
        self
    }
}

fn number(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).unwrap()
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn text(f: &Field, sep: &str) -> String {
    match f {
        Field::Int(v) => v.to_string(),
        Field::Float(v) => number(*v),
        Field::Bool(v) => v.to_string(),
        Field::Text(s) => s.clone(),
        Field::Complex(z) => {
            let sign = if z.im.is_sign_negative() { "-" } else { "+" };
            format!("{}{sign}{}i", number(z.re), number(z.im.abs()))
        }
        Field::List(items) => items.iter().map(|f| text(f, sep)).collect::<Vec<_>>().join(sep),
    }
}

fn json(f: &Field) -> String {
    match f {
        // Non-finite values have no JSON encoding.
        Field::Float(v) if !v.is_finite() => "null".into(),
        Field::Float(v) => number(*v),
        Field::Int(_) | Field::Bool(_) => text(f, ""),
        Field::Text(s) => serde_json::to_string(s).unwrap(),
        Field::Complex(z) => format!("[{},{}]", json(&Field::Float(z.re)), json(&Field::Float(z.im))),
        Field::List(items) => format!("[{}]", items.iter().map(json).collect::<Vec<_>>().join(",")),
    }
}

fn csv_cell(s: String) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = width[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl Format {
    pub fn render(&self, records: &[Record]) -> String {
        match self {
            Format::Json => records
                .iter()
                .map(|r| {
                    let body: Vec<String> =
                        r.0.iter().map(|(k, v)| format!("{}:{}", serde_json::to_string(k).unwrap(), json(v))).collect();
                    format!("{{{}}}\n", body.join(","))
                })
                .collect(),
            Format::Csv => {
                let Some(first) = records.first() else { return String::new() };
                let mut out = first.0.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(",");
                out.push('\n');
                for r in records {
                    out.push_str(&r.0.iter().map(|(_, v)| csv_cell(text(v, ";"))).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
            Format::Table if records.len() == 1 => {
                let rows: Vec<Vec<String>> =
                    records[0].0.iter().map(|(k, v)| vec![k.to_string(), text(v, ", ")]).collect();
                aligned(&rows)
            }
            Format::Table => {
                let Some(first) = records.first() else { return String::new() };
                let mut rows = vec![first.0.iter().map(|(k, _)| k.to_string()).collect::<Vec<_>>()];
                rows.extend(records.iter().map(|r| r.0.iter().map(|(_, v)| text(v, ", ")).collect()));
                aligned(&rows)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        Record::new()
            .with("name", "a,b")
            .with("x", 0.1)
            .with("bad", f64::INFINITY)
            .with("z", C64::new(1.0, -0.5))
            .with("ok", true)
    }

    #[test]
    fn json_lines_are_valid() {
        let out = Format::Json.render(&[sample(), sample()]);
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["x"], 0.1);
            assert!(v["bad"].is_null());
            assert_eq!(v["z"][1], -0.5);
        }
    }

    #[test]
    fn csv_quotes_and_formats() {
        let out = Format::Csv.render(&[sample()]);
        assert_eq!(out, "name,x,bad,z,ok\n\"a,b\",0.1,inf,1.0-0.5i,true\n");
    }

    #[test]
    fn single_record_table_is_vertical() {
        let out = Format::Table.render(&[Record::new().with("alpha", 0.0).with("n", 4usize)]);
        assert_eq!(out, "alpha  0.0\nn      4\n");
    }
}
