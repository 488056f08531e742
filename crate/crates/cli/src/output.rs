use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;
use x1_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Self {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.rows.push(cells);
    }

    /// A two-column key/value table.
    pub fn fields(title: impl Into<String>, pairs: &[(&str, String)]) -> Self {
        let mut t = Self::new(title, &["field", "value"]);
        for (k, v) in pairs {
            t.row(vec![k.to_string(), v.clone()]);
        }
        t
    }
}

/// A command result: the JSON document plus its tabular rendering.
pub struct Report {
    pub json: Value,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new<S: Serialize>(json: &S, tables: Vec<Table>) -> Result<Self> {
        Ok(Self {
            json: serde_json::to_value(json)?,
            tables,
        })
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            Format::Csv => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    let mut w = csv::Writer::from_writer(Vec::new());
                    w.write_record(&t.headers)?;
                    for r in &t.rows {
                        w.write_record(r)?;
                    }
                    out.push_str(&String::from_utf8(w.into_inner()?)?);
                }
                Ok(out)
            }
            Format::Markdown => {
                let mut out = String::new();
                for (i, t) in self.tables.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("### {}\n\n", t.title));
                    out.push_str(&format!("| {} |\n", t.headers.join(" | ")));
                    out.push_str(&format!("|{}\n", "---|".repeat(t.headers.len())));
                    for r in &t.rows {
                        let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
                        out.push_str(&format!("| {} |\n", cells.join(" | ")));
                    }
                }
                Ok(out)
            }
        }
    }
}

pub fn rat(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn list<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `2^5 3^4 19 37`.
pub fn factorization(f: &[(u64, u32)]) -> String {
    f.iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut t = Table::new("t", &["a", "b"]);
        t.row(vec!["1".into(), "x|y".into()]);
        t.row(vec!["2".into(), "p,q".into()]);
        Report::new(&serde_json::json!({"k": 1}), vec![t]).unwrap()
    }

    #[test]
    fn renders_each_format() {
        let r = sample();
        assert_eq!(r.render(Format::Json).unwrap(), "{\n  \"k\": 1\n}\n");
        assert_eq!(r.render(Format::Csv).unwrap(), "a,b\n1,x|y\n2,\"p,q\"\n");
        assert_eq!(
            r.render(Format::Markdown).unwrap(),
            "### t\n\n| a | b |\n|---|---|\n| 1 | x\\|y |\n| 2 | p,q |\n"
        );
    }

    #[test]
    fn helpers() {
        assert_eq!(rat(&Rational::new(9177, 80)), "9177/80");
        assert_eq!(rat(&Rational::from_integer(3)), "3");
        assert_eq!(
            factorization(&[(2, 5), (3, 4), (19, 1), (37, 1)]),
            "2^5 3^4 19 37"
        );
    }
}
