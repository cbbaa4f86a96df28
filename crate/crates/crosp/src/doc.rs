//! Output documents.
//!
//! Every command builds a [`Record`], an ordered list of named [`Field`]s,
//! which is then rendered as JSON, a plain-text table or CSV. Floats are
//! always written with 17 significant digits so that outputs diff cleanly;
//! `serde_json` would otherwise print the shortest round-trip form, whose
//! length varies from value to value.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// `x` with 17 significant digits in scientific notation, or `None` when `x`
/// is not finite.
pub fn sig17(x: f64) -> Option<String> {
    x.is_finite().then(|| format!("{x:.16e}"))
}

/// One value in an output document.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Null,
    Bool(bool),
    Int(i128),
    /// Non-finite values are written as `null`.
    Num(f64),
    Str(String),
    List(Vec<Field>),
    Obj(Record),
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Str(s.to_owned())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Str(s)
    }
}

impl From<Record> for Field {
    fn from(r: Record) -> Self {
        Field::Obj(r)
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(x: Option<T>) -> Self {
        x.map_or(Field::Null, Into::into)
    }
}

macro_rules! int_field {
    ($($t:ty),*) => {$(
        impl From<$t> for Field {
            fn from(x: $t) -> Self {
                Field::Int(x as i128)
            }
        }
    )*};
}
int_field!(usize, u64, u32, i32, i64);

impl Field {
    /// Text for tables and CSV cells.
    pub fn cell(&self) -> String {
        match self {
            Field::Null => String::new(),
            Field::Bool(b) => b.to_string(),
            Field::Int(i) => i.to_string(),
            Field::Num(x) => sig17(*x).unwrap_or_else(|| x.to_string()),
            Field::Str(s) => s.clone(),
            Field::List(_) | Field::Obj(_) => serde_json::to_string(self).expect("fields always serialize"),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Null => serializer.serialize_none(),
            Field::Bool(b) => serializer.serialize_bool(*b),
            Field::Int(i) => serializer.serialize_i128(*i),
            Field::Num(x) => match sig17(*x) {
                Some(text) => RawValue::from_string(text).map_err(serde::ser::Error::custom)?.serialize(serializer),
                None => serializer.serialize_none(),
            },
            Field::Str(s) => serializer.serialize_str(s),
            Field::List(items) => {
                let mut seq = serializer.serialize_seq(Some(items.len()))?;
                for it in items {
                    seq.serialize_element(it)?;
                }
                seq.end()
            }
            Field::Obj(r) => r.serialize(serializer),
        }
    }
}

/// An ordered JSON object.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Field)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder-style insertion; keys keep their insertion order.
    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: &str, value: impl Into<Field>) {
        self.0.push((key.to_owned(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }

    /// Scalar leaves with dotted keys, e.g. `config.seed`.
    pub fn flatten(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        self.flatten_into("", &mut out);
        out
    }

    fn flatten_into(&self, prefix: &str, out: &mut Vec<(String, String)>) {
        for (k, v) in &self.0 {
            let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            match v {
                Field::Obj(r) => r.flatten_into(&key, out),
                other => out.push((key, other.cell())),
            }
        }
    }

    /// `key  value` lines with aligned values.
    pub fn to_table(&self) -> String {
        let flat = self.flatten();
        let width = flat.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        flat.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }

    /// A header line and one value line.
    pub fn to_csv(&self) -> String {
        let flat = self.flatten();
        csv_lines(
            &flat.iter().map(|(k, _)| k.clone()).collect::<Vec<_>>(),
            &[flat.into_iter().map(|(_, v)| v).collect()],
        )
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// CSV text for a header and rows.
pub fn csv_lines(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("writing to memory cannot fail");
    for r in rows {
        w.write_record(r).expect("writing to memory cannot fail");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV output is UTF-8")
}

/// Left-aligned plain-text columns.
pub fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}
