//! Table assembly and emission.
//!
//! Every float is printed with 17 significant digits ({:.16e}) in both
//! CSV and JSON so output is reproducible bit-exactly and survives a
//! parse/re-emit round trip. CSV carries the row table only (header +
//! rows, comma-separated, LF, UTF-8); JSON wraps the same rows in one
//! object with `params`, `rows`, and `meta`.

use clap::ValueEnum;
use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Unit {
    Nats,
    Bits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell. Floats must be finite (JSON has no NaN/inf).
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    F64(f64),
    U64(u64),
    I64(i64),
    Str(String),
}

impl Value {
    pub fn str(s: &str) -> Value {
        Value::Str(s.to_owned())
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::F64(v) => serde_json::Value::from(*v),
            Value::U64(v) => serde_json::Value::from(*v),
            Value::I64(v) => serde_json::Value::from(*v),
            Value::Str(s) => serde_json::Value::from(s.as_str()),
        }
    }
}

/// Emission-ready result table: identifying parameters, a fixed column
/// order, data rows, and run metadata (tolerances, version, unit).
#[derive(Debug, Clone)]
pub struct Table {
    pub params: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub meta: Vec<(&'static str, Value)>,
}

impl Table {
    /// Converts every entropy-valued column (name contains "entropy")
    /// in place and records the unit in `meta`. Ratios and deficits are
    /// unit-free and untouched.
    pub fn apply_unit(&mut self, unit: Unit) {
        if unit == Unit::Bits {
            let targets: Vec<usize> = self
                .columns
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains("entropy"))
                .map(|(i, _)| i)
                .collect();
            for row in &mut self.rows {
                for &i in &targets {
                    if let Value::F64(v) = &mut row[i] {
                        *v /= std::f64::consts::LN_2;
                    }
                }
            }
        }
        let name = match unit {
            Unit::Nats => "nats",
            Unit::Bits => "bits",
        };
        self.meta.push(("unit", Value::str(name)));
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        let mut buf = Vec::new();
        match format {
            Format::Csv => self.render_csv(&mut buf)?,
            Format::Json => self.render_json(&mut buf)?,
        }
        Ok(buf)
    }

    fn render_csv(&self, out: &mut Vec<u8>) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(b',');
                }
                first = false;
                match cell {
                    Value::F64(v) => write!(out, "{v:.16e}")?,
                    Value::U64(v) => write!(out, "{v}")?,
                    Value::I64(v) => write!(out, "{v}")?,
                    Value::Str(s) => write!(out, "{s}")?,
                }
            }
            out.push(b'\n');
        }
        Ok(())
    }

    fn render_json(&self, out: &mut Vec<u8>) -> io::Result<()> {
        let pairs = |kv: &[(&'static str, Value)]| {
            serde_json::Value::Object(
                kv.iter()
                    .map(|(k, v)| ((*k).to_owned(), v.to_json()))
                    .collect(),
            )
        };
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                serde_json::Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| ((*c).to_owned(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        let doc = serde_json::json!({
            "params": pairs(&self.params),
            "rows": rows,
            "meta": pairs(&self.meta),
        });

        let mut ser = serde_json::Serializer::with_formatter(&mut *out, SciFormatter::default());
        serde::Serialize::serialize(&doc, &mut ser)
            .map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
        out.push(b'\n');
        Ok(())
    }
}

/// Pretty formatter that pins f64 encoding to 17 significant digits;
/// everything else is serde_json's default.
#[derive(Default)]
struct SciFormatter {
    pretty: serde_json::ser::PrettyFormatter<'static>,
}

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::begin_array(&mut self.pretty, w)
    }

    fn end_array<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::end_array(&mut self.pretty, w)
    }

    fn begin_array_value<W>(&mut self, w: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::begin_array_value(&mut self.pretty, w, first)
    }

    fn end_array_value<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::end_array_value(&mut self.pretty, w)
    }

    fn begin_object<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::begin_object(&mut self.pretty, w)
    }

    fn end_object<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::end_object(&mut self.pretty, w)
    }

    fn begin_object_key<W>(&mut self, w: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::begin_object_key(&mut self.pretty, w, first)
    }

    fn end_object_key<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::end_object_key(&mut self.pretty, w)
    }

    fn begin_object_value<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::begin_object_value(&mut self.pretty, w)
    }

    fn end_object_value<W>(&mut self, w: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        serde_json::ser::Formatter::end_object_value(&mut self.pretty, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            params: vec![("wtilde", Value::F64(0.1))],
            columns: vec!["beta", "entropy_exact", "evaluations", "status"],
            rows: vec![vec![
                Value::F64(0.5),
                Value::F64(0.25),
                Value::U64(3375),
                Value::str("ok"),
            ]],
            meta: vec![("tol", Value::F64(1e-8))],
        }
    }

    #[test]
    fn csv_uses_seventeen_digit_floats() {
        let out = String::from_utf8(sample().render(Format::Csv).unwrap()).unwrap();
        assert_eq!(
            out,
            "beta,entropy_exact,evaluations,status\n\
             5.0000000000000000e-1,2.5000000000000000e-1,3375,ok\n"
        );
    }

    #[test]
    fn json_has_params_rows_meta_and_same_floats() {
        let out = String::from_utf8(sample().render(Format::Json).unwrap()).unwrap();
        assert!(out.contains("\"params\""));
        assert!(out.contains("\"rows\""));
        assert!(out.contains("\"meta\""));
        assert!(out.contains("5.0000000000000000e-1"));
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["rows"][0]["evaluations"], 3375);
        assert_eq!(parsed["rows"][0]["beta"], 0.5);
    }

    #[test]
    fn bits_conversion_touches_only_entropy_columns() {
        let mut t = sample();
        t.apply_unit(Unit::Bits);
        match (&t.rows[0][0], &t.rows[0][1]) {
            (Value::F64(beta), Value::F64(s)) => {
                assert_eq!(*beta, 0.5);
                assert!((s - 0.25 / std::f64::consts::LN_2).abs() < 1e-15);
            }
            other => panic!("unexpected cells {other:?}"),
        }
        assert!(t.meta.iter().any(|(k, v)| *k == "unit" && *v == Value::str("bits")));
    }
}
