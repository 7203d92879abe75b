//! Table and report emission. Floats are rounded to 12 significant digits so
//! repeated runs and golden files compare byte for byte.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `f64` that serializes with 12 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig12(pub f64);

impl Sig12 {
    pub fn rounded(self) -> f64 {
        if self.0 == 0.0 || !self.0.is_finite() {
            // also folds -0.0 into 0.0
            return if self.0 == 0.0 { 0.0 } else { self.0 };
        }
        format!("{:.11e}", self.0)
            .parse()
            .expect("formatted float parses")
    }
}

impl Serialize for Sig12 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.rounded())
    }
}

pub fn open(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_csv<R: Serialize>(out: &mut dyn Write, rows: &[R]) -> Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<V: Serialize + ?Sized>(out: &mut dyn Write, value: &V) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    out.write_all(b"\n")
}
