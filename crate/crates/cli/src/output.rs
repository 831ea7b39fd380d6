use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use iwqm::verify::Report;
use iwqm::C64;
use serde::Serialize;

/// Buffered stdout or file.
pub struct Sink(Box<dyn Write>);

impl Sink {
    pub fn open(path: Option<&Path>) -> io::Result<Self> {
        Ok(match path {
            Some(p) => Sink(Box::new(BufWriter::new(
                File::create(p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?,
            ))),
            None => Sink(Box::new(BufWriter::new(io::stdout()))),
        })
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.0.flush()
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.0.write(buf)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.0.flush()
    }
}

/// Complex number as `{"re": .., "im": ..}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Cx {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for Cx {
    fn from(z: C64) -> Self {
        Cx { re: z.re, im: z.im }
    }
}

pub fn write_json<T: Serialize>(sink: &mut Sink, value: &T) -> Result<(), crate::Failure> {
    serde_json::to_writer_pretty(&mut *sink, value)?;
    writeln!(sink)?;
    Ok(())
}

pub fn write_reports_csv(sink: &mut Sink, reports: &[Report]) -> Result<(), crate::Failure> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["suite", "check", "anchor", "residual", "tolerance", "pass", "adjusted", "detail"])?;
    for r in reports {
        for c in &r.checks {
            w.write_record([
                r.suite.as_str(),
                c.name.as_str(),
                c.anchor.as_str(),
                &c.residual.map(|x| format!("{x:e}")).unwrap_or_default(),
                &format!("{:e}", c.tolerance),
                &c.pass.to_string(),
                &c.adjusted.to_string(),
                c.detail.as_deref().unwrap_or(""),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Rows of numbers under a header, as CSV or a JSON array of objects.
pub fn write_table(sink: &mut Sink, format: crate::Format, header: &[&str], rows: &[Vec<f64>]) -> Result<(), crate::Failure> {
    match format {
        crate::Format::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(header)?;
            for row in rows {
                w.write_record(row.iter().map(|x| format!("{x:e}")))?;
            }
            w.flush()?;
        }
        crate::Format::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|row| {
                    header
                        .iter()
                        .zip(row)
                        .map(|(h, x)| (h.to_string(), serde_json::json!(x)))
                        .collect()
                })
                .collect();
            write_json(sink, &objects)?;
        }
    }
    Ok(())
}
