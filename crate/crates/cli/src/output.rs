use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use isolyap_core::ModelSpec;
use serde::{Deserialize, Serialize};

use crate::args::{Format, Quantity};
use crate::compute::Computed;
use crate::error::CliError;

pub const CSV_HEADER: [&str; 5] = ["param", "value", "quantity", "estimate", "error"];

/// One CSV line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub param: Option<String>,
    pub value: Option<f64>,
    pub quantity: Quantity,
    pub estimate: f64,
    /// Absent when the method has no error estimate.
    pub error: Option<f64>,
}

/// JSON output of `exact`, `mc` and `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub quantity: Quantity,
    pub method: String,
    pub spec: ModelSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Document {
    pub fn push(&mut self, quantity: Quantity, c: Computed, label: Option<(String, f64)>) {
        for p in c.points {
            let (param, value) = match p.label.or_else(|| label.clone()) {
                Some((n, v)) => (Some(n), Some(v)),
                None => (None, None),
            };
            let error = (!p.error.is_nan()).then_some(p.error);
            self.rows.push(Row { param, value, quantity, estimate: p.estimate, error });
        }
        for w in c.warnings {
            if !self.warnings.contains(&w) {
                self.warnings.push(w);
            }
        }
    }
}

/// 17 significant digits, locale-free.
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_csv(doc: &Document, w: impl Write) -> Result<(), CliError> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(CSV_HEADER)?;
    for r in &doc.rows {
        csv.write_record([
            r.param.clone().unwrap_or_default(),
            r.value.map(fmt_float).unwrap_or_default(),
            r.quantity.name().to_string(),
            fmt_float(r.estimate),
            r.error.map(fmt_float).unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(value: &T, mut w: impl Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::other)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn emit(doc: &Document, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let w = sink(out)?;
    match format {
        Format::Csv => write_csv(doc, w),
        Format::Json => write_json(doc, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compute::{Computed, Point};
    use isolyap_core::{FieldIndex, ShiftedGaussianSpec};

    #[test]
    fn document_round_trips_and_formats() {
        let spec = ShiftedGaussianSpec::new(FieldIndex::Complex, 3, 2.0, 0.5).unwrap().into();
        let mut doc = Document {
            command: "exact".into(),
            quantity: Quantity::LyapSum,
            method: "asymptotic".into(),
            spec,
            master_seed: None,
            rows: Vec::new(),
            warnings: Vec::new(),
        };
        let c = Computed {
            method: "asymptotic".into(),
            points: vec![Point { label: None, estimate: 0.1, error: f64::NAN }],
            warnings: vec!["w".into()],
        };
        doc.push(Quantity::LyapSum, c, Some(("c".into(), 2.0)));
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(serde_json::from_str::<Document>(&json).unwrap(), doc);
        let mut buf = Vec::new();
        write_csv(&doc, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "param,value,quantity,estimate,error\nc,2.0000000000000000e0,lyap-sum,1.0000000000000001e-1,\n"
        );
        let x = 1.0 / 3.0;
        assert_eq!(fmt_float(x).parse::<f64>().unwrap(), x);
    }
}
