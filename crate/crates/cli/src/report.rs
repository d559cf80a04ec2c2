//! Output records and their JSON-lines / CSV encodings.
//!
//! Real numbers are written with 17 significant digits, which is enough for
//! any `f64` to survive a text round trip unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use jfourier::{Diagnostics, C64};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::args::Format;
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Real(f64),
    Complex(C64),
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagValue {
    Count(usize),
    Real(f64),
    Flag(bool),
}

/// `x` with 17 significant digits, or `null` when not finite.
pub fn format_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("formatted JSON literal")
}

impl ParamValue {
    fn json(&self) -> Box<RawValue> {
        match self {
            ParamValue::Real(x) => raw(format_real(*x)),
            ParamValue::Complex(c) => raw(format!("[{},{}]", format_real(c.re), format_real(c.im))),
            ParamValue::Int(n) => raw(n.to_string()),
            ParamValue::Text(s) => raw(serde_json::to_string(s).expect("string encodes")),
        }
    }

    fn cell(&self) -> String {
        match self {
            ParamValue::Real(x) => format_real(*x),
            ParamValue::Complex(c) => format!("{},{}", format_real(c.re), format_real(c.im)),
            ParamValue::Int(n) => n.to_string(),
            ParamValue::Text(s) => s.clone(),
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Real(x) => write!(f, "{x}"),
            ParamValue::Complex(c) if c.im == 0.0 => write!(f, "{}", c.re),
            ParamValue::Complex(c) => write!(f, "{},{}", c.re, c.im),
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// A parameter as a plain JSON value (numbers at full precision).
pub fn param_json(v: &ParamValue) -> serde_json::Value {
    serde_json::from_str(v.json().get()).expect("parameter literal parses")
}

impl DiagValue {
    fn json(&self) -> Box<RawValue> {
        raw(self.cell())
    }

    fn cell(&self) -> String {
        match self {
            DiagValue::Count(n) => n.to_string(),
            DiagValue::Real(x) => format_real(*x),
            DiagValue::Flag(b) => b.to_string(),
        }
    }
}

/// Flattens library diagnostics into named fields.
pub fn diagnostic_fields(d: &Diagnostics) -> Vec<(String, DiagValue)> {
    let mut v = match *d {
        Diagnostics::Series(s) => vec![
            ("converged", DiagValue::Flag(s.converged)),
            ("last_term", DiagValue::Real(s.last_term)),
            ("terms_used", DiagValue::Count(s.terms)),
        ],
        Diagnostics::Quadrature {
            nodes_used,
            err_estimate,
            converged,
        } => vec![
            ("converged", DiagValue::Flag(converged)),
            ("err_estimate", DiagValue::Real(err_estimate)),
            ("nodes_used", DiagValue::Count(nodes_used)),
        ],
        Diagnostics::Expansion {
            terms_used,
            tail_bound,
            complete,
        } => vec![
            ("complete", DiagValue::Flag(complete)),
            ("converged", DiagValue::Flag(true)),
            ("tail_bound", DiagValue::Real(tail_bound)),
            ("terms_used", DiagValue::Count(terms_used)),
        ],
        Diagnostics::Closed => vec![("converged", DiagValue::Flag(true))],
    }
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect::<Vec<_>>();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

/// One evaluated point.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub function: String,
    pub method: String,
    /// Sorted by name.
    pub parameters: Vec<(String, ParamValue)>,
    pub value: C64,
    /// Sorted by name.
    pub diagnostics: Vec<(String, DiagValue)>,
    pub wall_time_ns: u64,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    function: &'a str,
    method: &'a str,
    parameters: BTreeMap<&'a str, Box<RawValue>>,
    re: Box<RawValue>,
    im: Box<RawValue>,
    diagnostics: BTreeMap<&'a str, Box<RawValue>>,
    wall_time_ns: u64,
}

/// An [`EvalReport`] read back from its JSON form.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct ReportRecord {
    pub function: String,
    pub method: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub re: f64,
    pub im: f64,
    pub diagnostics: BTreeMap<String, serde_json::Value>,
    pub wall_time_ns: u64,
}

impl EvalReport {
    pub fn to_json(&self) -> String {
        let r = JsonReport {
            function: &self.function,
            method: &self.method,
            parameters: self
                .parameters
                .iter()
                .map(|(k, v)| (k.as_str(), v.json()))
                .collect(),
            re: raw(format_real(self.value.re)),
            im: raw(format_real(self.value.im)),
            diagnostics: self
                .diagnostics
                .iter()
                .map(|(k, v)| (k.as_str(), v.json()))
                .collect(),
            wall_time_ns: self.wall_time_ns,
        };
        serde_json::to_string(&r).expect("report serializes")
    }

    pub fn parse_json(line: &str) -> Result<ReportRecord, serde_json::Error> {
        serde_json::from_str(line)
    }
}

/// Writes reports as JSON lines or as one CSV table. CSV columns: function,
/// method, parameters (sorted), re, im, diagnostics (sorted), wall_time_ns;
/// a cell is empty when a row lacks that parameter or diagnostic.
pub fn write_reports(
    out: &mut dyn Write,
    reports: &[EvalReport],
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let params: BTreeSet<&str> = reports
                .iter()
                .flat_map(|r| r.parameters.iter().map(|(k, _)| k.as_str()))
                .collect();
            let diags: BTreeSet<&str> = reports
                .iter()
                .flat_map(|r| r.diagnostics.iter().map(|(k, _)| k.as_str()))
                .collect();
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["function", "method"];
            header.extend(params.iter());
            header.extend(["re", "im"]);
            header.extend(diags.iter());
            header.push("wall_time_ns");
            w.write_record(&header)?;
            for r in reports {
                let mut row = vec![r.function.clone(), r.method.clone()];
                for p in &params {
                    row.push(
                        lookup(&r.parameters, p)
                            .map(ParamValue::cell)
                            .unwrap_or_default(),
                    );
                }
                row.push(format_real(r.value.re));
                row.push(format_real(r.value.im));
                for d in &diags {
                    row.push(
                        lookup(&r.diagnostics, d)
                            .map(DiagValue::cell)
                            .unwrap_or_default(),
                    );
                }
                row.push(r.wall_time_ns.to_string());
                w.write_record(&row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn lookup<'a, T>(pairs: &'a [(String, T)], key: &str) -> Option<&'a T> {
    pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

/// Discrepancy between a reference method and another method at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub function: String,
    pub reference: String,
    pub method: String,
    pub parameters: Vec<(String, ParamValue)>,
    pub reference_value: C64,
    pub value: C64,
    pub abs_err: f64,
    /// `abs_err / |reference|`; infinite when the reference is zero.
    pub rel_err: f64,
    /// `abs_err / max(1, |reference|)`, the quantity held to `--tol`.
    pub discrepancy: f64,
}

impl ComparisonRow {
    pub fn new(
        function: &str,
        reference: &str,
        method: &str,
        parameters: Vec<(String, ParamValue)>,
        reference_value: C64,
        value: C64,
    ) -> Self {
        let abs_err = (value - reference_value).norm();
        let scale = reference_value.norm();
        let rel_err = if scale > 0.0 {
            abs_err / scale
        } else if abs_err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        ComparisonRow {
            function: function.to_string(),
            reference: reference.to_string(),
            method: method.to_string(),
            parameters,
            reference_value,
            value,
            abs_err,
            rel_err,
            discrepancy: abs_err / scale.max(1.0),
        }
    }

    fn to_json(&self) -> String {
        let mut m: BTreeMap<&str, Box<RawValue>> = BTreeMap::new();
        m.insert("function", ParamValue::Text(self.function.clone()).json());
        m.insert("reference", ParamValue::Text(self.reference.clone()).json());
        m.insert("method", ParamValue::Text(self.method.clone()).json());
        let params: BTreeMap<&str, Box<RawValue>> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.as_str(), v.json()))
            .collect();
        m.insert(
            "parameters",
            raw(serde_json::to_string(&params).expect("params encode")),
        );
        m.insert(
            "reference_value",
            ParamValue::Complex(self.reference_value).json(),
        );
        m.insert("value", ParamValue::Complex(self.value).json());
        m.insert("abs_err", raw(format_real(self.abs_err)));
        m.insert("rel_err", raw(format_real(self.rel_err)));
        m.insert("discrepancy", raw(format_real(self.discrepancy)));
        serde_json::to_string(&m).expect("row encodes")
    }
}

/// Summary of a comparison run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonSummary {
    pub points: usize,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    pub max_discrepancy: f64,
    pub tol: f64,
    pub pass: bool,
}

pub fn write_comparison(
    out: &mut dyn Write,
    rows: &[ComparisonRow],
    summary: &ComparisonSummary,
    format: Format,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            for r in rows {
                writeln!(out, "{}", r.to_json())?;
            }
            writeln!(out, "{}", serde_json::json!({ "summary": summary }))?;
        }
        Format::Csv => {
            let params: BTreeSet<&str> = rows
                .iter()
                .flat_map(|r| r.parameters.iter().map(|(k, _)| k.as_str()))
                .collect();
            let mut w = csv::Writer::from_writer(&mut *out);
            let mut header = vec!["function", "reference", "method"];
            header.extend(params.iter());
            header.extend([
                "ref_re",
                "ref_im",
                "re",
                "im",
                "abs_err",
                "rel_err",
                "discrepancy",
            ]);
            w.write_record(&header)?;
            for r in rows {
                let mut row = vec![r.function.clone(), r.reference.clone(), r.method.clone()];
                for p in &params {
                    row.push(
                        lookup(&r.parameters, p)
                            .map(ParamValue::cell)
                            .unwrap_or_default(),
                    );
                }
                for x in [
                    r.reference_value.re,
                    r.reference_value.im,
                    r.value.re,
                    r.value.im,
                    r.abs_err,
                    r.rel_err,
                    r.discrepancy,
                ] {
                    row.push(format_real(x));
                }
                w.write_record(&row)?;
            }
            w.flush()?;
            drop(w);
            writeln!(
                out,
                "# points={} max_abs_err={} max_rel_err={} max_discrepancy={} tol={} pass={}",
                summary.points,
                format_real(summary.max_abs_err),
                format_real(summary.max_rel_err),
                format_real(summary.max_discrepancy),
                summary.tol,
                summary.pass
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EvalReport {
        EvalReport {
            function: "bessel-j".into(),
            method: "integral".into(),
            parameters: vec![
                ("nu".into(), ParamValue::Complex(C64::new(0.1, -1.0 / 3.0))),
                ("seq".into(), ParamValue::Text("geometric:0.6".into())),
                ("u".into(), ParamValue::Real(std::f64::consts::PI)),
            ],
            value: C64::new(0.1 + 0.2, -1e-300),
            diagnostics: vec![
                ("converged".into(), DiagValue::Flag(true)),
                ("err_estimate".into(), DiagValue::Real(3.3e-17)),
                ("nodes_used".into(), DiagValue::Count(161)),
            ],
            wall_time_ns: 1234,
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        let line = r.to_json();
        let back = EvalReport::parse_json(&line).unwrap();
        assert_eq!(back.re, r.value.re);
        assert_eq!(back.im, r.value.im);
        let nu = back.parameters["nu"].as_array().unwrap();
        assert_eq!(nu[1].as_f64().unwrap(), -1.0 / 3.0);
        assert_eq!(back.parameters["u"].as_f64().unwrap(), std::f64::consts::PI);
        assert_eq!(back.diagnostics["nodes_used"].as_u64(), Some(161));
        assert_eq!(back.diagnostics["err_estimate"].as_f64(), Some(3.3e-17));
        assert!(line.contains("3.0000000000000004e-1"));
    }

    #[test]
    fn csv_columns() {
        let mut buf = Vec::new();
        write_reports(&mut buf, &[sample()], Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "function,method,nu,seq,u,re,im,converged,err_estimate,nodes_used,wall_time_ns"
        );
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let row = rd.records().next().unwrap().unwrap();
        assert_eq!(&row[2], "1.0000000000000001e-1,-3.3333333333333331e-1");
        assert_eq!(row[5].parse::<f64>().unwrap(), 0.1 + 0.2);
    }
}
