//! Fixed-precision CSV and JSON writers.
//!
//! CSV floats carry 9 significant digits, JSON floats 17, so repeated runs
//! produce byte-identical files.

use std::io::Write;

use kwl_core::{BlowupReport, EnergyReport, RegimeVerdict};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::CliError;

/// `x` with 9 significant digits; non-finite values as `nan`, `inf`, `-inf`.
pub fn csv_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// `x` as a JSON number with 17 significant digits, or `null` when not finite.
pub fn json_float(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".into() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

fn json_opt(x: Option<f64>) -> Box<RawValue> {
    x.map_or_else(|| RawValue::from_string("null".into()).unwrap(), json_float)
}

pub fn write_trajectory<W: Write>(out: W, trajectory: &[EnergyReport]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(EnergyReport::COLUMNS)?;
    for report in trajectory {
        w.write_record(report.values().iter().map(|v| v.map(csv_float).unwrap_or_default()))?;
    }
    w.flush()?;
    Ok(())
}

struct ReportJson<'a>(&'a EnergyReport);

impl Serialize for ReportJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values = self.0.values();
        let mut map = s.serialize_map(Some(values.len()))?;
        for (name, v) in EnergyReport::COLUMNS.iter().zip(values) {
            map.serialize_entry(name, &json_opt(v))?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct BlowupJson<'a> {
    blew_up: bool,
    t_detect: Box<RawValue>,
    t_bracket: Option<[Box<RawValue>; 2]>,
    trigger: &'static str,
    final_report: ReportJson<'a>,
}

pub fn blowup_json(report: &BlowupReport) -> String {
    let doc = BlowupJson {
        blew_up: report.blew_up,
        t_detect: json_opt(report.t_detect),
        t_bracket: report.t_bracket.map(|(a, b)| [json_float(a), json_float(b)]),
        trigger: report.trigger.as_str(),
        final_report: ReportJson(&report.final_report),
    };
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    verdict: &'static str,
    fired: &'a str,
    wellposed: bool,
    uniqueness_extra: bool,
    global_existence: bool,
    blowup_interior: bool,
    blowup_two_sources: bool,
    blowup_linear_damping: bool,
}

/// One-line record of a verdict.
pub fn verdict_json(v: &RegimeVerdict) -> String {
    let doc = VerdictJson {
        verdict: v.conclusion.as_str(),
        fired: &v.fired,
        wellposed: v.wellposed,
        uniqueness_extra: v.uniqueness_extra,
        global_existence: v.global_existence,
        blowup_interior: v.blowup_interior,
        blowup_two_sources: v.blowup_two_sources,
        blowup_linear_damping: v.blowup_linear_damping,
    };
    serde_json::to_string(&doc).expect("verdict serializes")
}

pub fn write_series<W: Write>(out: W, header: [&str; 2], rows: &[(f64, f64)]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for &(x, y) in rows {
        w.write_record([csv_float(x), csv_float(y)])?;
    }
    w.flush()?;
    Ok(())
}
