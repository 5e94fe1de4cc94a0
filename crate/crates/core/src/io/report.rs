//! The JSON verification report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moduli::Moduli;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable multiplying every tolerance.
pub const TOL_SCALE_VAR: &str = "TRANSURF_TOL_SCALE";

/// Reads `TRANSURF_TOL_SCALE`, defaulting to 1.
pub fn tolerance_scale() -> Result<f64> {
    match std::env::var(TOL_SCALE_VAR) {
        Err(_) => Ok(1.0),
        Ok(text) => match text.trim().parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
            _ => Err(Error::InvalidArgument(format!(
                "{TOL_SCALE_VAR}={text:?} is not a positive number"
            ))),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub max: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ReportInputs {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Moduli>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub inputs: ReportInputs,
    pub tolerance_scale: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub summary: BTreeMap<String, f64>,
    pub checks: BTreeMap<String, Check>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(inputs: ReportInputs, tolerance_scale: f64) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: None,
            inputs,
            tolerance_scale,
            notices: Vec::new(),
            summary: BTreeMap::new(),
            checks: BTreeMap::new(),
            pass: true,
        }
    }

    /// Records `max` against `tolerance × scale`; NaN never passes.
    pub fn check(&mut self, name: &str, max: f64, tolerance: f64) -> &mut Check {
        let tolerance = tolerance * self.tolerance_scale;
        let pass = max <= tolerance;
        self.pass &= pass;
        self.checks.insert(
            name.into(),
            Check {
                max,
                tolerance,
                pass,
                note: None,
            },
        );
        self.checks.get_mut(name).expect("just inserted")
    }

    pub fn check_with_note(
        &mut self,
        name: &str,
        max: f64,
        tolerance: f64,
        note: impl Into<String>,
    ) {
        self.check(name, max, tolerance).note = Some(note.into());
    }

    /// Informational value that does not affect `pass`.
    pub fn record(&mut self, name: &str, value: f64) {
        self.summary.insert(name.into(), value);
    }

    pub fn notice(&mut self, text: impl Into<String>) {
        self.notices.push(text.into());
    }

    pub fn stamp_now(&mut self) {
        self.timestamp =
            Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| !c.pass)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
