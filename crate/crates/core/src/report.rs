//! Machine-readable check records and deterministic serialization.
//!
//! Every check is normalized to `measured <= target + tolerance`; equality
//! checks store the deviation as `measured` against target zero. Floats are
//! serialized with 17 significant digits (round-trip exact for f64) so that
//! identical inputs produce byte-identical reports.

use serde::Serialize;
use std::io;

/// Anchor tag for records that test artifact plumbing rather than a named
/// mathematical property.
pub const PLUMBING: &str = "plumbing";

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// Named property the check verifies, or [`PLUMBING`].
    pub anchor: String,
    /// Compact echo of the inputs the check ran on.
    pub inputs: String,
    pub measured: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    /// `measured <= target + tolerance`.
    pub fn le(
        name: impl Into<String>,
        anchor: &str,
        inputs: impl Into<String>,
        measured: f64,
        target: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.to_string(),
            inputs: inputs.into(),
            measured,
            target,
            tolerance,
            pass: measured.is_finite() && measured <= target + tolerance,
        }
    }

    /// Boolean check, stored as 1/0 against target 1.
    pub fn flag(name: impl Into<String>, anchor: &str, inputs: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.to_string(),
            inputs: inputs.into(),
            measured: if ok { 1.0 } else { 0.0 },
            target: 1.0,
            tolerance: 0.0,
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, records: Vec<CheckRecord>) -> Self {
        let pass = records.iter().all(|r| r.pass);
        Self { suite: suite.into(), records, pass }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(seed: u64, suites: Vec<SuiteReport>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Self { version: env!("CARGO_PKG_VERSION").to_string(), seed, suites, pass }
    }
}

/// 17-significant-digit float rendering shared by CSV and JSON output.
pub fn format_f64(x: f64) -> String {
    format!("{:.16e}", x)
}

struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        if value.is_finite() {
            writer.write_all(format_f64(value).as_bytes())
        } else {
            // JSON has no non-finite numbers; reports must not contain them.
            writer.write_all(b"null")
        }
    }
}

/// Serializes with fixed field order and 17-significant-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFormatter);
    value.serialize(&mut ser).expect("report types serialize infallibly");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// One CSV line from preformatted cells.
pub fn csv_line(cells: &[String]) -> String {
    cells.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_normalize_to_le() {
        let r = CheckRecord::le("x", "some-property", "a=1", 0.5, 1.0, 0.0);
        assert!(r.pass);
        let r = CheckRecord::le("x", "some-property", "a=1", 1.5, 1.0, 0.1);
        assert!(!r.pass);
        let r = CheckRecord::le("x", "some-property", "a=1", f64::NAN, 1.0, 0.1);
        assert!(!r.pass);
    }

    #[test]
    fn json_floats_have_17_digits_and_are_deterministic() {
        #[derive(Serialize)]
        struct S {
            v: f64,
        }
        let s = to_json(&S { v: std::f64::consts::PI });
        assert_eq!(s, r#"{"v":3.1415926535897931e0}"#);
        let t = to_json(&S { v: std::f64::consts::PI });
        assert_eq!(s, t);
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["v"].as_f64().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn report_pass_is_conjunction() {
        let good = CheckRecord::flag("a", PLUMBING, "", true);
        let bad = CheckRecord::flag("b", PLUMBING, "", false);
        let s1 = SuiteReport::new("s1", vec![good.clone()]);
        assert!(s1.pass);
        let s2 = SuiteReport::new("s2", vec![good, bad]);
        assert!(!s2.pass);
        let rep = VerificationReport::new(0, vec![s1, s2]);
        assert!(!rep.pass);
    }
}
