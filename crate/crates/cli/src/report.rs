use std::fmt::Display;

use orchard_core::counting::CountingError;
use orchard_core::curve::CurveError;
use orchard_core::field::FieldError;
use orchard_core::orchard::OrchardError;
use orchard_core::rational::RationalError;
use orchard_core::StructureError;
use serde_json::Value;

use crate::Format;

/// A command that could not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Cap(m) => m,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    pub fn usage(msg: impl Display) -> Self {
        Failure::Usage(msg.to_string())
    }
}

fn field_is_cap(e: &FieldError) -> bool {
    matches!(e, FieldError::TooLarge { .. })
}

fn curve_is_cap(e: &CurveError) -> bool {
    match e {
        CurveError::TooLarge { .. } => true,
        CurveError::Field(f) => field_is_cap(f),
        _ => false,
    }
}

fn orchard_is_cap(e: &OrchardError) -> bool {
    match e {
        OrchardError::TooLarge { .. } => true,
        OrchardError::Field(f) => field_is_cap(f),
        OrchardError::Curve(c) => curve_is_cap(c),
        OrchardError::Counting(CountingError::TooLarge(_)) => true,
        _ => false,
    }
}

fn classify(cap: bool, e: impl Display) -> Failure {
    if cap {
        Failure::Cap(e.to_string())
    } else {
        Failure::Usage(e.to_string())
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        classify(field_is_cap(&e), e)
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        classify(curve_is_cap(&e), e)
    }
}

impl From<OrchardError> for Failure {
    fn from(e: OrchardError) -> Self {
        classify(orchard_is_cap(&e), e)
    }
}

impl From<CountingError> for Failure {
    fn from(e: CountingError) -> Self {
        classify(matches!(e, CountingError::TooLarge(_)), e)
    }
}

impl From<StructureError> for Failure {
    fn from(e: StructureError) -> Self {
        Failure::usage(e)
    }
}

impl From<RationalError> for Failure {
    fn from(e: RationalError) -> Self {
        match e {
            RationalError::Orchard(o) => o.into(),
            RationalError::TooManyPoints(_) => Failure::Cap(e.to_string()),
            other => Failure::usage(other),
        }
    }
}

/// Output of one command in all three formats, plus its verdict.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub notes: Vec<String>,
    pub json: Value,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub mismatch: bool,
}

impl Report {
    pub fn exit_code(&self) -> u8 {
        u8::from(self.mismatch)
    }

    pub fn render(&self, format: Format, quiet: bool) -> String {
        match format {
            Format::Plain => {
                let mut out = String::new();
                for l in &self.lines {
                    out.push_str(l);
                    out.push('\n');
                }
                if !quiet {
                    for n in &self.notes {
                        out.push_str("note: ");
                        out.push_str(n);
                        out.push('\n');
                    }
                }
                out
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).expect("in-memory write");
                for row in &self.csv_rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
            }
        }
    }
}
