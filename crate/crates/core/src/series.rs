//! Uniformly sampled detector records and their CSV form.
//!
//! CSV schemas: traces are `time_s,value`, count records are
//! `window_index,counts`. Floats are written in shortest round-trip form, so
//! a written file parses back to bit-identical values.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Uniformly sampled analog record.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub t0: f64,
    pub dt: f64,
    pub samples: Vec<f64>,
}

impl TimeSeries {
    pub fn new(t0: f64, dt: f64, samples: Vec<f64>) -> Self {
        assert!(dt > 0.0, "sample spacing must be positive");
        Self { t0, dt, samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn time_at(&self, index: usize) -> f64 {
        self.t0 + index as f64 * self.dt
    }

    /// Canonical expansion of the time axis; the CSV writer and the fitter
    /// both consume exactly these values.
    pub fn times(&self) -> Vec<f64> {
        (0..self.samples.len()).map(|k| self.time_at(k)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.samples.len() * 24 + 16);
        out.push_str("time_s,value\n");
        for (k, value) in self.samples.iter().enumerate() {
            let _ = writeln!(out, "{},{}", self.time_at(k), value);
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), SeriesError> {
        fs::write(path, self.to_csv()).map_err(|e| SeriesError::Io(path.display().to_string(), e))
    }
}

/// Photon counts per fixed window. Window `k` spans
/// `[k·window_s, (k+1)·window_s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSeries {
    pub window_s: f64,
    pub counts: Vec<u64>,
    /// Nominal detector triggers per window.
    pub triggers_per_window: u64,
}

impl CountSeries {
    pub fn new(window_s: f64, counts: Vec<u64>, triggers_per_window: u64) -> Self {
        assert!(window_s > 0.0, "window must be positive");
        Self { window_s, counts, triggers_per_window }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Center time of window `k`; the fitter's time axis.
    pub fn window_center(&self, index: usize) -> f64 {
        (index as f64 + 0.5) * self.window_s
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.counts.len()).map(|k| self.window_center(k)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.counts.len() * 12 + 24);
        out.push_str("window_index,counts\n");
        for (k, counts) in self.counts.iter().enumerate() {
            let _ = writeln!(out, "{k},{counts}");
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), SeriesError> {
        fs::write(path, self.to_csv()).map_err(|e| SeriesError::Io(path.display().to_string(), e))
    }
}

/// Two-column record parsed from disk; whichever schema the header declares.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedRecord {
    Trace { times: Vec<f64>, values: Vec<f64> },
    Counts { indices: Vec<u64>, counts: Vec<u64> },
}

pub fn parse_csv(text: &str) -> Result<ParsedRecord, SeriesError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(SeriesError::Empty)?;
    match header.trim() {
        "time_s,value" => {
            let mut times = Vec::new();
            let mut values = Vec::new();
            for (lineno, line) in lines {
                if line.trim().is_empty() {
                    continue;
                }
                let (t, v) = split_two(line, lineno)?;
                times.push(parse_f64(t, lineno)?);
                values.push(parse_f64(v, lineno)?);
            }
            if times.is_empty() {
                return Err(SeriesError::Empty);
            }
            Ok(ParsedRecord::Trace { times, values })
        }
        "window_index,counts" => {
            let mut indices = Vec::new();
            let mut counts = Vec::new();
            for (lineno, line) in lines {
                if line.trim().is_empty() {
                    continue;
                }
                let (i, c) = split_two(line, lineno)?;
                indices.push(parse_u64(i, lineno)?);
                counts.push(parse_u64(c, lineno)?);
            }
            if indices.is_empty() {
                return Err(SeriesError::Empty);
            }
            Ok(ParsedRecord::Counts { indices, counts })
        }
        other => Err(SeriesError::Schema {
            line: 1,
            detail: format!("unrecognized header {other:?}"),
        }),
    }
}

pub fn read_csv(path: &Path) -> Result<ParsedRecord, SeriesError> {
    let text =
        fs::read_to_string(path).map_err(|e| SeriesError::Io(path.display().to_string(), e))?;
    parse_csv(&text)
}

fn split_two(line: &str, lineno: usize) -> Result<(&str, &str), SeriesError> {
    line.split_once(',').ok_or(SeriesError::Schema {
        line: lineno + 1,
        detail: "expected two comma-separated columns".into(),
    })
}

fn parse_f64(text: &str, lineno: usize) -> Result<f64, SeriesError> {
    text.trim().parse().map_err(|_| SeriesError::Schema {
        line: lineno + 1,
        detail: format!("not a number: {text:?}"),
    })
}

fn parse_u64(text: &str, lineno: usize) -> Result<u64, SeriesError> {
    text.trim().parse().map_err(|_| SeriesError::Schema {
        line: lineno + 1,
        detail: format!("not a count: {text:?}"),
    })
}

#[derive(Debug, thiserror::Error)]
pub enum SeriesError {
    #[error("csv has no data rows")]
    Empty,
    #[error("csv schema error at line {line}: {detail}")]
    Schema { line: usize, detail: String },
    #[error("io error on {0}: {1}")]
    Io(String, std::io::Error),
}
