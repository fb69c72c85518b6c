//! CSV tables written by each command, and the scan-table reader.
//!
//! Every table starts with its header row; summary lines follow the data as
//! `#` comments. Floats go through [`fmt_g`].

use std::io::{Read, Write};

use adiasweep_core::analysis::{AlphaOptimum, FidelityRecord};
use adiasweep_core::evolve::{GapPoint, Trajectory};
use adiasweep_core::schedules::GapMinimum;

use crate::format::fmt_g;

pub const GAP_HEADER: [&str; 4] = ["s", "e0", "e1", "gap"];
pub const TRAJECTORY_HEADER: [&str; 4] = ["t", "s_or_wz", "fidelity_to_instantaneous_ground", "norm"];
pub const SCAN_HEADER: [&str; 5] = ["model", "schedule", "T", "alpha", "fidelity"];
pub const OPTIMUM_HEADER: [&str; 3] = ["T", "alpha_best", "fidelity_best"];

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header {found:?}, expected {expected:?}")]
    Header { expected: Vec<String>, found: Vec<String> },
    #[error("line {line}: cannot parse {column} value {value:?}")]
    Field {
        line: u64,
        column: &'static str,
        value: String,
    },
}

/// Outcome of the gap-minimum search reported under a gap table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapSummary {
    Interior(GapMinimum),
    Boundary { s: f64, gap: f64 },
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>, comments: &[String]) -> Result<Vec<u8>, TableError> {
    let mut buf = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    for c in comments {
        writeln!(buf, "# {c}").map_err(csv::Error::from)?;
    }
    Ok(buf)
}

pub fn gap_table(points: &[GapPoint], summary: GapSummary) -> Result<Vec<u8>, TableError> {
    let mut w = writer();
    w.write_record(GAP_HEADER)?;
    for p in points {
        w.write_record([fmt_g(p.s), fmt_g(p.e0), fmt_g(p.e1), fmt_g(p.gap)])?;
    }
    let comment = match summary {
        GapSummary::Interior(m) => format!("s_c={} gap_min={}", fmt_g(m.s_c), fmt_g(m.gap_min)),
        GapSummary::Boundary { s, gap } => format!("s_c=none boundary_minimum_s={} gap_min={}", fmt_g(s), fmt_g(gap)),
    };
    finish(w, &[comment])
}

pub fn trajectory_table(trajectory: &Trajectory) -> Result<Vec<u8>, TableError> {
    let mut w = writer();
    w.write_record(TRAJECTORY_HEADER)?;
    for s in &trajectory.samples {
        w.write_record([fmt_g(s.t), fmt_g(s.sweep_value), fmt_g(s.ground_fidelity), fmt_g(s.norm)])?;
    }
    finish(w, &[])
}

pub fn scan_table(records: &[FidelityRecord]) -> Result<Vec<u8>, TableError> {
    let mut w = writer();
    w.write_record(SCAN_HEADER)?;
    for r in records {
        w.write_record([
            r.model_id.clone(),
            r.schedule_id.clone(),
            fmt_g(r.total_time),
            r.alpha.map(fmt_g).unwrap_or_default(),
            fmt_g(r.fidelity),
        ])?;
    }
    finish(w, &[])
}

pub fn optimum_table(rows: &[(f64, AlphaOptimum)]) -> Result<Vec<u8>, TableError> {
    let mut w = writer();
    w.write_record(OPTIMUM_HEADER)?;
    let mut comments = Vec::new();
    for (t, best) in rows {
        w.write_record([fmt_g(*t), fmt_g(best.alpha), fmt_g(best.fidelity)])?;
        if best.at_grid_boundary {
            comments.push(format!(
                "boundary: best alpha for T={} sits at an end of the alpha grid",
                fmt_g(*t)
            ));
        }
    }
    finish(w, &comments)
}

fn parse_float(value: &str, column: &'static str, line: u64) -> Result<f64, TableError> {
    value.parse().map_err(|_| TableError::Field {
        line,
        column,
        value: value.to_string(),
    })
}

/// Parses a scan table back into records. Comment lines are skipped.
pub fn read_scan_table<R: Read>(input: R) -> Result<Vec<FidelityRecord>, TableError> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != SCAN_HEADER {
        return Err(TableError::Header {
            expected: SCAN_HEADER.iter().map(|s| s.to_string()).collect(),
            found: header,
        });
    }
    let mut out = Vec::new();
    for row in r.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let alpha = match &row[3] {
            "" => None,
            a => Some(parse_float(a, "alpha", line)?),
        };
        out.push(FidelityRecord {
            model_id: row[0].to_string(),
            schedule_id: row[1].to_string(),
            total_time: parse_float(&row[2], "T", line)?,
            alpha,
            fidelity: parse_float(&row[4], "fidelity", line)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_table_layout() {
        let records = vec![
            FidelityRecord {
                model_id: "aqc1".into(),
                schedule_id: "linear".into(),
                total_time: 0.1,
                alpha: None,
                fidelity: 0.75,
            },
            FidelityRecord {
                model_id: "aqc1".into(),
                schedule_id: "exp-like".into(),
                total_time: 0.1,
                alpha: Some(2.0),
                fidelity: 1.0 / 3.0,
            },
        ];
        let text = String::from_utf8(scan_table(&records).unwrap()).unwrap();
        assert_eq!(
            text,
            "model,schedule,T,alpha,fidelity\naqc1,linear,0.1,,0.75\naqc1,exp-like,0.1,2,0.333333333333\n"
        );
    }

    #[test]
    fn optimum_table_flags_boundary() {
        let rows = [
            (0.1, AlphaOptimum { alpha: 2.5, fidelity: 0.9, at_grid_boundary: false }),
            (0.2, AlphaOptimum { alpha: 20.0, fidelity: 0.95, at_grid_boundary: true }),
        ];
        let text = String::from_utf8(optimum_table(&rows).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "T,alpha_best,fidelity_best");
        assert_eq!(lines[1], "0.1,2.5,0.9");
        assert_eq!(lines[3], "# boundary: best alpha for T=0.2 sits at an end of the alpha grid");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn reader_rejects_foreign_header() {
        let err = read_scan_table("s,e0,e1,gap\n0,1,2,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, TableError::Header { .. }));
        let err = read_scan_table("model,schedule,T,alpha,fidelity\nlz,linear-lz,x,,1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, TableError::Field { column: "T", .. }));
    }
}
