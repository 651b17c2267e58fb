//! Per-generation run traces and their CSV form.

use std::path::Path;

use crate::error::{Error, Result};
use crate::fitness::FitnessReport;
use crate::fuzzy::Genome;

pub const TRACE_CSV_HEADER: &str = "generation,best_so_far_F,gen_best_F,elapsed_s,genome_size";

/// One generation's worth of bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRecord {
    pub generation: u32,
    /// Best fitness seen anywhere in the run so far; never decreases.
    pub best_so_far: f64,
    /// Best fitness produced in this generation alone.
    pub gen_best: f64,
    /// Wall-clock seconds since the run started. Recorded as 0 in
    /// generation-capped runs so traces are byte-reproducible.
    pub elapsed_s: f64,
    /// Size of the best-so-far genome.
    pub genome_size: usize,
}

/// The full history of one optimization run plus its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub records: Vec<TraceRecord>,
    pub final_genome: Genome,
    pub final_report: FitnessReport,
}

impl RunTrace {
    /// Number of post-initialization generations.
    pub fn generations(&self) -> u32 {
        (self.records.len().saturating_sub(1)) as u32
    }

    pub fn initial_fitness(&self) -> f64 {
        self.records.first().map_or(f64::NEG_INFINITY, |r| r.best_so_far)
    }

    pub fn final_fitness(&self) -> f64 {
        self.records.last().map_or(f64::NEG_INFINITY, |r| r.best_so_far)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRACE_CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.generation, r.best_so_far, r.gen_best, r.elapsed_s, r.genome_size
            ));
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path.as_ref(), self.to_csv()).map_err(|e| Error::Io {
            path: path.as_ref().to_path_buf(),
            source: e,
        })
    }
}

/// Parses the record rows of a trace CSV (the inverse of
/// [`RunTrace::to_csv`] up to the final genome/report, which the CSV does
/// not carry).
pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == TRACE_CSV_HEADER => {}
        _ => {
            return Err(Error::TraceCsv {
                line: 1,
                detail: format!("expected header '{TRACE_CSV_HEADER}'"),
            })
        }
    }

    let mut records = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::TraceCsv {
                line: idx + 1,
                detail: format!("expected 5 fields, got {}", fields.len()),
            });
        }
        let err = |detail: String| Error::TraceCsv {
            line: idx + 1,
            detail,
        };
        records.push(TraceRecord {
            generation: fields[0].parse().map_err(|e| err(format!("generation: {e}")))?,
            best_so_far: fields[1].parse().map_err(|e| err(format!("best_so_far_F: {e}")))?,
            gen_best: fields[2].parse().map_err(|e| err(format!("gen_best_F: {e}")))?,
            elapsed_s: fields[3].parse().map_err(|e| err(format!("elapsed_s: {e}")))?,
            genome_size: fields[4].parse().map_err(|e| err(format!("genome_size: {e}")))?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FamilySet;

    fn sample_trace() -> RunTrace {
        let genome = Genome::defaults(FamilySet::TrapezoidTriangle);
        RunTrace {
            records: vec![
                TraceRecord {
                    generation: 0,
                    best_so_far: f64::NEG_INFINITY,
                    gen_best: f64::NEG_INFINITY,
                    elapsed_s: 0.0,
                    genome_size: 3,
                },
                TraceRecord {
                    generation: 1,
                    best_so_far: 0.125,
                    gen_best: 0.125,
                    elapsed_s: 0.0,
                    genome_size: 3,
                },
            ],
            final_report: FitnessReport {
                f: 0.125,
                e: 100.0,
                ne: 4,
                h: 1.5,
                width: 4,
                height: 4,
                degenerate: false,
            },
            final_genome: genome,
        }
    }

    #[test]
    fn csv_round_trip_including_sentinel() {
        let trace = sample_trace();
        let csv = trace.to_csv();
        assert!(csv.starts_with(TRACE_CSV_HEADER));
        assert!(csv.contains("-inf"));
        let parsed = parse_trace_csv(&csv).unwrap();
        assert_eq!(parsed, trace.records);
    }

    #[test]
    fn bad_header_rejected() {
        assert!(parse_trace_csv("nope\n1,2,3,4,5\n").is_err());
        assert!(parse_trace_csv(&format!("{TRACE_CSV_HEADER}\n1,2,3\n")).is_err());
    }
}
