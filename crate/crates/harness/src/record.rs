//! Per-run benchmark rows and their CSV form.

use std::fmt;

use maxcut_core::{LinearSchedule, RunResult};

use crate::error::HarnessError;

pub const CSV_HEADER: [&str; 9] =
    ["instance", "seed", "heat_max", "heat_step", "iterations", "best_objective", "best_known", "gap", "wall_time_s"];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub instance: String,
    pub seed: u64,
    pub heat_max: f64,
    pub heat_step: f64,
    pub iterations: u64,
    pub best_objective: i64,
    pub best_known: Option<i64>,
    /// `best_known - best_objective`; negative when the run beat the reference value.
    pub gap: Option<i64>,
    pub wall_time_s: f64,
}

impl BenchmarkRecord {
    pub fn new(
        instance: impl Into<String>,
        seed: u64,
        schedule: &LinearSchedule,
        run: &RunResult,
        best_known: Option<i64>,
    ) -> Self {
        Self {
            instance: instance.into(),
            seed,
            heat_max: schedule.heat_max(),
            heat_step: schedule.heat_step(),
            iterations: run.iterations_executed,
            best_objective: run.best_objective,
            best_known,
            gap: best_known.map(|b| b - run.best_objective),
            wall_time_s: run.wall_time,
        }
    }

    fn fields(&self) -> [String; 9] {
        let opt = |x: Option<i64>| x.map(|v| v.to_string()).unwrap_or_default();
        [
            self.instance.clone(),
            self.seed.to_string(),
            self.heat_max.to_string(),
            self.heat_step.to_string(),
            self.iterations.to_string(),
            self.best_objective.to_string(),
            opt(self.best_known),
            opt(self.gap),
            self.wall_time_s.to_string(),
        ]
    }
}

/// Header plus one row per record, in input order.
pub fn emit_csv(records: &[BenchmarkRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in records {
        w.write_record(r.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields")
}

pub fn parse_csv(text: &str) -> Result<Vec<BenchmarkRecord>, HarnessError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| HarnessError::Csv(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(HarnessError::Csv(format!("expected header {}", CSV_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| HarnessError::Csv(e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |i: usize| HarnessError::Csv(format!("line {line}: bad {} {:?}", CSV_HEADER[i], &row[i]));
        let opt = |i: usize| -> Result<Option<i64>, HarnessError> {
            if row[i].is_empty() {
                Ok(None)
            } else {
                row[i].parse().map(Some).map_err(|_| bad(i))
            }
        };
        out.push(BenchmarkRecord {
            instance: row[0].to_owned(),
            seed: row[1].parse().map_err(|_| bad(1))?,
            heat_max: row[2].parse().map_err(|_| bad(2))?,
            heat_step: row[3].parse().map_err(|_| bad(3))?,
            iterations: row[4].parse().map_err(|_| bad(4))?,
            best_objective: row[5].parse().map_err(|_| bad(5))?,
            best_known: opt(6)?,
            gap: opt(7)?,
            wall_time_s: row[8].parse().map_err(|_| bad(8))?,
        });
    }
    Ok(out)
}

/// How the runs compare with the reference values.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuiteSummary {
    pub instances: usize,
    /// Reached the reference value exactly.
    pub matched: usize,
    /// Beat the reference value.
    pub improved: usize,
    pub below: usize,
    /// No reference value for the instance.
    pub unknown: usize,
}

impl SuiteSummary {
    pub fn from_records(records: &[BenchmarkRecord]) -> Self {
        let mut s = Self { instances: records.len(), ..Self::default() };
        for r in records {
            match r.gap {
                None => s.unknown += 1,
                Some(0) => s.matched += 1,
                Some(g) if g < 0 => s.improved += 1,
                Some(_) => s.below += 1,
            }
        }
        s
    }

    pub fn at_or_above(&self) -> usize {
        self.matched + self.improved
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} instances: {} matched or beat best known ({} matched, {} improved), {} below, {} without reference",
            self.instances,
            self.at_or_above(),
            self.matched,
            self.improved,
            self.below,
            self.unknown
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(instance: &str, best: i64, known: Option<i64>) -> BenchmarkRecord {
        BenchmarkRecord {
            instance: instance.into(),
            seed: 3,
            heat_max: 10_000.0,
            heat_step: 2e-6,
            iterations: 5_000_000_000,
            best_objective: best,
            best_known: known,
            gap: known.map(|k| k - best),
            wall_time_s: 1.25,
        }
    }

    #[test]
    fn empty_is_header_only() {
        assert_eq!(emit_csv(&[]), "instance,seed,heat_max,heat_step,iterations,best_objective,best_known,gap,wall_time_s\n");
    }

    #[test]
    fn one_record_two_lines() {
        let text = emit_csv(&[record("g11", 562, Some(564))]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1], "g11,3,10000,0.000002,5000000000,562,564,2,1.25");
    }

    #[test]
    fn quotes_awkward_names() {
        let text = emit_csv(&[record("a,\"b\"", 1, None)]);
        assert_eq!(text.lines().nth(1).unwrap(), "\"a,\"\"b\"\"\",3,10000,0.000002,5000000000,1,,,1.25");
        assert_eq!(parse_csv(&text).unwrap()[0].instance, "a,\"b\"");
    }

    #[test]
    fn summary_counts() {
        let rs = [record("a", 5, Some(5)), record("b", 6, Some(5)), record("c", 4, Some(5)), record("d", 1, None)];
        let s = SuiteSummary::from_records(&rs);
        assert_eq!(s, SuiteSummary { instances: 4, matched: 1, improved: 1, below: 1, unknown: 1 });
        assert_eq!(s.at_or_above(), 2);
        assert_eq!(SuiteSummary::from_records(&parse_csv(&emit_csv(&rs)).unwrap()), s);
    }

    #[test]
    fn rejects_wrong_header() {
        assert!(parse_csv("a,b\n1,2\n").is_err());
    }

    fn arb_record() -> impl Strategy<Value = BenchmarkRecord> {
        (
            "[ -~]{0,12}",
            any::<u64>(),
            (1e-3f64..1e6, 1e-9f64..1.0),
            any::<u64>(),
            any::<i64>(),
            proptest::option::of(-1_000_000i64..1_000_000),
            0f64..1e5,
        )
            .prop_map(|(instance, seed, (heat_max, heat_step), iterations, best, known, wall)| BenchmarkRecord {
                instance,
                seed,
                heat_max,
                heat_step,
                iterations,
                best_objective: best,
                best_known: known,
                gap: known.map(|k| k.wrapping_sub(best)),
                wall_time_s: wall,
            })
    }

    proptest! {
        #[test]
        fn csv_roundtrip(records in prop::collection::vec(arb_record(), 0..8)) {
            prop_assert_eq!(parse_csv(&emit_csv(&records)).unwrap(), records);
        }
    }
}
