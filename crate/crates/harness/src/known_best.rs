//! Reference objective values for the published benchmark instances.
//!
//! The bundled table holds, for every instance of the three benchmark sets,
//! the best cut each of four heuristics reported: Scatter Search (SS),
//! CirCut, VNSPR and simulated annealing (SA). `best_known` is the largest
//! of these; it is a reference point, not a proven optimum.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::HarnessError;

const HEADER: [&str; 5] = ["instance", "ss", "circut", "vnspr", "sa"];

pub const BUNDLED_CSV: &str = include_str!("../data/known_best.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    ScatterSearch,
    CirCut,
    Vnspr,
    Annealing,
}

impl Heuristic {
    pub const ALL: [Heuristic; 4] = [Self::ScatterSearch, Self::CirCut, Self::Vnspr, Self::Annealing];

    pub fn label(self) -> &'static str {
        match self {
            Self::ScatterSearch => "SS",
            Self::CirCut => "CirCut",
            Self::Vnspr => "VNSPR",
            Self::Annealing => "SA",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownBest {
    /// Indexed in [`Heuristic::ALL`] order.
    pub values: [Option<i64>; 4],
    pub best_known: i64,
}

impl KnownBest {
    pub fn value(&self, h: Heuristic) -> Option<i64> {
        self.values[h as usize]
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnownBestTable {
    rows: Vec<(String, KnownBest)>,
    index: HashMap<String, usize>,
}

/// How often a heuristic found the best value among those listed, and how
/// often it was strictly better than every other.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub best: usize,
    pub only: usize,
}

fn key(name: &str) -> String {
    name.trim().to_ascii_lowercase()
}

impl KnownBestTable {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_CSV).expect("bundled known-best table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::parse(&text)
    }

    /// Parses `instance,ss,circut,vnspr,sa` rows; blank cells are absent values
    /// and lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let malformed = |line: u64, message: String| HarnessError::KnownBest { line, message };

        let header = reader.headers().map_err(|e| malformed(1, e.to_string()))?.clone();
        if header.iter().map(str::to_ascii_lowercase).ne(HEADER) {
            return Err(malformed(1, format!("expected header {}", HEADER.join(","))));
        }

        let mut table = Self::default();
        for row in reader.records() {
            let row = row.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                malformed(line, e.to_string())
            })?;
            let line = row.position().map_or(0, |p| p.line());
            let name = row.get(0).unwrap_or_default();
            if name.is_empty() {
                return Err(malformed(line, "empty instance name".into()));
            }
            let mut values = [None; 4];
            for (slot, cell) in values.iter_mut().zip(row.iter().skip(1)) {
                if !cell.is_empty() {
                    *slot = Some(cell.parse().map_err(|_| malformed(line, format!("bad value {cell:?}")))?);
                }
            }
            let best_known = values
                .iter()
                .flatten()
                .copied()
                .max()
                .ok_or_else(|| malformed(line, format!("{name}: no values")))?;
            if table.index.insert(key(name), table.rows.len()).is_some() {
                return Err(malformed(line, format!("duplicate instance {name}")));
            }
            table.rows.push((name.to_owned(), KnownBest { values, best_known }));
        }
        Ok(table)
    }

    /// Case-insensitive lookup (`G11` and `g11` are the same instance).
    pub fn get(&self, instance: &str) -> Option<&KnownBest> {
        self.index.get(&key(instance)).map(|&i| &self.rows[i].1)
    }

    pub fn best_known(&self, instance: &str) -> Option<i64> {
        self.get(instance).map(|k| k.best_known)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &KnownBest)> {
        self.rows.iter().map(|(n, k)| (n.as_str(), k))
    }

    /// Per-heuristic best/only counts over the rows whose names satisfy `filter`.
    pub fn tally(&self, mut filter: impl FnMut(&str) -> bool) -> [Tally; 4] {
        let mut out = [Tally::default(); 4];
        for (_, kb) in self.iter().filter(|(n, _)| filter(n)) {
            let winners: Vec<usize> = (0..4).filter(|&i| kb.values[i] == Some(kb.best_known)).collect();
            for &w in &winners {
                out[w].best += 1;
            }
            if let [only] = winners[..] {
                out[only].only += 1;
            }
        }
        out
    }
}
