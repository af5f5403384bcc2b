//! Batch classification of graph6 lines.

use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classification_report, ClassificationReport};
use crate::graphs::{read_graph6_lines, write_graph6};
use crate::{Error, Result};

/// A [`ClassificationReport`] with the bounds flattened into columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub graph6: String,
    pub n: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub regular: Option<usize>,
    pub diameter: Option<usize>,
    pub ell: usize,
    pub r: usize,
    pub cc_dim: usize,
    pub pattern_polynomial: bool,
    pub distance_polynomial: Option<bool>,
    pub distance_regular: Option<bool>,
    pub walk_regular: bool,
    pub super_regular: Option<bool>,
    pub edge_regular: Option<usize>,
    pub ell_le_r: bool,
    pub r_le_cc_dim: bool,
    pub diameter_bound: Option<bool>,
    pub multiple_eigenvalue: Option<bool>,
    pub odd_order: Option<bool>,
}

impl CensusRow {
    pub fn new(graph6: String, r: ClassificationReport) -> Self {
        CensusRow {
            graph6,
            n: r.n,
            edge_count: r.edge_count,
            connected: r.connected,
            regular: r.regular,
            diameter: r.diameter,
            ell: r.ell,
            r: r.r,
            cc_dim: r.cc_dim,
            pattern_polynomial: r.pattern_polynomial,
            distance_polynomial: r.distance_polynomial,
            distance_regular: r.distance_regular,
            walk_regular: r.walk_regular,
            super_regular: r.super_regular,
            edge_regular: r.edge_regular,
            ell_le_r: r.bounds_ok.ell_le_r,
            r_le_cc_dim: r.bounds_ok.r_le_cc_dim,
            diameter_bound: r.bounds_ok.diameter_bound,
            multiple_eigenvalue: r.bounds_ok.multiple_eigenvalue,
            odd_order: r.bounds_ok.odd_order,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub rows: usize,
    pub skipped: usize,
    pub connected_regular: usize,
    pub distance_polynomial: usize,
    pub pattern_polynomial: usize,
    pub distance_regular: usize,
}

impl CensusSummary {
    fn tally(rows: &[CensusRow], skipped: usize) -> Self {
        let count = |f: fn(&CensusRow) -> bool| rows.iter().filter(|r| f(r)).count();
        CensusSummary {
            rows: rows.len(),
            skipped,
            connected_regular: count(|r| r.connected && r.regular.is_some()),
            distance_polynomial: count(|r| r.distance_polynomial == Some(true)),
            pattern_polynomial: count(|r| r.pattern_polynomial),
            distance_regular: count(|r| r.distance_regular == Some(true)),
        }
    }
}

impl fmt::Display for CensusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows={} skipped={} connected_regular={} distance_polynomial={} pattern_polynomial={} distance_regular={}",
            self.rows,
            self.skipped,
            self.connected_regular,
            self.distance_polynomial,
            self.pattern_polynomial,
            self.distance_regular
        )
    }
}

/// A malformed input line, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineWarning {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub warnings: Vec<LineWarning>,
    pub summary: CensusSummary,
}

/// Classifies every parseable line of `text` on `jobs` threads (0 means
/// the rayon default). Rows keep input order. A classification that
/// contradicts itself fails the whole run.
pub fn run_census(text: &str, jobs: usize) -> Result<Census> {
    let mut graphs = Vec::new();
    let mut warnings = Vec::new();
    for (line, parsed) in read_graph6_lines(text) {
        match parsed {
            Ok(g) => graphs.push(g),
            Err(e) => warnings.push(LineWarning {
                line,
                message: e.to_string(),
            }),
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| Ok(CensusRow::new(write_graph6(g), classification_report(g)?)))
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = CensusSummary::tally(&rows, warnings.len());
    Ok(Census {
        rows,
        warnings,
        summary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

/// CSV with a header row (empty cells for missing values) or one JSON
/// object per line (`null` for missing values).
pub fn write_rows<W: Write>(
    rows: &[CensusRow],
    format: OutputFormat,
    out: W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if rows.is_empty() {
                w.write_record(CSV_HEADER)?;
            }
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()
        }
        OutputFormat::Jsonl => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
    }
}

/// Column names, in order.
pub const CSV_HEADER: [&str; 20] = [
    "graph6",
    "n",
    "edge_count",
    "connected",
    "regular",
    "diameter",
    "ell",
    "r",
    "cc_dim",
    "pattern_polynomial",
    "distance_polynomial",
    "distance_regular",
    "walk_regular",
    "super_regular",
    "edge_regular",
    "ell_le_r",
    "r_le_cc_dim",
    "diameter_bound",
    "multiple_eigenvalue",
    "odd_order",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate::connected_graphs;

    fn corpus(n: usize) -> String {
        connected_graphs(n)
            .iter()
            .map(|g| write_graph6(g) + "\n")
            .collect()
    }

    fn csv_string(rows: &[CensusRow]) -> String {
        let mut buf = Vec::new();
        write_rows(rows, OutputFormat::Csv, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn three_vertex_connected_graphs() {
        let census = run_census(&corpus(3), 2).unwrap();
        assert_eq!(census.rows.len(), 2);
        assert_eq!(census.summary.pattern_polynomial, 1);
        let k3 = census.rows.iter().find(|r| r.edge_count == 3).unwrap();
        assert!(k3.pattern_polynomial);
    }

    #[test]
    fn empty_input() {
        let census = run_census("", 1).unwrap();
        assert_eq!(census.summary, CensusSummary::default());
        assert_eq!(csv_string(&census.rows).lines().count(), 1);
    }

    #[test]
    fn malformed_lines_are_counted() {
        let census = run_census("Bw\nzz\n\nDhc\n", 1).unwrap();
        assert_eq!(census.rows.len(), 2);
        assert_eq!(census.summary.skipped, 1);
        assert_eq!(census.warnings[0].line, 2);
    }

    #[test]
    fn class_counts_are_monotone_n6() {
        let s = run_census(&corpus(6), 0).unwrap().summary;
        assert_eq!(s.rows, 112);
        assert!(s.distance_regular <= s.pattern_polynomial);
        assert!(s.pattern_polynomial <= s.distance_polynomial);
        assert!(s.distance_polynomial <= s.connected_regular);
    }

    #[test]
    fn csv_header_and_missing_values() {
        let census = run_census("Bw\nCK\n", 1).unwrap();
        let text = csv_string(&census.rows);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        // CK is two disjoint edges
        let disconnected = lines.nth(1).unwrap();
        assert!(
            disconnected.starts_with("CK,4,2,false,1,,"),
            "{disconnected}"
        );

        let mut buf = Vec::new();
        write_rows(&census.rows, OutputFormat::Jsonl, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().nth(1).unwrap().contains("\"diameter\":null"));
    }

    #[test]
    fn output_does_not_depend_on_thread_count() {
        let text = corpus(5);
        let one = csv_string(&run_census(&text, 1).unwrap().rows);
        let many = csv_string(&run_census(&text, 4).unwrap().rows);
        assert_eq!(one, many);
    }
}
