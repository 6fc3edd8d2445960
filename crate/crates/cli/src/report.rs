//! Benchmark results and their three output shapes: machine-readable CSV,
//! a human-readable markdown table (one row per algorithm, one column per
//! list size), and gnuplot-ready `n mean_ms` blocks.

use std::fmt;
use std::io::Write;

use crate::bench::Algorithm;

/// The exact CSV column set, in order. Parsers may rely on it verbatim.
pub const CSV_HEADER: &str =
    "algorithm,n,k,seed,repeat,elapsed_ms,relinks,merge_visits,comparisons,depth,verified";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Repeat {
    /// 1-based index of a single timed run.
    Run(u32),
    /// Arithmetic mean over the group's runs.
    Mean,
}

impl fmt::Display for Repeat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repeat::Run(i) => write!(f, "{i}"),
            Repeat::Mean => f.write_str("mean"),
        }
    }
}

impl std::str::FromStr for Repeat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "mean" {
            return Ok(Repeat::Mean);
        }
        s.parse::<u32>()
            .map(Repeat::Run)
            .map_err(|_| format!("bad repeat value `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub n: u64,
    pub k: u32,
    pub seed: u64,
    pub repeat: Repeat,
    pub elapsed_ms: f64,
    pub relinks: u64,
    pub merge_visits: u64,
    pub comparisons: u64,
    pub depth: u64,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EmitFormat {
    Csv,
    Markdown,
    Plotdata,
}

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("nothing to emit: the report has no rows")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn emit(
    report: &BenchReport,
    format: EmitFormat,
    out: &mut dyn Write,
) -> Result<(), EmitError> {
    if report.rows.is_empty() {
        return Err(EmitError::Empty);
    }
    match format {
        EmitFormat::Csv => emit_csv(report, out),
        EmitFormat::Markdown => emit_markdown(report, out),
        EmitFormat::Plotdata => emit_plotdata(report, out),
    }
}

fn emit_csv(report: &BenchReport, out: &mut dyn Write) -> Result<(), EmitError> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{},{},{},{},{}",
            row.algorithm,
            row.n,
            row.k,
            row.seed,
            row.repeat,
            row.elapsed_ms,
            row.relinks,
            row.merge_visits,
            row.comparisons,
            row.depth,
            row.verified
        )?;
    }
    Ok(())
}

/// Mean rows only, first-appearance algorithm order down the side, sizes
/// ascending across the top, cells in milliseconds.
fn emit_markdown(report: &BenchReport, out: &mut dyn Write) -> Result<(), EmitError> {
    let (algorithms, sizes) = mean_axes(report);
    let mut header = String::from("| # | algorithm |");
    let mut rule = String::from("|--:|-----------|");
    for n in &sizes {
        header.push_str(&format!(" n={n} |"));
        rule.push_str("--:|");
    }
    writeln!(out, "{header}")?;
    writeln!(out, "{rule}")?;
    for (index, algorithm) in algorithms.iter().enumerate() {
        write!(out, "| {} | {} |", index + 1, algorithm)?;
        for &n in &sizes {
            match mean_elapsed(report, *algorithm, n) {
                Some(ms) => write!(out, " {ms:.3} |")?,
                None => write!(out, " - |")?,
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// One block per algorithm — a `# name` comment then `n mean_ms` lines —
/// with a blank line between blocks, ready for gnuplot's `index`.
fn emit_plotdata(report: &BenchReport, out: &mut dyn Write) -> Result<(), EmitError> {
    let (algorithms, sizes) = mean_axes(report);
    for (index, algorithm) in algorithms.iter().enumerate() {
        if index > 0 {
            writeln!(out)?;
        }
        writeln!(out, "# {algorithm}")?;
        for &n in &sizes {
            if let Some(ms) = mean_elapsed(report, *algorithm, n) {
                writeln!(out, "{n} {ms:.6}")?;
            }
        }
    }
    Ok(())
}

fn mean_axes(report: &BenchReport) -> (Vec<Algorithm>, Vec<u64>) {
    let mut algorithms = Vec::new();
    let mut sizes = Vec::new();
    for row in &report.rows {
        if !algorithms.contains(&row.algorithm) {
            algorithms.push(row.algorithm);
        }
        if !sizes.contains(&row.n) {
            sizes.push(row.n);
        }
    }
    sizes.sort_unstable();
    (algorithms, sizes)
}

fn mean_elapsed(report: &BenchReport, algorithm: Algorithm, n: u64) -> Option<f64> {
    report
        .rows
        .iter()
        .find(|r| r.repeat == Repeat::Mean && r.algorithm == algorithm && r.n == n)
        .map(|r| r.elapsed_ms)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("missing or wrong CSV header")]
    Header,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Reads back what [`emit`] wrote in CSV form. Together they guarantee the
/// round trip: every non-timing field is reproduced exactly.
pub fn parse_csv(text: &str) -> Result<BenchReport, ParseError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        _ => return Err(ParseError::Header),
    }
    let mut rows = Vec::new();
    for (index, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(ParseError::Malformed {
                line: index + 1,
                message: format!("expected 11 fields, found {}", fields.len()),
            });
        }
        let field = |column: usize, what: &str| -> Result<&str, ParseError> {
            fields.get(column).copied().ok_or(ParseError::Malformed {
                line: index + 1,
                message: what.to_string(),
            })
        };
        fn parsed<T: std::str::FromStr>(
            raw: &str,
            line: usize,
            what: &str,
        ) -> Result<T, ParseError> {
            raw.parse().map_err(|_| ParseError::Malformed {
                line,
                message: format!("bad {what} `{raw}`"),
            })
        }
        let line_no = index + 1;
        rows.push(BenchRow {
            algorithm: parsed(field(0, "algorithm")?, line_no, "algorithm")?,
            n: parsed(field(1, "n")?, line_no, "n")?,
            k: parsed(field(2, "k")?, line_no, "k")?,
            seed: parsed(field(3, "seed")?, line_no, "seed")?,
            repeat: parsed(field(4, "repeat")?, line_no, "repeat")?,
            elapsed_ms: parsed(field(5, "elapsed_ms")?, line_no, "elapsed_ms")?,
            relinks: parsed(field(6, "relinks")?, line_no, "relinks")?,
            merge_visits: parsed(field(7, "merge_visits")?, line_no, "merge_visits")?,
            comparisons: parsed(field(8, "comparisons")?, line_no, "comparisons")?,
            depth: parsed(field(9, "depth")?, line_no, "depth")?,
            verified: parsed(field(10, "verified")?, line_no, "verified")?,
        });
    }
    Ok(BenchReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> BenchReport {
        let row = |algorithm, n, repeat, elapsed_ms| BenchRow {
            algorithm,
            n,
            k: 4,
            seed: 42,
            repeat,
            elapsed_ms,
            relinks: 80,
            merge_visits: 10,
            comparisons: 0,
            depth: 8,
            verified: true,
        };
        BenchReport {
            rows: vec![
                row(Algorithm::Pbit, 10, Repeat::Run(1), 0.5),
                row(Algorithm::Pbit, 10, Repeat::Mean, 0.5),
                row(Algorithm::Mergesort, 10, Repeat::Run(1), 0.75),
                row(Algorithm::Mergesort, 10, Repeat::Mean, 0.75),
            ],
        }
    }

    fn render(report: &BenchReport, format: EmitFormat) -> String {
        let mut buffer = Vec::new();
        emit(report, format, &mut buffer).unwrap();
        String::from_utf8(buffer).unwrap()
    }

    #[test]
    fn csv_has_the_pinned_header_and_one_line_per_row() {
        let text = render(&sample_report(), EmitFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "pbit,10,4,42,1,0.500000,80,10,0,8,true");
        assert_eq!(lines[2], "pbit,10,4,42,mean,0.500000,80,10,0,8,true");
    }

    #[test]
    fn csv_round_trips_every_field() {
        let report = sample_report();
        let parsed = parse_csv(&render(&report, EmitFormat::Csv)).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn parse_rejects_wrong_headers_and_short_lines() {
        assert_eq!(parse_csv("nope\n"), Err(ParseError::Header));
        let text = format!("{CSV_HEADER}\npbit,10,4\n");
        assert!(matches!(
            parse_csv(&text),
            Err(ParseError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn markdown_is_one_numbered_row_per_algorithm() {
        let text = render(&sample_report(), EmitFormat::Markdown);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "| # | algorithm | n=10 |");
        assert_eq!(lines[2], "| 1 | pbit | 0.500 |");
        assert_eq!(lines[3], "| 2 | mergesort | 0.750 |");
    }

    #[test]
    fn plotdata_blocks_are_blank_line_separated() {
        let text = render(&sample_report(), EmitFormat::Plotdata);
        assert_eq!(text, "# pbit\n10 0.500000\n\n# mergesort\n10 0.750000\n");
    }

    #[test]
    fn empty_reports_refuse_to_emit() {
        let mut buffer = Vec::new();
        for format in [EmitFormat::Csv, EmitFormat::Markdown, EmitFormat::Plotdata] {
            assert!(matches!(
                emit(&BenchReport::default(), format, &mut buffer),
                Err(EmitError::Empty)
            ));
        }
    }
}
