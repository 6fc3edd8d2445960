//! Benchmark harness behind the `listsort-lab` binary: seeded input
//! generation, timed runs of every sorter in [`listsort_core`], oracle
//! verification, and CSV/markdown/plotdata reporting.
//!
//! The library half exists so the pieces stay testable: [`bench::run`]
//! turns a [`bench::BenchSpec`] into a [`report::BenchReport`], and
//! [`report::emit`] writes it out. The binary only parses flags and maps
//! errors to exit codes.

pub mod bench;
pub mod report;

pub use bench::{derive_seed, generate, run, Algorithm, BenchSpec, RunError, SpecError};
pub use report::{emit, parse_csv, BenchReport, BenchRow, EmitFormat, Repeat, CSV_HEADER};
