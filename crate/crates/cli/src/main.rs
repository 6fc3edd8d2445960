//! `listsort-lab`: head-to-head benchmarks of the linked-list sorters.
//!
//! Exit codes: 0 success, 1 verification or I/O failure, 2 usage error.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use listsort_core::SortOrder;
use listsort_lab::bench::{run, Algorithm, BenchSpec, RunError, KEY_BITS};
use listsort_lab::report::{emit, EmitFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
}

impl From<OrderArg> for SortOrder {
    fn from(value: OrderArg) -> Self {
        match value {
            OrderArg::Asc => SortOrder::Ascending,
            OrderArg::Desc => SortOrder::Descending,
        }
    }
}

fn parse_pattern_width(raw: &str) -> Result<u32, String> {
    match raw {
        "4" => Ok(4),
        "8" => Ok(8),
        "16" => Ok(16),
        _ => Err(String::from("pattern width must be 4, 8, or 16")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "listsort-lab",
    version,
    about = "Benchmark linked-list sorters: bit-pattern bucket sort vs comparison baselines"
)]
struct Args {
    /// Algorithms to run, comma separated.
    #[arg(long = "algo", value_enum, value_delimiter = ',', default_values_t = Algorithm::ALL)]
    algo: Vec<Algorithm>,

    /// List sizes, comma separated. Default: powers of ten from 1000 up to
    /// --max-n.
    #[arg(long = "n", value_delimiter = ',')]
    n: Option<Vec<u64>>,

    /// Bits consumed per bucket-split level (pbit only).
    #[arg(long, default_value = "8", value_parser = parse_pattern_width)]
    k: u32,

    /// Sort direction. Descending is pbit-only; the baselines emit
    /// ascending output.
    #[arg(long, value_enum, default_value_t = OrderArg::Asc)]
    order: OrderArg,

    /// Treat keys as signed 32-bit values drawn from the full range.
    #[arg(long)]
    signed: bool,

    /// Base seed; per-run seeds are derived from it, the size, and the
    /// repeat index.
    #[arg(long, env = "LISTSORT_LAB_SEED", default_value_t = 42)]
    seed: u64,

    /// Timed runs per (algorithm, n), plus one mean row.
    #[arg(long, default_value_t = 10)]
    repeats: u32,

    #[arg(long, value_enum, default_value_t = EmitFormat::Csv)]
    format: EmitFormat,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Draw keys from [0, 0x7FFF], the classic RAND_MAX interval.
    #[arg(long = "paper-rand")]
    paper_rand: bool,

    /// Upper end of the default size ladder.
    #[arg(long = "max-n", default_value_t = 1_000_000)]
    max_n: u64,

    /// Check every output against the comparison oracle (on by default).
    #[arg(long, overrides_with = "no_verify")]
    verify: bool,

    /// Skip oracle checks; rows then carry verified=false.
    #[arg(long = "no-verify", overrides_with = "verify")]
    no_verify: bool,
}

impl Args {
    fn sizes(&self) -> Vec<u64> {
        if let Some(sizes) = &self.n {
            return sizes.clone();
        }
        let mut sizes = Vec::new();
        let mut n = 1000u64;
        while n <= self.max_n {
            sizes.push(n);
            match n.checked_mul(10) {
                Some(next) => n = next,
                None => break,
            }
        }
        if sizes.is_empty() {
            sizes.push(self.max_n);
        }
        sizes
    }

    fn spec(&self) -> BenchSpec {
        let signed = self.signed;
        let key_range = if self.paper_rand {
            (0, 0x7FFF)
        } else if signed {
            (i64::from(i32::MIN), i64::from(i32::MAX))
        } else {
            (0, i64::from(u32::MAX))
        };
        debug_assert_eq!(KEY_BITS, 32);
        BenchSpec {
            algorithms: self.algo.clone(),
            sizes: self.sizes(),
            pattern_width: self.k,
            order: self.order.into(),
            signed,
            seed: self.seed,
            repeats: self.repeats,
            key_range,
            verify: !self.no_verify,
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec = args.spec();

    if let Err(err) = spec.validate() {
        eprintln!("error: {err}");
        return ExitCode::from(2);
    }

    let report = match run(&spec) {
        Ok(report) => report,
        Err(err @ RunError::Spec(_)) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(1);
        }
    };

    let emitted = match &args.out {
        Some(path) => File::create(path)
            .map_err(Into::into)
            .and_then(|mut file| emit(&report, args.format, &mut file)),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let result = emit(&report, args.format, &mut lock);
            result.and_then(|()| lock.flush().map_err(Into::into))
        }
    };
    if let Err(err) = emitted {
        eprintln!("error: {err}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
