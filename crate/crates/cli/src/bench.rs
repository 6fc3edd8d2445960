//! Benchmark execution: seeded input generation, timed head-to-head runs,
//! oracle verification, and counter capture.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use listsort_core::baselines::{mergesort, psort, psort2, quickersort};
use listsort_core::pbit;
use listsort_core::{Counters, KeyDescriptor, LinkedList, NodeArena, PbitConfig, SortOrder};

use crate::report::{BenchReport, BenchRow, Repeat};

/// Key width every benchmark run uses; matches the comparison tables the
/// harness reproduces.
pub const KEY_BITS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Algorithm {
    Pbit,
    Quickersort,
    Mergesort,
    Psort,
    Psort2,
    /// Copies the keys into a contiguous array, sorts with the standard
    /// library, and copies back — not a list sort, included for scale.
    #[value(name = "array_baseline")]
    ArrayBaseline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Pbit,
        Algorithm::Quickersort,
        Algorithm::Mergesort,
        Algorithm::Psort,
        Algorithm::Psort2,
        Algorithm::ArrayBaseline,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pbit => "pbit",
            Algorithm::Quickersort => "quickersort",
            Algorithm::Mergesort => "mergesort",
            Algorithm::Psort => "psort",
            Algorithm::Psort2 => "psort2",
            Algorithm::ArrayBaseline => "array_baseline",
        }
    }

    /// Whether equal keys are guaranteed to keep their input order.
    fn stable(self) -> bool {
        matches!(self, Algorithm::Pbit | Algorithm::Mergesort)
    }

    /// Only the bucket sorter takes a direction; everything else emits
    /// ascending output.
    fn directional(self) -> bool {
        matches!(self, Algorithm::Pbit)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Inclusive interval of key values, in decoded (numeric) space.
pub type KeyRange = (i64, i64);

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub algorithms: Vec<Algorithm>,
    pub sizes: Vec<u64>,
    pub pattern_width: u32,
    pub order: SortOrder,
    pub signed: bool,
    pub seed: u64,
    pub repeats: u32,
    pub key_range: KeyRange,
    pub verify: bool,
}

impl BenchSpec {
    pub fn key_descriptor(&self) -> Result<KeyDescriptor, listsort_core::Error> {
        KeyDescriptor::new(KEY_BITS, self.signed)
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.algorithms.is_empty() {
            return Err(SpecError::NoAlgorithms);
        }
        if self.sizes.is_empty() {
            return Err(SpecError::NoSizes);
        }
        if self.repeats == 0 {
            return Err(SpecError::NoRepeats);
        }
        let kd = self.key_descriptor()?;
        let cfg = PbitConfig::new(self.pattern_width, self.order)?;
        cfg.validate_for(&kd)?;
        let (lo, hi) = self.key_range;
        let (min, max) = kd.key_bounds();
        if lo > hi || lo < min || hi > max {
            return Err(SpecError::KeyRange { lo, hi, min, max });
        }
        if self.order == SortOrder::Descending {
            if let Some(alg) = self.algorithms.iter().find(|a| !a.directional()) {
                return Err(SpecError::DescendingBaseline(*alg));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("no algorithms selected")]
    NoAlgorithms,
    #[error("no list sizes given")]
    NoSizes,
    #[error("repeats must be at least 1")]
    NoRepeats,
    #[error("key range [{lo}, {hi}] is empty or exceeds [{min}, {max}]")]
    KeyRange { lo: i64, hi: i64, min: i64, max: i64 },
    #[error("{0} only sorts ascending; drop `--order desc` or bench pbit alone")]
    DescendingBaseline(Algorithm),
    #[error(transparent)]
    Config(#[from] listsort_core::Error),
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Build(#[from] listsort_core::Error),
    #[error("verification failed: algorithm={algorithm} n={n} seed={seed}")]
    Verification {
        algorithm: Algorithm,
        n: u64,
        seed: u64,
    },
}

/// Splitmix64 finalizer; the per-run seed derivation below is this applied
/// over the base seed, list size, and repeat index, so every (n, repeat)
/// pair draws an independent stream while all algorithms share it.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(base: u64, n: u64, repeat: u32) -> u64 {
    mix(mix(base ^ n) ^ u64::from(repeat))
}

/// Builds a deterministic list of `n` nodes with payload = input index.
/// The generator is ChaCha8 seeded directly with `seed`; values are drawn
/// uniformly from `key_range` and encoded through `kd`.
pub fn generate(
    arena: &mut NodeArena,
    n: u64,
    seed: u64,
    key_range: KeyRange,
    kd: &KeyDescriptor,
) -> Result<LinkedList, listsort_core::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keys = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let value = rng.random_range(key_range.0..=key_range.1);
        keys.push(kd.encode(value)?);
    }
    arena.from_sequence(&keys)
}

struct Timed {
    elapsed_ms: f64,
    counters: Counters,
    output: LinkedList,
}

fn run_one(
    arena: &mut NodeArena,
    list: LinkedList,
    algorithm: Algorithm,
    kd: &KeyDescriptor,
    cfg: &PbitConfig,
) -> Result<Timed, listsort_core::Error> {
    let mut counters = Counters::new();
    let start = Instant::now();
    let output = match algorithm {
        Algorithm::Pbit => pbit::sort(arena, list, kd, cfg, &mut counters)?,
        Algorithm::Quickersort => quickersort(arena, list, kd, &mut counters),
        Algorithm::Mergesort => mergesort(arena, list, kd, &mut counters),
        Algorithm::Psort => psort(arena, list, LinkedList::empty(), kd, &mut counters),
        Algorithm::Psort2 => psort2(arena, list, LinkedList::empty(), kd, &mut counters),
        Algorithm::ArrayBaseline => array_baseline(arena, list, kd),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Timed {
        elapsed_ms,
        counters,
        output,
    })
}

/// The non-list contender: keys out to a `Vec`, standard unstable sort,
/// keys back over the same chain. Payloads stay put, so only the key
/// sequence is meaningful afterwards.
fn array_baseline(arena: &mut NodeArena, list: LinkedList, kd: &KeyDescriptor) -> LinkedList {
    let mut keys: Vec<u64> = arena.iter(&list).map(|node| arena.key(node)).collect();
    keys.sort_unstable_by(|a, b| kd.compare(*a, *b));
    let nodes: Vec<_> = arena.iter(&list).collect();
    for (node, key) in nodes.into_iter().zip(keys) {
        arena.set_key(node, key);
    }
    list
}

/// Runs the whole spec: per (algorithm, size), `repeats` timed runs on
/// freshly generated inputs followed by one mean row. Identical inputs are
/// replayed for every algorithm. A failed verification aborts immediately.
pub fn run(spec: &BenchSpec) -> Result<BenchReport, RunError> {
    spec.validate()?;
    let kd = spec.key_descriptor().map_err(SpecError::Config)?;
    let cfg = PbitConfig::new(spec.pattern_width, spec.order).map_err(SpecError::Config)?;

    let mut rows = Vec::new();
    for &algorithm in &spec.algorithms {
        for &n in &spec.sizes {
            let mut group: Vec<BenchRow> = Vec::with_capacity(spec.repeats as usize);
            for repeat in 1..=spec.repeats {
                let run_seed = derive_seed(spec.seed, n, repeat);
                let mut arena = NodeArena::with_capacity(n as usize);
                let list = generate(&mut arena, n, run_seed, spec.key_range, &kd)?;
                let input_pairs = arena.to_pairs(&list);
                let timed = run_one(&mut arena, list, algorithm, &kd, &cfg)?;
                let verified = spec.verify
                    && verify_output(&arena, &timed.output, &input_pairs, algorithm, &kd, &cfg);
                if spec.verify && !verified {
                    return Err(RunError::Verification {
                        algorithm,
                        n,
                        seed: run_seed,
                    });
                }
                group.push(BenchRow {
                    algorithm,
                    n,
                    k: spec.pattern_width,
                    seed: run_seed,
                    repeat: Repeat::Run(repeat),
                    elapsed_ms: timed.elapsed_ms,
                    relinks: timed.counters.relink_count,
                    merge_visits: timed.counters.merge_visit_count,
                    comparisons: timed.counters.comparison_count,
                    depth: timed.counters.recursion_depth_max,
                    verified,
                });
            }
            let mean = mean_row(&group, spec.seed);
            rows.extend(group);
            rows.push(mean);
        }
    }
    Ok(BenchReport { rows })
}

fn verify_output(
    arena: &NodeArena,
    output: &LinkedList,
    input_pairs: &[(u64, u64)],
    algorithm: Algorithm,
    kd: &KeyDescriptor,
    cfg: &PbitConfig,
) -> bool {
    let mut expected = input_pairs.to_vec();
    match cfg.order {
        SortOrder::Ascending => expected.sort_by(|a, b| kd.compare(a.0, b.0)),
        SortOrder::Descending => expected.sort_by(|a, b| kd.compare(b.0, a.0)),
    }
    let got = arena.to_pairs(output);
    if got.len() != expected.len() {
        return false;
    }
    if algorithm.stable() {
        got == expected
    } else {
        got.iter().zip(&expected).all(|(g, e)| g.0 == e.0)
    }
}

fn mean_row(group: &[BenchRow], base_seed: u64) -> BenchRow {
    let count = group.len() as u64;
    let sum = |f: fn(&BenchRow) -> u64| group.iter().map(f).sum::<u64>() / count;
    BenchRow {
        algorithm: group[0].algorithm,
        n: group[0].n,
        k: group[0].k,
        seed: base_seed,
        repeat: Repeat::Mean,
        elapsed_ms: group.iter().map(|r| r.elapsed_ms).sum::<f64>() / count as f64,
        relinks: sum(|r| r.relinks),
        merge_visits: sum(|r| r.merge_visits),
        comparisons: sum(|r| r.comparisons),
        depth: sum(|r| r.depth),
        verified: group.iter().all(|r| r.verified),
    }
}
