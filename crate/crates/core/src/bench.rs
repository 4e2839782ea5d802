//! Benchmark harness.
//!
//! The timed window for a parallel run starts before partitioning and stops
//! when the coloring is complete; loading the graph and verifying the result
//! are never timed. Repetitions run back to back.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::barrier::barrier_color;
use crate::coloring::{count_colors, sequential_color, verify_coloring, Coloring};
use crate::error::{Error, Result};
use crate::generate::SyntheticSpec;
use crate::graph::{parse_edge_list, Graph};
use crate::lock::{coarse_color, fine_color};
use crate::partition::partition_uniform;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Seq,
    Barrier,
    Coarse,
    Fine,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Seq,
        Algorithm::Barrier,
        Algorithm::Coarse,
        Algorithm::Fine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Seq => "seq",
            Algorithm::Barrier => "barrier",
            Algorithm::Coarse => "coarse",
            Algorithm::Fine => "fine",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InputSource {
    File(PathBuf),
    Synthetic(SyntheticSpec),
}

impl InputSource {
    pub fn load(&self) -> Result<Graph> {
        match self {
            InputSource::File(path) => {
                let file = File::open(path).map_err(|e| {
                    Error::Io(std::io::Error::new(
                        e.kind(),
                        format!("{}: {e}", path.display()),
                    ))
                })?;
                parse_edge_list(BufReader::new(file))
            }
            InputSource::Synthetic(spec) => spec.generate(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub input: InputSource,
    pub algorithm: Algorithm,
    pub threads: Vec<usize>,
    pub repetitions: usize,
    pub verify: bool,
    /// Also time the sequential algorithm on the same graph and fill in
    /// [`BenchResult::speedup`] for parallel results.
    pub baseline: bool,
}

impl BenchConfig {
    pub fn new(input: InputSource, algorithm: Algorithm) -> Self {
        BenchConfig {
            input,
            algorithm,
            threads: vec![1],
            repetitions: 10,
            verify: false,
            baseline: true,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.threads.is_empty() {
            return Err(Error::invalid("thread count list is empty"));
        }
        if self.threads.contains(&0) {
            return Err(Error::invalid("thread counts must be positive"));
        }
        if self.repetitions == 0 {
            return Err(Error::invalid("repetitions must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchResult {
    pub algorithm: Algorithm,
    pub p: usize,
    pub mean_time_s: f64,
    pub times_s: Vec<f64>,
    pub colors: Vec<usize>,
    /// Barrier runs only.
    pub rounds: Option<Vec<usize>>,
    pub speedup: Option<f64>,
}

impl BenchResult {
    pub fn max_colors(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    pub fn max_rounds(&self) -> Option<usize> {
        self.rounds.as_ref().and_then(|r| r.iter().copied().max())
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Load,
    Partition,
    Color,
    Verify,
}

/// Time source for the harness. `enter` is called as each stage begins; a
/// real clock ignores it.
pub trait Clock {
    fn now(&self) -> Duration;
    fn enter(&self, _stage: Stage) {}
}

pub struct MonotonicClock {
    origin: Instant,
}

impl Default for MonotonicClock {
    fn default() -> Self {
        MonotonicClock {
            origin: Instant::now(),
        }
    }
}

impl Clock for MonotonicClock {
    fn now(&self) -> Duration {
        self.origin.elapsed()
    }
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchResult>> {
    run_benchmark_with_clock(cfg, &MonotonicClock::default())
}

pub fn run_benchmark_with_clock(cfg: &BenchConfig, clock: &dyn Clock) -> Result<Vec<BenchResult>> {
    cfg.validate()?;
    clock.enter(Stage::Load);
    let graph = cfg.input.load()?;
    benchmark_graph(&graph, cfg, clock)
}

/// Runs the benchmark on an already loaded graph.
pub fn benchmark_graph(
    g: &Graph,
    cfg: &BenchConfig,
    clock: &dyn Clock,
) -> Result<Vec<BenchResult>> {
    cfg.validate()?;
    let baseline = if cfg.baseline && cfg.algorithm != Algorithm::Seq {
        Some(measure(g, Algorithm::Seq, 1, cfg, clock)?.mean_time_s)
    } else {
        None
    };

    let thread_counts: &[usize] = match cfg.algorithm {
        Algorithm::Seq => &[1],
        _ => &cfg.threads,
    };
    thread_counts
        .iter()
        .map(|&p| {
            let mut result = measure(g, cfg.algorithm, p, cfg, clock)?;
            result.speedup = baseline.map(|seq| seq / result.mean_time_s);
            Ok(result)
        })
        .collect()
}

fn measure(
    g: &Graph,
    algorithm: Algorithm,
    p: usize,
    cfg: &BenchConfig,
    clock: &dyn Clock,
) -> Result<BenchResult> {
    let mut times_s = Vec::with_capacity(cfg.repetitions);
    let mut colors = Vec::with_capacity(cfg.repetitions);
    let mut rounds = Vec::new();

    for _ in 0..cfg.repetitions {
        let (coloring, elapsed, round_count) = timed_run(g, algorithm, p, clock)?;
        times_s.push(elapsed.as_secs_f64());
        colors.push(count_colors(&coloring));
        rounds.extend(round_count);

        if cfg.verify {
            clock.enter(Stage::Verify);
            let report = verify_coloring(g, &coloring)?;
            if !report.is_empty() {
                return Err(Error::VerificationFailed {
                    algorithm: algorithm.name().to_owned(),
                    threads: p,
                    conflicts: report,
                });
            }
        }
    }

    Ok(BenchResult {
        algorithm,
        p,
        mean_time_s: mean(&times_s),
        times_s,
        colors,
        rounds: (algorithm == Algorithm::Barrier).then_some(rounds),
        speedup: None,
    })
}

/// One timed coloring. Returns the coloring, the measured window and, for
/// the barrier algorithm, the number of rounds.
pub fn timed_run(
    g: &Graph,
    algorithm: Algorithm,
    p: usize,
    clock: &dyn Clock,
) -> Result<(Coloring, Duration, Option<usize>)> {
    let start = clock.now();
    let (coloring, rounds) = match algorithm {
        Algorithm::Seq => {
            clock.enter(Stage::Color);
            (sequential_color(g), None)
        }
        parallel => {
            clock.enter(Stage::Partition);
            let part = partition_uniform(g, p)?;
            clock.enter(Stage::Color);
            match parallel {
                Algorithm::Barrier => {
                    let (c, stats) = barrier_color(g, &part)?;
                    (c, Some(stats.rounds))
                }
                Algorithm::Coarse => (coarse_color(g, &part)?, None),
                Algorithm::Fine => (fine_color(g, &part)?, None),
                Algorithm::Seq => unreachable!(),
            }
        }
    };
    let elapsed = clock.now().saturating_sub(start);
    Ok((coloring, elapsed, rounds))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::invalid(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    algorithm: Algorithm,
    p: usize,
    mean_time_s: f64,
    colors: usize,
    rounds: Option<usize>,
    speedup: Option<f64>,
}

/// Serializes results. CSV has one row per result with columns
/// `algorithm,p,mean_time_s,colors,rounds,speedup`, where `colors` and
/// `rounds` are the maxima over repetitions and empty cells mean not
/// applicable. JSON is the full result list.
pub fn emit_results(results: &[BenchResult], format: OutputFormat) -> Result<Vec<u8>> {
    if results.is_empty() {
        return Err(Error::invalid("no results to emit"));
    }
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for r in results {
                writer.serialize(CsvRow {
                    algorithm: r.algorithm,
                    p: r.p,
                    mean_time_s: r.mean_time_s,
                    colors: r.max_colors(),
                    rounds: r.max_rounds(),
                    speedup: r.speedup,
                })?;
            }
            writer
                .into_inner()
                .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
        }
        OutputFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(results)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

/// Reads back the JSON written by [`emit_results`].
pub fn parse_results_json(bytes: &[u8]) -> Result<Vec<BenchResult>> {
    Ok(serde_json::from_slice(bytes)?)
}
