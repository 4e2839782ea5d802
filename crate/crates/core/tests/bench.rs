mod common;

use std::cell::{Cell, RefCell};
use std::time::Duration;

use parcolor::bench::{
    benchmark_graph, emit_results, mean, parse_results_json, run_benchmark_with_clock, Algorithm,
    BenchConfig, Clock, InputSource, OutputFormat, Stage,
};
use parcolor::{SyntheticKind, SyntheticSpec};

/// Each stage costs a distinct power of two, so the measured window
/// identifies exactly which stages it covered.
struct FakeClock {
    now: Cell<Duration>,
    log: RefCell<Vec<Stage>>,
}

impl FakeClock {
    fn new() -> Self {
        FakeClock {
            now: Cell::new(Duration::ZERO),
            log: RefCell::new(Vec::new()),
        }
    }

    fn cost(stage: Stage) -> Duration {
        Duration::from_secs(match stage {
            Stage::Load => 1000,
            Stage::Partition => 1,
            Stage::Color => 2,
            Stage::Verify => 4,
        })
    }
}

impl Clock for FakeClock {
    fn now(&self) -> Duration {
        self.now.get()
    }

    fn enter(&self, stage: Stage) {
        self.log.borrow_mut().push(stage);
        self.now.set(self.now.get() + Self::cost(stage));
    }
}

fn gnp_input(n: usize, prob: f64, seed: u64) -> InputSource {
    InputSource::Synthetic(SyntheticSpec {
        kind: SyntheticKind::Gnp { n, prob },
        seed,
    })
}

#[test]
fn timed_window_is_partition_plus_coloring() {
    for algorithm in [Algorithm::Barrier, Algorithm::Coarse, Algorithm::Fine] {
        let mut cfg = BenchConfig::new(gnp_input(200, 0.05, 1), algorithm);
        cfg.threads = vec![1, 3];
        cfg.repetitions = 2;
        cfg.verify = true;
        cfg.baseline = false;
        let clock = FakeClock::new();
        let results = run_benchmark_with_clock(&cfg, &clock).unwrap();
        for r in &results {
            assert_eq!(r.times_s, vec![3.0, 3.0], "{algorithm}");
            assert_eq!(r.mean_time_s, 3.0);
        }
        let log = clock.log.borrow();
        assert_eq!(log[0], Stage::Load);
        assert_eq!(log.iter().filter(|&&s| s == Stage::Load).count(), 1);
        assert_eq!(log.iter().filter(|&&s| s == Stage::Verify).count(), 4);
    }
}

#[test]
fn sequential_window_is_coloring_only() {
    let mut cfg = BenchConfig::new(gnp_input(100, 0.05, 1), Algorithm::Seq);
    cfg.repetitions = 3;
    cfg.verify = true;
    let clock = FakeClock::new();
    let results = run_benchmark_with_clock(&cfg, &clock).unwrap();
    assert_eq!(results[0].times_s, vec![2.0; 3]);
}

#[test]
fn speedup_uses_baseline_means_from_same_clock() {
    let mut cfg = BenchConfig::new(gnp_input(100, 0.05, 1), Algorithm::Fine);
    cfg.threads = vec![2, 4];
    cfg.repetitions = 2;
    let clock = FakeClock::new();
    let results = run_benchmark_with_clock(&cfg, &clock).unwrap();
    // sequential 2s against parallel 1s + 2s
    for r in &results {
        assert_eq!(r.speedup, Some(2.0 / 3.0));
    }
}

#[test]
fn barrier_sweep_is_verified_with_round_bound() {
    let g = SyntheticSpec {
        kind: SyntheticKind::Gnp {
            n: 5000,
            prob: 0.004,
        },
        seed: 1,
    }
    .generate()
    .unwrap();
    let mut cfg = BenchConfig::new(gnp_input(5000, 0.004, 1), Algorithm::Barrier);
    cfg.threads = vec![1, 2, 4];
    cfg.repetitions = 2;
    cfg.verify = true;
    cfg.baseline = false;
    let results = benchmark_graph(&g, &cfg, &parcolor::bench::MonotonicClock::default()).unwrap();
    assert_eq!(results.len(), 3);
    for r in &results {
        let rounds = r.rounds.as_ref().unwrap();
        assert_eq!(rounds.len(), 2);
        assert!(rounds.iter().all(|&k| k <= r.p + 1));
        assert!(r.colors.iter().all(|&c| c <= g.max_degree() + 1));
        assert_eq!(r.mean_time_s, mean(&r.times_s));
    }
}

#[test]
fn fine_speedup_against_measured_sequential() {
    let mut cfg = BenchConfig::new(gnp_input(5000, 0.004, 1), Algorithm::Fine);
    cfg.threads = vec![4];
    cfg.repetitions = 2;
    cfg.verify = true;
    let results = parcolor::bench::run_benchmark(&cfg).unwrap();
    let speedup = results[0].speedup.unwrap();
    assert!(speedup.is_finite() && speedup > 0.0);
}

#[test]
fn emitted_json_parses_back() {
    let mut cfg = BenchConfig::new(gnp_input(300, 0.03, 2), Algorithm::Barrier);
    cfg.threads = vec![1, 2];
    cfg.repetitions = 2;
    let results = parcolor::bench::run_benchmark(&cfg).unwrap();
    let json = emit_results(&results, OutputFormat::Json).unwrap();
    assert_eq!(parse_results_json(&json).unwrap(), results);

    let csv = String::from_utf8(emit_results(&results, OutputFormat::Csv).unwrap()).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        vec![
            "algorithm",
            "p",
            "mean_time_s",
            "colors",
            "rounds",
            "speedup"
        ]
    );
    for (row, r) in reader.records().zip(&results) {
        let row = row.unwrap();
        assert_eq!(&row[0], "barrier");
        assert_eq!(row[2].parse::<f64>().unwrap(), r.mean_time_s);
        assert_eq!(row[4].parse::<usize>().unwrap(), r.max_rounds().unwrap());
    }
}
