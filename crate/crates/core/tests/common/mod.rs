//! Independent oracles and instrumentation shared by the integration tests.
//! Nothing here calls into the coloring code it checks.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use parcolor::barrier::{Phase, RoundObserver};
use parcolor::lock::LockObserver;
use parcolor::{Color, Graph, SyntheticKind, SyntheticSpec};

pub fn gnp(n: usize, prob: f64, seed: u64) -> Graph {
    SyntheticSpec {
        kind: SyntheticKind::Gnp { n, prob },
        seed,
    }
    .generate()
    .unwrap()
}

pub fn synthetic(kind: SyntheticKind) -> Graph {
    SyntheticSpec { kind, seed: 0 }.generate().unwrap()
}

/// Adjacency sets rebuilt from the edge iterator.
pub fn adjacency_sets(g: &Graph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.vertex_count()];
    for (u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

/// Greedy in id order: each vertex takes the smallest value not used by an
/// earlier neighbor.
pub fn greedy_oracle(g: &Graph) -> Vec<Color> {
    let adj = adjacency_sets(g);
    let mut colors: Vec<Color> = Vec::with_capacity(g.vertex_count());
    for (v, nbrs) in adj.iter().enumerate() {
        let c = (0..)
            .find(|c| !nbrs.iter().any(|&u| u < v && colors[u] == *c))
            .unwrap();
        colors.push(c);
    }
    colors
}

/// All monochromatic pairs by scanning every unordered vertex pair.
pub fn brute_force_conflicts(g: &Graph, colors: &[Color]) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] == colors[v] && g.neighbors(u).contains(&(v as u32)) {
                out.push((u, v));
            }
        }
    }
    out
}

pub fn distinct(colors: &[Color]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// Runs `f` on its own thread and fails if it has not returned in `limit`.
pub fn with_watchdog<T: Send + 'static>(
    limit: Duration,
    f: impl FnOnce() -> T + Send + 'static,
) -> T {
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(f());
    });
    rx.recv_timeout(limit)
        .unwrap_or_else(|_| panic!("no completion within {limit:?}; deadlock suspected"))
}

/// Checks that lock acquisitions within one critical section are strictly
/// increasing, and counts color writes per vertex.
pub struct LockAudit {
    last: Vec<AtomicUsize>,
    pub out_of_order: AtomicUsize,
    pub acquisitions: AtomicUsize,
    pub writes: Vec<AtomicUsize>,
}

impl LockAudit {
    pub fn new(threads: usize, n: usize) -> Self {
        LockAudit {
            last: (0..threads).map(|_| AtomicUsize::new(usize::MAX)).collect(),
            out_of_order: AtomicUsize::new(0),
            acquisitions: AtomicUsize::new(0),
            writes: (0..n).map(|_| AtomicUsize::new(0)).collect(),
        }
    }

    pub fn violations(&self) -> usize {
        self.out_of_order.load(Ordering::Relaxed)
    }

    pub fn all_written_once(&self) -> bool {
        self.writes.iter().all(|w| w.load(Ordering::Relaxed) == 1)
    }
}

impl LockObserver for LockAudit {
    fn color_written(&self, _thread: usize, v: usize) {
        self.writes[v].fetch_add(1, Ordering::Relaxed);
    }

    fn lock_acquired(&self, thread: usize, v: usize) {
        self.acquisitions.fetch_add(1, Ordering::Relaxed);
        let prev = self.last[thread].swap(v, Ordering::Relaxed);
        if prev != usize::MAX && prev >= v {
            self.out_of_order.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn locks_released(&self, thread: usize) {
        self.last[thread].store(usize::MAX, Ordering::Relaxed);
    }
}

/// Numbers the phases 0, 1, 2, ... in execution order and checks that no
/// worker starts phase k before all workers have finished phase k - 1.
pub struct PhaseAudit {
    threads: usize,
    finished: AtomicUsize,
    pub violations: AtomicUsize,
    pub max_epoch: AtomicUsize,
}

impl PhaseAudit {
    pub fn new(threads: usize) -> Self {
        PhaseAudit {
            threads,
            finished: AtomicUsize::new(0),
            violations: AtomicUsize::new(0),
            max_epoch: AtomicUsize::new(0),
        }
    }

    fn epoch(round: usize, phase: Phase) -> usize {
        2 * (round - 1)
            + match phase {
                Phase::Tentative => 0,
                Phase::ConflictDetection => 1,
            }
    }
}

impl RoundObserver for PhaseAudit {
    fn phase_begin(&self, _thread: usize, round: usize, phase: Phase) {
        let k = Self::epoch(round, phase);
        self.max_epoch.fetch_max(k, Ordering::SeqCst);
        let done = self.finished.load(Ordering::SeqCst);
        // every earlier phase finished everywhere, and this one not yet by us
        if done < k * self.threads || done >= (k + 1) * self.threads {
            self.violations.fetch_add(1, Ordering::SeqCst);
        }
    }

    fn phase_end(&self, _thread: usize, _round: usize, _phase: Phase) {
        self.finished.fetch_add(1, Ordering::SeqCst);
    }
}
