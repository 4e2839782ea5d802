//! Barrier-synchronized two-phase coloring.
//!
//! One worker per block. Every round has a tentative phase, in which each
//! worker first-fit colors its work set using only what it knows locally,
//! and a conflict-detection phase, in which it reads the colors of
//! cross-block neighbors of its boundary work vertices. A vertex that shares
//! its color with a neighbor in a higher block goes into the next round's
//! work set. Both phases end at a full barrier.
//!
//! A vertex's forbidden colors are the current colors of its same-block
//! neighbors plus the last colors its worker saw on its cross-block
//! neighbors. Same-block colors are only ever written by the owning worker,
//! so reading them directly is the same as propagating each new color into
//! the neighbors' forbidden lists. Cross-block colors live in per-neighbor
//! slots refreshed only in the detection phase, after the barrier has made
//! the tentative colors visible.
//!
//! Blocks settle from the top down: the last block never recolors, and block
//! `i` is final after round `p - i`, so a run takes at most `p + 1` rounds
//! counting the closing round in which every work set is empty.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Barrier, Mutex};
use std::thread;

use crate::coloring::{Color, Coloring, ForbiddenColors, SharedColors};
use crate::error::Result;
use crate::graph::Graph;
use crate::partition::Partitioning;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    /// Rounds executed, including the final round with no work.
    pub rounds: usize,
    /// Total size of the next-round recolor sets, per round.
    pub recolors_per_round: Vec<usize>,
    /// How many times each vertex was recolored after its first coloring.
    pub recolor_count: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Tentative,
    ConflictDetection,
}

/// Hooks into a barrier run. All methods default to no-ops.
///
/// `round` is 1-based. `colors_after_tentative` runs on worker 0 during the
/// detection phase, when no color is being written, and only if
/// `wants_colors` returns true.
pub trait RoundObserver: Sync {
    fn phase_begin(&self, _thread: usize, _round: usize, _phase: Phase) {}
    fn phase_end(&self, _thread: usize, _round: usize, _phase: Phase) {}
    fn round_end(&self, _thread: usize, _round: usize, _work: &[u32], _recolor: &[u32]) {}
    fn wants_colors(&self) -> bool {
        false
    }
    fn colors_after_tentative(&self, _round: usize, _colors: &[Color]) {}
}

impl RoundObserver for () {}

/// Colors `g` with one worker per block of `part`.
pub fn barrier_color(g: &Graph, part: &Partitioning) -> Result<(Coloring, RoundStats)> {
    barrier_color_observed(g, part, &())
}

pub fn barrier_color_observed<O: RoundObserver>(
    g: &Graph,
    part: &Partitioning,
    observer: &O,
) -> Result<(Coloring, RoundStats)> {
    part.check_matches(g)?;
    let shared = Shared {
        graph: g,
        part,
        colors: SharedColors::new(g.vertex_count()),
        max_degree: g.max_degree(),
        barrier: Barrier::new(part.block_count()),
        pending: [AtomicUsize::new(0), AtomicUsize::new(0)],
        observer,
    };

    let outcomes: Vec<WorkerOutcome> = thread::scope(|s| {
        let handles: Vec<_> = (0..part.block_count())
            .map(|i| {
                let shared = &shared;
                s.spawn(move || shared.worker(i))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("coloring worker panicked"))
            .collect()
    });

    let rounds = outcomes[0].recolors_per_round.len();
    debug_assert!(outcomes
        .iter()
        .all(|o| o.recolors_per_round.len() == rounds));
    let mut stats = RoundStats {
        rounds,
        recolors_per_round: vec![0; rounds],
        recolor_count: Vec::with_capacity(g.vertex_count()),
    };
    for outcome in outcomes {
        for (total, r) in stats
            .recolors_per_round
            .iter_mut()
            .zip(outcome.recolors_per_round)
        {
            *total += r;
        }
        stats.recolor_count.extend(outcome.recolor_count);
    }
    Ok((shared.colors.into_coloring(shared.max_degree), stats))
}

struct Shared<'a, O> {
    graph: &'a Graph,
    part: &'a Partitioning,
    colors: SharedColors,
    max_degree: usize,
    barrier: Barrier,
    // count of workers with a nonempty next work set, by round parity
    pending: [AtomicUsize; 2],
    observer: &'a O,
}

struct WorkerOutcome {
    recolors_per_round: Vec<usize>,
    recolor_count: Vec<u32>,
}

impl<O: RoundObserver> Shared<'_, O> {
    fn worker(&self, block: usize) -> WorkerOutcome {
        let g = self.graph;
        let range = self.part.block_range(block);
        let base = g.adjacency_offset(range.start);
        // cross-block neighbor colors as `color + 1`; 0 means not seen yet
        let mut slots = vec![0 as Color; g.adjacency_offset(range.end) - base];
        let mut forbidden = ForbiddenColors::new(self.max_degree);

        let mut work: Vec<u32> = range.clone().map(|v| v as u32).collect();
        let mut next: Vec<u32> = Vec::new();
        let mut recolor_count = vec![0u32; range.len()];
        let mut recolors_per_round = Vec::new();

        // every worker computes the same sequence of these two values
        let mut active = g.vertex_count() > 0;
        let mut round = 0;
        loop {
            round += 1;

            self.observer.phase_begin(block, round, Phase::Tentative);
            for &v in &work {
                let v = v as usize;
                if round > 1 {
                    recolor_count[v - range.start] += 1;
                }
                let own = g.adjacency_offset(v) - base;
                forbidden.clear();
                for (&u, &seen) in g.neighbors(v).iter().zip(&slots[own..]) {
                    let u = u as usize;
                    if range.contains(&u) {
                        forbidden.forbid(self.colors.get(u));
                    } else if seen != 0 {
                        forbidden.forbid(seen - 1);
                    }
                }
                self.colors.set(v, forbidden.first_fit());
            }
            self.observer.phase_end(block, round, Phase::Tentative);
            self.barrier.wait();

            if block == 0 {
                // everyone read this counter before reaching the barrier above
                self.pending[(round + 1) % 2].store(0, Ordering::Relaxed);
                if self.observer.wants_colors() {
                    self.observer
                        .colors_after_tentative(round, &self.colors.snapshot());
                }
            }

            self.observer
                .phase_begin(block, round, Phase::ConflictDetection);
            for &v in &work {
                let v = v as usize;
                if !self.part.is_boundary(v) {
                    continue;
                }
                let own = g.adjacency_offset(v) - base;
                let color = self.colors.get(v);
                let mut conflict = false;
                for (k, &u) in g.neighbors(v).iter().enumerate() {
                    let u = u as usize;
                    if range.contains(&u) {
                        continue;
                    }
                    let cu = self.colors.get(u);
                    slots[own + k] = cu + 1;
                    // the lower-block endpoint recolors
                    conflict |= cu == color && u >= range.end;
                }
                if conflict {
                    next.push(v as u32);
                }
            }
            if !next.is_empty() {
                self.pending[round % 2].fetch_add(1, Ordering::Relaxed);
            }
            self.observer
                .phase_end(block, round, Phase::ConflictDetection);
            self.observer.round_end(block, round, &work, &next);
            recolors_per_round.push(next.len());
            std::mem::swap(&mut work, &mut next);
            next.clear();
            self.barrier.wait();

            let was_active = active;
            active = self.pending[round % 2].load(Ordering::Relaxed) > 0;
            if !was_active {
                break;
            }
        }

        WorkerOutcome {
            recolors_per_round,
            recolor_count,
        }
    }
}

/// One worker's view of one round.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThreadRound {
    /// Vertices (re)colored in the tentative phase.
    pub work: Vec<usize>,
    /// Vertices sent to the next round.
    pub recolor: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundSnapshot {
    pub round: usize,
    /// Indexed by worker.
    pub threads: Vec<ThreadRound>,
    /// Colors once the round's tentative phase finished.
    pub colors: Vec<Color>,
}

#[derive(Clone, Debug)]
pub struct BarrierTrace {
    pub coloring: Coloring,
    pub stats: RoundStats,
    pub rounds: Vec<RoundSnapshot>,
}

impl BarrierTrace {
    /// Times `v` was colored again after round 1.
    pub fn recolor_count(&self, v: usize) -> usize {
        self.rounds
            .iter()
            .filter(|r| r.round > 1)
            .flat_map(|r| r.threads.iter())
            .filter(|t| t.work.contains(&v))
            .count()
    }

    /// Writes `round thread work recolor` lines, one per worker per round,
    /// with set sizes in the last two columns.
    pub fn write_log<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "round\tthread\twork\trecolor")?;
        for snapshot in &self.rounds {
            for (thread, t) in snapshot.threads.iter().enumerate() {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    snapshot.round,
                    thread,
                    t.work.len(),
                    t.recolor.len()
                )?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Default)]
struct TraceRecorder {
    sets: Mutex<BTreeMap<(usize, usize), ThreadRound>>,
    colors: Mutex<BTreeMap<usize, Vec<Color>>>,
}

impl RoundObserver for TraceRecorder {
    fn round_end(&self, thread: usize, round: usize, work: &[u32], recolor: &[u32]) {
        let widen = |s: &[u32]| s.iter().map(|&v| v as usize).collect();
        let entry = ThreadRound {
            work: widen(work),
            recolor: widen(recolor),
        };
        self.sets.lock().unwrap().insert((round, thread), entry);
    }

    fn wants_colors(&self) -> bool {
        true
    }

    fn colors_after_tentative(&self, round: usize, colors: &[Color]) {
        self.colors.lock().unwrap().insert(round, colors.to_vec());
    }
}

/// Runs [`barrier_color`] while recording every worker's work and recolor
/// sets and the colors after each tentative phase.
pub fn round_trace(g: &Graph, part: &Partitioning) -> Result<BarrierTrace> {
    let recorder = TraceRecorder::default();
    let (coloring, stats) = barrier_color_observed(g, part, &recorder)?;
    let mut sets = recorder.sets.into_inner().unwrap();
    let mut colors = recorder.colors.into_inner().unwrap();
    let rounds = (1..=stats.rounds)
        .map(|round| RoundSnapshot {
            round,
            threads: (0..part.block_count())
                .map(|t| sets.remove(&(round, t)).unwrap_or_default())
                .collect(),
            colors: colors.remove(&round).unwrap_or_default(),
        })
        .collect();
    Ok(BarrierTrace {
        coloring,
        stats,
        rounds,
    })
}
