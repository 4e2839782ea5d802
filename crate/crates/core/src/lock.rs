//! Single-pass lock-based coloring.
//!
//! Each worker colors the internal vertices of its block without locking,
//! since only it ever reads or writes them, then colors its boundary
//! vertices. Every cross-block edge joins two boundary vertices, so
//! serializing boundary colorings that share an edge is enough for a proper
//! coloring. The coarse variant serializes all of them behind one lock; the
//! fine variant locks the closed neighborhood of the vertex being colored,
//! taking the per-vertex locks in increasing id order so that no cycle of
//! waiting workers can form.

use std::thread;

use parking_lot::{Mutex, MutexGuard};

use crate::coloring::{Coloring, ForbiddenColors, SharedColors};
use crate::error::Result;
use crate::graph::Graph;
use crate::partition::Partitioning;

/// Hooks into a lock-based run. All methods default to no-ops.
pub trait LockObserver: Sync {
    /// `thread` stored a color for `v`.
    fn color_written(&self, _thread: usize, _v: usize) {}
    /// `thread` acquired the lock of `v` (fine variant only).
    fn lock_acquired(&self, _thread: usize, _v: usize) {}
    /// `thread` released every lock it held (fine variant only).
    fn locks_released(&self, _thread: usize) {}
}

impl LockObserver for () {}

/// One lock per vertex.
pub struct LockTable {
    locks: Vec<Mutex<()>>,
}

impl LockTable {
    pub fn new(n: usize) -> Self {
        LockTable {
            locks: (0..n).map(|_| Mutex::new(())).collect(),
        }
    }

    /// Locks `v` and all of `neighbors` (sorted ascending, without `v`) in
    /// increasing id order, pushing the guards onto `held`.
    fn lock_closed_neighborhood<'a, O: LockObserver>(
        &'a self,
        v: usize,
        neighbors: &[u32],
        held: &mut Vec<MutexGuard<'a, ()>>,
        thread: usize,
        observer: &O,
    ) {
        let split = neighbors.partition_point(|&u| (u as usize) < v);
        let ordered = neighbors[..split]
            .iter()
            .map(|&u| u as usize)
            .chain(std::iter::once(v))
            .chain(neighbors[split..].iter().map(|&u| u as usize));
        for u in ordered {
            held.push(self.locks[u].lock());
            observer.lock_acquired(thread, u);
        }
    }
}

#[derive(Clone, Copy)]
enum Granularity {
    Coarse,
    Fine,
}

/// Boundary vertices colored one at a time under a single global lock.
pub fn coarse_color(g: &Graph, part: &Partitioning) -> Result<Coloring> {
    coarse_color_observed(g, part, &())
}

pub fn coarse_color_observed<O: LockObserver>(
    g: &Graph,
    part: &Partitioning,
    observer: &O,
) -> Result<Coloring> {
    run(g, part, Granularity::Coarse, observer)
}

/// Boundary vertices colored while holding the locks of their closed
/// neighborhood.
pub fn fine_color(g: &Graph, part: &Partitioning) -> Result<Coloring> {
    fine_color_observed(g, part, &())
}

pub fn fine_color_observed<O: LockObserver>(
    g: &Graph,
    part: &Partitioning,
    observer: &O,
) -> Result<Coloring> {
    run(g, part, Granularity::Fine, observer)
}

struct Shared<'a, O> {
    graph: &'a Graph,
    part: &'a Partitioning,
    colors: SharedColors,
    max_degree: usize,
    boundary_lock: Mutex<()>,
    vertex_locks: Option<LockTable>,
    observer: &'a O,
}

fn run<O: LockObserver>(
    g: &Graph,
    part: &Partitioning,
    granularity: Granularity,
    observer: &O,
) -> Result<Coloring> {
    part.check_matches(g)?;
    let shared = Shared {
        graph: g,
        part,
        colors: SharedColors::new(g.vertex_count()),
        max_degree: g.max_degree(),
        boundary_lock: Mutex::new(()),
        vertex_locks: match granularity {
            Granularity::Coarse => None,
            Granularity::Fine => Some(LockTable::new(g.vertex_count())),
        },
        observer,
    };

    thread::scope(|s| {
        for block in 0..part.block_count() {
            let shared = &shared;
            s.spawn(move || shared.worker(block));
        }
    });
    Ok(shared.colors.into_coloring(shared.max_degree))
}

impl<O: LockObserver> Shared<'_, O> {
    fn color_vertex(&self, v: usize, forbidden: &mut ForbiddenColors, thread: usize) {
        forbidden.clear();
        for &u in self.graph.neighbors(v) {
            forbidden.forbid(self.colors.get(u as usize));
        }
        self.colors.set(v, forbidden.first_fit());
        self.observer.color_written(thread, v);
    }

    fn worker(&self, block: usize) {
        let mut forbidden = ForbiddenColors::new(self.max_degree);

        for v in self.part.internal_vertices(block) {
            self.color_vertex(v, &mut forbidden, block);
        }

        match &self.vertex_locks {
            None => {
                for v in self.part.boundary_vertices(block) {
                    let _guard = self.boundary_lock.lock();
                    self.color_vertex(v, &mut forbidden, block);
                }
            }
            Some(table) => {
                let mut held = Vec::with_capacity(self.max_degree + 1);
                for v in self.part.boundary_vertices(block) {
                    table.lock_closed_neighborhood(
                        v,
                        self.graph.neighbors(v),
                        &mut held,
                        block,
                        self.observer,
                    );
                    self.color_vertex(v, &mut forbidden, block);
                    held.clear();
                    self.observer.locks_released(block);
                }
            }
        }
    }
}
