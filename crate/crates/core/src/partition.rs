use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Split of the vertex ids into `p` contiguous, id-ordered blocks, with each
/// vertex classified as internal (all neighbors in its own block) or boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partitioning {
    // block i owns bounds[i]..bounds[i + 1]
    bounds: Vec<usize>,
    stride: usize,
    boundary: Vec<bool>,
}

impl Partitioning {
    pub fn block_count(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.boundary.len()
    }

    pub fn block_range(&self, block: usize) -> Range<usize> {
        self.bounds[block]..self.bounds[block + 1]
    }

    #[inline]
    pub fn block_of(&self, v: usize) -> usize {
        debug_assert!(v < self.vertex_count());
        (v / self.stride).min(self.block_count() - 1)
    }

    #[inline]
    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary.iter().filter(|&&b| b).count()
    }

    /// Vertices of `block` with every neighbor inside the block, ascending.
    pub fn internal_vertices(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        self.block_range(block).filter(move |&v| !self.boundary[v])
    }

    /// Vertices of `block` with a neighbor in another block, ascending.
    pub fn boundary_vertices(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        self.block_range(block).filter(move |&v| self.boundary[v])
    }

    pub(crate) fn check_matches(&self, g: &Graph) -> Result<()> {
        if self.vertex_count() != g.vertex_count() {
            return Err(Error::PartitionMismatch {
                graph: g.vertex_count(),
                partition: self.vertex_count(),
            });
        }
        Ok(())
    }
}

/// Partitions `g` into `p` contiguous blocks of `⌊n/p⌋` ids each, the last
/// block taking the remainder. When `p > n` every vertex gets a block of its
/// own and blocks `n..p` are empty.
pub fn partition_uniform(g: &Graph, p: usize) -> Result<Partitioning> {
    if p == 0 {
        return Err(Error::invalid("block count must be at least 1"));
    }
    let n = g.vertex_count();
    let stride = (n / p).max(1);
    let mut bounds: Vec<usize> = (0..p).map(|i| (i * stride).min(n)).collect();
    bounds.push(n);

    let block_of = |v: usize| (v / stride).min(p - 1);
    let boundary = (0..n)
        .map(|v| {
            let b = block_of(v);
            g.neighbors(v).iter().any(|&u| block_of(u as usize) != b)
        })
        .collect();

    Ok(Partitioning {
        bounds,
        stride,
        boundary,
    })
}
