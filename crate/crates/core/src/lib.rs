//! Shared-memory parallel vertex coloring.
//!
//! Three parallel first-fit strategies over a contiguous id partition of the
//! graph, plus the sequential baseline they are measured against:
//!
//! - [`barrier_color`]: rounds of tentative coloring and cross-block conflict
//!   detection separated by full barriers; the lower-block endpoint of every
//!   monochromatic cross edge is recolored in the next round.
//! - [`coarse_color`]: internal vertices colored lock-free, boundary vertices
//!   colored one at a time under a single global lock.
//! - [`fine_color`]: boundary vertices colored while holding the locks of their
//!   closed neighborhood, acquired in increasing id order.
//! - [`sequential_color`]: first-fit in ascending id order.
//!
//! The [`bench`] module implements the timing harness used by the `parcolor`
//! binary.

pub mod barrier;
pub mod bench;
pub mod coloring;
mod error;
pub mod generate;
pub mod graph;
pub mod lock;
pub mod partition;

pub use barrier::{barrier_color, round_trace, BarrierTrace, RoundStats};
pub use coloring::{
    count_colors, first_fit, sequential_color, verify_coloring, Color, Coloring, ConflictReport,
    UNSET,
};
pub use error::{Error, Result};
pub use generate::{generate_synthetic, SyntheticKind, SyntheticSpec};
pub use graph::{max_degree, parse_edge_list, Graph};
pub use lock::{coarse_color, fine_color};
pub use partition::{partition_uniform, Partitioning};
