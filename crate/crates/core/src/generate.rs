//! Deterministic synthetic graphs.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SyntheticKind {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Complete bipartite graph `K(left, right)`.
    Bipartite {
        left: usize,
        right: usize,
    },
    /// Erdős–Rényi `G(n, prob)`.
    Gnp {
        n: usize,
        prob: f64,
    },
}

/// A synthetic graph description, written `kind:params:seed` on the command
/// line, e.g. `gnp:2000,0.01:3` or `bipartite:200,200:0`. The seed may be
/// omitted and defaults to 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SyntheticSpec {
    pub kind: SyntheticKind,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn generate(&self) -> Result<Graph> {
        generate_synthetic(&self.kind, self.seed)
    }
}

/// Generates the graph described by `kind`. Only `Gnp` consumes randomness;
/// the output is a pure function of `(kind, seed)`.
pub fn generate_synthetic(kind: &SyntheticKind, seed: u64) -> Result<Graph> {
    let graph = match *kind {
        SyntheticKind::Path { n } => {
            check_size(n)?;
            Graph::from_edges(n, (1..n as u32).map(|v| (v - 1, v)))
        }
        SyntheticKind::Cycle { n } => {
            check_size(n)?;
            let closing = (n >= 3).then(|| (n as u32 - 1, 0));
            Graph::from_edges(n, (1..n as u32).map(|v| (v - 1, v)).chain(closing))
        }
        SyntheticKind::Complete { n } => {
            check_size(n)?;
            let n32 = n as u32;
            Graph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))))
        }
        SyntheticKind::Bipartite { left, right } => {
            let n = left
                .checked_add(right)
                .ok_or_else(|| Error::invalid("bipartite size overflows"))?;
            check_size(n)?;
            let (l, n32) = (left as u32, n as u32);
            Graph::from_edges(n, (0..l).flat_map(|u| (l..n32).map(move |v| (u, v))))
        }
        SyntheticKind::Gnp { n, prob } => {
            check_size(n)?;
            if !(0.0..=1.0).contains(&prob) {
                return Err(Error::invalid(format!(
                    "edge probability {prob} outside [0, 1]"
                )));
            }
            Graph::from_edges(n, gnp_edges(n, prob, seed))
        }
    };
    Ok(graph)
}

fn check_size(n: usize) -> Result<()> {
    if n > u32::MAX as usize {
        return Err(Error::invalid(format!(
            "{n} vertices exceeds the u32 id range"
        )));
    }
    Ok(())
}

// Geometric skipping over the lower triangle, so the cost is linear in the
// number of edges produced rather than quadratic in n.
fn gnp_edges(n: usize, prob: f64, seed: u64) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    if n < 2 || prob <= 0.0 {
        return edges;
    }
    if prob >= 1.0 {
        for v in 1..n as u32 {
            edges.extend((0..v).map(|w| (v, w)));
        }
        return edges;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let log_q = (1.0 - prob).ln();
    let expected = (prob * n as f64 * (n as f64 - 1.0) / 2.0) as usize;
    edges.reserve(expected + expected / 8);

    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w = w.saturating_add(1).saturating_add(skip as i64);
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((v as u32, w as u32));
        }
    }
    edges
}

impl fmt::Display for SyntheticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SyntheticKind::Path { n } => write!(f, "path:{n}")?,
            SyntheticKind::Cycle { n } => write!(f, "cycle:{n}")?,
            SyntheticKind::Complete { n } => write!(f, "complete:{n}")?,
            SyntheticKind::Bipartite { left, right } => write!(f, "bipartite:{left},{right}")?,
            SyntheticKind::Gnp { n, prob } => write!(f, "gnp:{n},{prob}")?,
        }
        write!(f, ":{}", self.seed)
    }
}

impl FromStr for SyntheticSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::invalid(format!("synthetic spec {s:?}: {why}"));
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params: Vec<&str> = match parts.next() {
            Some(p) => p.split(',').map(str::trim).collect(),
            None => return Err(bad("missing parameters")),
        };
        let seed = match parts.next() {
            Some(seed) => seed
                .trim()
                .parse()
                .map_err(|_| bad("seed is not an integer"))?,
            None => 0,
        };
        if parts.next().is_some() {
            return Err(bad("expected kind:params:seed"));
        }

        let size = |i: usize| -> Result<usize> {
            params
                .get(i)
                .ok_or_else(|| bad("missing size"))?
                .parse()
                .map_err(|_| bad("size is not a non-negative integer"))
        };
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("{kind} takes {k} parameter(s)")))
            }
        };

        let kind = match kind.as_str() {
            "path" => {
                arity(1)?;
                SyntheticKind::Path { n: size(0)? }
            }
            "cycle" => {
                arity(1)?;
                SyntheticKind::Cycle { n: size(0)? }
            }
            "complete" => {
                arity(1)?;
                SyntheticKind::Complete { n: size(0)? }
            }
            "bipartite" => {
                arity(2)?;
                SyntheticKind::Bipartite {
                    left: size(0)?,
                    right: size(1)?,
                }
            }
            "gnp" => {
                arity(2)?;
                let prob: f64 = params[1]
                    .parse()
                    .map_err(|_| bad("probability is not a number"))?;
                if !(0.0..=1.0).contains(&prob) {
                    return Err(bad("probability outside [0, 1]"));
                }
                SyntheticKind::Gnp { n: size(0)?, prob }
            }
            _ => return Err(bad("unknown kind")),
        };
        Ok(SyntheticSpec { kind, seed })
    }
}
