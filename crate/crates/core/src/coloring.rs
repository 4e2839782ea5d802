//! Color assignments, first-fit selection, verification and the sequential
//! baseline.

use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Color = u32;

/// Marker for a vertex that has not been colored yet.
pub const UNSET: Color = Color::MAX;

/// Per-vertex colors over the palette `0..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
    max_degree: usize,
}

impl Coloring {
    /// An all-`UNSET` coloring for `g`.
    pub fn new(g: &Graph) -> Self {
        Coloring {
            colors: vec![UNSET; g.vertex_count()],
            max_degree: g.max_degree(),
        }
    }

    /// Wraps raw colors. Entries are either `UNSET` or must lie in
    /// `0..=max_degree`.
    pub fn from_colors(colors: Vec<Color>, max_degree: usize) -> Result<Self> {
        if let Some(v) = colors
            .iter()
            .position(|&c| c != UNSET && c as usize > max_degree)
        {
            return Err(Error::invalid(format!(
                "vertex {v} has color {} outside palette 0..={max_degree}",
                colors[v]
            )));
        }
        Ok(Coloring { colors, max_degree })
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        match self.colors[v] {
            UNSET => None,
            c => Some(c),
        }
    }

    pub fn set(&mut self, v: usize, c: Color) {
        assert!(c as usize <= self.max_degree, "color {c} outside palette");
        self.colors[v] = c;
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        self.max_degree + 1
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(|&c| c != UNSET)
    }

    /// Largest assigned color, if any.
    pub fn max_color(&self) -> Option<Color> {
        self.colors.iter().copied().filter(|&c| c != UNSET).max()
    }

    pub fn count_colors(&self) -> usize {
        count_colors(self)
    }
}

/// Monochromatic edges `(u, v)` with `u < v`, ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub conflicts: Vec<(usize, usize)>,
}

impl ConflictReport {
    pub fn is_empty(&self) -> bool {
        self.conflicts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.conflicts.len()
    }
}

/// The least color in `0..=m` not in `forbidden`. Entries outside the
/// palette (including `UNSET`) are ignored. `None` means every color is
/// forbidden, which a vertex with at most `m` neighbors cannot cause.
pub fn first_fit<I>(forbidden: I, m: usize) -> Option<Color>
where
    I: IntoIterator<Item = Color>,
{
    let mut used = vec![false; m + 1];
    for c in forbidden {
        if let Some(slot) = used.get_mut(c as usize) {
            *slot = true;
        }
    }
    used.iter().position(|&u| !u).map(|c| c as Color)
}

/// Reusable forbidden-color scratch over `0..=m`. A generation stamp makes
/// clearing O(1) between vertices.
pub(crate) struct ForbiddenColors {
    marks: Vec<u32>,
    stamp: u32,
}

impl ForbiddenColors {
    pub(crate) fn new(max_degree: usize) -> Self {
        ForbiddenColors {
            marks: vec![0; max_degree + 1],
            stamp: 0,
        }
    }

    #[inline]
    pub(crate) fn clear(&mut self) {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.marks.fill(0);
            self.stamp = 1;
        }
    }

    #[inline]
    pub(crate) fn forbid(&mut self, c: Color) {
        if let Some(m) = self.marks.get_mut(c as usize) {
            *m = self.stamp;
        }
    }

    /// Least color not forbidden since the last `clear`.
    #[inline]
    pub(crate) fn first_fit(&self) -> Color {
        self.marks
            .iter()
            .position(|&m| m != self.stamp)
            .expect("palette exhausted: more forbidden colors than neighbors") as Color
    }
}

/// Color cells shared between worker threads.
///
/// Loads and stores are relaxed; cross-thread visibility comes from the
/// calling algorithm's barrier or lock hand-off.
pub(crate) struct SharedColors {
    cells: Vec<AtomicU32>,
}

impl SharedColors {
    pub(crate) fn new(n: usize) -> Self {
        SharedColors {
            cells: (0..n).map(|_| AtomicU32::new(UNSET)).collect(),
        }
    }

    #[inline]
    pub(crate) fn get(&self, v: usize) -> Color {
        self.cells[v].load(Ordering::Relaxed)
    }

    #[inline]
    pub(crate) fn set(&self, v: usize, c: Color) {
        self.cells[v].store(c, Ordering::Relaxed)
    }

    pub(crate) fn snapshot(&self) -> Vec<Color> {
        self.cells
            .iter()
            .map(|c| c.load(Ordering::Relaxed))
            .collect()
    }

    pub(crate) fn into_coloring(self, max_degree: usize) -> Coloring {
        let colors = self.cells.into_iter().map(AtomicU32::into_inner).collect();
        Coloring { colors, max_degree }
    }
}

/// First-fit in ascending id order.
pub fn sequential_color(g: &Graph) -> Coloring {
    let mut coloring = Coloring::new(g);
    let mut forbidden = ForbiddenColors::new(coloring.max_degree);
    for v in 0..g.vertex_count() {
        forbidden.clear();
        for &u in g.neighbors(v) {
            forbidden.forbid(coloring.colors[u as usize]);
        }
        coloring.colors[v] = forbidden.first_fit();
    }
    coloring
}

/// Lists every monochromatic edge. Fails on the first uncolored vertex.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<ConflictReport> {
    if c.len() != g.vertex_count() {
        return Err(Error::invalid(format!(
            "coloring has {} entries but the graph has {} vertices",
            c.len(),
            g.vertex_count()
        )));
    }
    if let Some(v) = c.colors.iter().position(|&x| x == UNSET) {
        return Err(Error::Incomplete(v));
    }
    let conflicts = g
        .edges()
        .filter(|&(u, v)| c.colors[u] == c.colors[v])
        .collect();
    Ok(ConflictReport { conflicts })
}

/// Number of distinct colors in use.
pub fn count_colors(c: &Coloring) -> usize {
    let mut seen = vec![false; c.palette_size()];
    for &x in &c.colors {
        if x != UNSET {
            seen[x as usize] = true;
        }
    }
    seen.into_iter().filter(|&s| s).count()
}

/// Writes `label color` lines ordered by original vertex id.
pub fn write_coloring<W: Write>(g: &Graph, c: &Coloring, mut out: W) -> Result<()> {
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_unstable_by_key(|&v| g.label(v));
    for v in order {
        let color = c.get(v).ok_or(Error::Incomplete(v))?;
        writeln!(out, "{} {}", g.label(v), color)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads the output of [`write_coloring`] back as `(label, color)` pairs.
pub fn parse_coloring<R: BufRead>(reader: R) -> Result<Vec<(u64, Color)>> {
    let mut entries = Vec::new();
    for (index, bytes) in reader.split(b'\n').enumerate() {
        let line = index + 1;
        let bytes = bytes?;
        let text = std::str::from_utf8(&bytes).map_err(|_| Error::parse(line, "invalid UTF-8"))?;
        let text = text.trim();
        if text.is_empty() {
            continue;
        }
        let mut fields = text.split_whitespace();
        let (Some(id), Some(color), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(line, "expected `vertex_id color`"));
        };
        let id = id
            .parse()
            .map_err(|_| Error::parse(line, format!("malformed vertex id {id:?}")))?;
        let color = color
            .parse::<Color>()
            .ok()
            .filter(|&c| c != UNSET)
            .ok_or_else(|| Error::parse(line, format!("malformed color {color:?}")))?;
        entries.push((id, color));
    }
    Ok(entries)
}
