//! Proper colorings and Kempe swaps.
//!
//! Colors are the names `1..=k`; a coloring may use fewer than k of them
//! and is still a point of the k-coloring space. Properness is relative to
//! a graph and checked, not stored.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{set_bits, Graph};

/// Largest color budget we ever work with (one bit per vertex mask and a
/// u8 per color keep everything word-sized).
pub const MAX_COLORS: u8 = 64;

/// A per-vertex color assignment with budget `k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u8>,
    k: u8,
}

impl Coloring {
    /// Validated constructor: every color must lie in `1..=k` and `k` in
    /// `0..=64`.
    pub fn new(colors: Vec<u8>, k: u8) -> Result<Coloring> {
        if k > MAX_COLORS {
            return Err(Error::Input(format!(
                "color budget {k} exceeds the supported maximum of {MAX_COLORS}"
            )));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|&(_, &c)| c < 1 || c > k) {
            return Err(Error::Input(format!(
                "vertex {v} has color {c}, outside 1..={k}"
            )));
        }
        Ok(Coloring { colors, k })
    }

    /// Constructor for colors already known to be in range.
    pub(crate) fn new_unchecked(colors: Vec<u8>, k: u8) -> Coloring {
        debug_assert!(colors.iter().all(|&c| c >= 1 && c <= k));
        Coloring { colors, k }
    }

    #[inline]
    pub fn k(&self) -> u8 {
        self.k
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    #[inline]
    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    /// Bitmask over colors (bit c-1 set iff color c appears).
    pub fn used_colors(&self) -> u64 {
        let mut used = 0u64;
        for &c in &self.colors {
            used |= 1u64 << (c - 1);
        }
        used
    }

    pub fn used_color_count(&self) -> u32 {
        self.used_colors().count_ones()
    }

    /// Vertices carrying color `c`.
    pub fn class_mask(&self, c: u8) -> u64 {
        let mut mask = 0u64;
        for (v, &cv) in self.colors.iter().enumerate() {
            if cv == c {
                mask |= 1u64 << v;
            }
        }
        mask
    }

    /// Relabel colors by first occurrence along the vertex order, so the
    /// result is the unique representative of this coloring's orbit under
    /// color permutations. Idempotent; two colorings have equal canonical
    /// forms iff they induce the same partition into color classes.
    pub fn canonical(&self) -> Coloring {
        let mut rename = [0u8; 256];
        let mut next = 0u8;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if rename[c as usize] == 0 {
                    next += 1;
                    rename[c as usize] = next;
                }
                rename[c as usize]
            })
            .collect();
        Coloring { colors, k: self.k }
    }

    /// Same partition of vertices into color classes, ignoring color names.
    pub fn same_partition(&self, other: &Coloring) -> bool {
        self.canonical().colors == other.canonical().colors
    }
}

impl std::fmt::Debug for Coloring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coloring(k={}, {:?})", self.k, self.colors)
    }
}

/// One Kempe swap: exchange colors `i` and `j` on the connected component
/// (in the subgraph induced by the vertices colored i or j) that contains
/// `anchor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempeMove {
    pub i: u8,
    pub j: u8,
    pub anchor: usize,
}

/// True iff no edge of `g` is monochromatic under `c`.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.n() {
        return Err(Error::Input(format!(
            "coloring has {} entries for a graph of order {}",
            c.len(),
            g.n()
        )));
    }
    for v in 0..g.n() {
        if g.neighbors(v) & c.class_mask(c.color(v)) != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Connected components of the subgraph induced by the vertices colored
/// `i` or `j`, listed by smallest contained vertex index. Each component
/// is returned as a vertex mask.
pub fn kempe_components(g: &Graph, c: &Coloring, i: u8, j: u8) -> Result<Vec<u64>> {
    if i == j {
        return Err(Error::Input(format!("kempe component colors equal ({i})")));
    }
    let within = c.class_mask(i) | c.class_mask(j);
    let mut out = Vec::new();
    let mut seen = 0u64;
    for v in set_bits(within) {
        if seen >> v & 1 == 0 {
            let comp = g.component_of(v, within);
            seen |= comp;
            out.push(comp);
        }
    }
    Ok(out)
}

/// Apply one Kempe swap, returning the new coloring. The anchor must carry
/// one of the two colors; the result of a swap on a proper coloring is
/// proper again (checked by a debug assertion on every application).
pub fn apply_swap(g: &Graph, c: &Coloring, m: &KempeMove) -> Result<Coloring> {
    if m.i == m.j || m.i < 1 || m.j < 1 || m.i > c.k() || m.j > c.k() {
        return Err(Error::Input(format!(
            "swap colors ({}, {}) invalid for budget {}",
            m.i,
            m.j,
            c.k()
        )));
    }
    if m.anchor >= g.n() || c.len() != g.n() {
        return Err(Error::Input(format!(
            "swap anchor {} out of range for order {}",
            m.anchor,
            g.n()
        )));
    }
    let anchor_color = c.color(m.anchor);
    if anchor_color != m.i && anchor_color != m.j {
        return Err(Error::Input(format!(
            "swap anchor {} has color {anchor_color}, not {} or {}",
            m.anchor, m.i, m.j
        )));
    }
    let within = c.class_mask(m.i) | c.class_mask(m.j);
    let comp = g.component_of(m.anchor, within);
    let mut colors = c.colors.clone();
    for v in set_bits(comp) {
        colors[v] = if colors[v] == m.i { m.j } else { m.i };
    }
    let swapped = Coloring { colors, k: c.k() };
    debug_assert!(
        is_proper(g, &swapped).unwrap(),
        "kempe swap broke properness"
    );
    Ok(swapped)
}

/// All distinct colorings reachable from `c` by exactly one Kempe swap,
/// over all color pairs i < j (unused colors included) and all components.
pub fn neighbors(g: &Graph, c: &Coloring) -> Vec<Coloring> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 1..=c.k() {
        let class_i = c.class_mask(i);
        for j in (i + 1)..=c.k() {
            let within = class_i | c.class_mask(j);
            let mut visited = 0u64;
            for v in set_bits(within) {
                if visited >> v & 1 != 0 {
                    continue;
                }
                let comp = g.component_of(v, within);
                visited |= comp;
                let mut colors = c.colors.clone();
                for u in set_bits(comp) {
                    colors[u] = if colors[u] == i { j } else { i };
                }
                let swapped = Coloring { colors, k: c.k() };
                if seen.insert(swapped.colors.clone()) {
                    out.push(swapped);
                }
            }
        }
    }
    out
}

/// Partition-frozen test: every Kempe swap yields a coloring with the
/// identical partition of vertices into color classes. Operationally this
/// holds iff (a) the induced subgraph of every pair of used colors is
/// connected, and (b) when some color in 1..=k is unused, every used class
/// is a singleton.
pub fn is_frozen(g: &Graph, c: &Coloring, k: u8) -> bool {
    debug_assert_eq!(c.len(), g.n());
    debug_assert!(k <= MAX_COLORS);
    let used = c.used_colors();
    debug_assert_eq!(
        used & !crate::graph::low_mask(k as usize),
        0,
        "coloring uses colors beyond budget {k}"
    );
    let all_used = used == crate::graph::low_mask(k as usize);
    if !all_used {
        for color in set_bits(used) {
            if c.class_mask(color as u8 + 1).count_ones() > 1 {
                return false;
            }
        }
    }
    let used_list: Vec<u8> = set_bits(used).map(|b| b as u8 + 1).collect();
    for (idx, &i) in used_list.iter().enumerate() {
        for &j in &used_list[idx + 1..] {
            let within = c.class_mask(i) | c.class_mask(j);
            if let Some(v) = set_bits(within).next() {
                if g.component_of(v, within) != within {
                    return false;
                }
            }
        }
    }
    true
}
