//! Constructive color confinement and merging on almost-bipartite views.
//!
//! Given a view (S, T) of a graph with `ell` within-side edges and a proper
//! coloring, these operations realize the recoloring procedure that proves
//! every k-coloring with `ell < f_bound(k)` is k-equivalent to a coloring
//! with at most k-1 colors: repeatedly confine color pairs without
//! within-side conflicts to opposite sides, then merge a mergeable pair by
//! singleton swaps. Every step is returned as an explicit, replayable list
//! of Kempe moves.

use crate::coloring::{apply_swap, is_proper, Coloring, KempeMove};
use crate::constructions::f_bound;
use crate::error::{Error, Result};
use crate::graph::{set_bits, AlmostBipartiteView};

/// True iff some extra (within-side) edge has endpoint colors {i, j}.
fn has_extra_edge_colored(view: &AlmostBipartiteView, c: &Coloring, i: u8, j: u8) -> bool {
    view.extra_edges().iter().any(|&(u, v)| {
        let (cu, cv) = (c.color(u), c.color(v));
        (cu == i && cv == j) || (cu == j && cv == i)
    })
}

/// Confine colors `i` and `j` to opposite sides: after the returned swaps,
/// color i appears only on S and color j only on T. Requires that no
/// within-side edge carries the colors {i, j}. Each connected component of
/// the (i, j)-subgraph is uniformly oriented, so one swap per bad
/// component suffices; components are processed smallest anchor first.
pub fn confine_pair(
    view: &AlmostBipartiteView,
    c: &Coloring,
    i: u8,
    j: u8,
) -> Result<(Coloring, Vec<KempeMove>)> {
    let g = view.graph();
    if i == j {
        return Err(Error::Input(format!("confine colors equal ({i})")));
    }
    if !is_proper(g, c)? {
        return Err(Error::Input("confine requires a proper coloring".into()));
    }
    if has_extra_edge_colored(view, c, i, j) {
        return Err(Error::Input(format!(
            "colors {i},{j} appear on a within-side edge; confinement is blocked"
        )));
    }

    let within = c.class_mask(i) | c.class_mask(j);
    let mut current = c.clone();
    let mut moves = Vec::new();
    let mut seen = 0u64;
    for v in set_bits(within) {
        if seen >> v & 1 != 0 {
            continue;
        }
        let comp = g.component_of(v, within);
        seen |= comp;
        let bad = set_bits(comp).any(|u| {
            let on_s = view.on_s(u);
            let color = current.color(u);
            (on_s && color == j) || (!on_s && color == i)
        });
        if bad {
            let anchor = set_bits(comp).next().unwrap();
            let mv = KempeMove { i, j, anchor };
            current = apply_swap(g, &current, &mv)?;
            moves.push(mv);
        }
    }

    debug_assert!(set_bits(current.class_mask(i)).all(|v| view.on_s(v)));
    debug_assert!(set_bits(current.class_mask(j)).all(|v| !view.on_s(v)));
    Ok((current, moves))
}

/// Whether colors i and j both appear, only on one common side, with no
/// within-side edge colored {i, j}.
fn is_mergeable(view: &AlmostBipartiteView, c: &Coloring, i: u8, j: u8) -> bool {
    let class_i = c.class_mask(i);
    let class_j = c.class_mask(j);
    if class_i == 0 || class_j == 0 {
        return false;
    }
    let both = class_i | class_j;
    let on_one_side = both & view.side_t() == 0 || both & view.side_s() == 0;
    on_one_side && !has_extra_edge_colored(view, c, i, j)
}

/// The lexicographically smallest mergeable pair of used colors, if any.
pub fn find_mergeable_pair(view: &AlmostBipartiteView, c: &Coloring, k: u8) -> Option<(u8, u8)> {
    for i in 1..=k {
        for j in (i + 1)..=k {
            if is_mergeable(view, c, i, j) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Merge color `i` into color `j`: every vertex colored i is recolored j
/// by a singleton-component Kempe swap. Mergeability guarantees each
/// i-vertex is isolated in the (i, j)-subgraph, so the swaps stay
/// singletons throughout. The result is proper and uses one fewer color.
pub fn merge_pair(
    view: &AlmostBipartiteView,
    c: &Coloring,
    i: u8,
    j: u8,
) -> Result<(Coloring, Vec<KempeMove>)> {
    let g = view.graph();
    if !is_proper(g, c)? {
        return Err(Error::Input("merge requires a proper coloring".into()));
    }
    if c.class_mask(i) == 0 {
        return Ok((c.clone(), Vec::new()));
    }
    if !is_mergeable(view, c, i, j) {
        return Err(Error::Input(format!("colors {i},{j} are not mergeable")));
    }
    let mut current = c.clone();
    let mut moves = Vec::new();
    for anchor in set_bits(c.class_mask(i)) {
        let mv = KempeMove { i, j, anchor };
        // The anchor has no neighbor colored i (properness) or j
        // (mergeability), so the swap recolors exactly this vertex.
        debug_assert_eq!(
            g.component_of(anchor, current.class_mask(i) | current.class_mask(j))
                & !(1u64 << anchor),
            0
        );
        current = apply_swap(g, &current, &mv)?;
        moves.push(mv);
    }
    debug_assert_eq!(current.class_mask(i), 0);
    Ok((current, moves))
}

/// Number of colors that appear on at most one side; the progress measure
/// of the confinement loop.
fn confined_color_count(view: &AlmostBipartiteView, c: &Coloring, k: u8) -> u32 {
    (1..=k)
        .filter(|&color| {
            let mask = c.class_mask(color);
            mask & view.side_s() == 0 || mask & view.side_t() == 0
        })
        .count() as u32
}

/// Reduce a proper coloring that uses exactly k colors to a k-equivalent
/// coloring using at most k-1 colors, provided `ell < f_bound(k)`.
/// Colorings already using fewer than k colors are returned unchanged.
///
/// The loop confines pairs (scanned in lexicographic order) until every
/// pair without a within-side conflict has both colors on single sides,
/// then merges a mergeable pair. The confined-color count must strictly
/// increase each round and a mergeable pair must exist at the end; either
/// failing is an internal invariant violation, surfaced loudly.
pub fn reduce_to_fewer_colors(
    view: &AlmostBipartiteView,
    c: &Coloring,
    k: u8,
) -> Result<(Coloring, Vec<KempeMove>)> {
    let g = view.graph();
    if !is_proper(g, c)? {
        return Err(Error::Input("reduce requires a proper coloring".into()));
    }
    if (view.ell() as u64) >= f_bound(k as u64) {
        return Err(Error::Input(format!(
            "view has ell = {} but the procedure requires ell < {}",
            view.ell(),
            f_bound(k as u64)
        )));
    }
    if c.used_color_count() < k as u32 {
        return Ok((c.clone(), Vec::new()));
    }

    let mut current = c.clone();
    let mut moves = Vec::new();
    loop {
        // A pair qualifies when it has no within-side {i, j} edge but one
        // of its colors still appears on both sides.
        let mut target = None;
        'scan: for i in 1..=k {
            for j in (i + 1)..=k {
                if has_extra_edge_colored(view, &current, i, j) {
                    continue;
                }
                let spread = |color: u8| {
                    let mask = current.class_mask(color);
                    mask & view.side_s() != 0 && mask & view.side_t() != 0
                };
                if spread(i) || spread(j) {
                    target = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((i, j)) = target else { break };
        let before = confined_color_count(view, &current, k);
        let (next, mut step_moves) = confine_pair(view, &current, i, j)?;
        current = next;
        moves.append(&mut step_moves);
        let after = confined_color_count(view, &current, k);
        if after <= before {
            return Err(Error::Invariant(format!(
                "confinement round for colors {i},{j} did not increase the \
                 confined-color measure ({before} -> {after})"
            )));
        }
        // Swapping an all-i component to j can empty class i entirely, in
        // which case the coloring already uses fewer than k colors.
        if current.used_color_count() < k as u32 {
            return Ok((current, moves));
        }
    }

    let Some((i, j)) = find_mergeable_pair(view, &current, k) else {
        return Err(Error::Invariant(format!(
            "no mergeable pair exists although ell = {} < f({k}) = {}",
            view.ell(),
            f_bound(k as u64)
        )));
    };
    let (merged, mut merge_moves) = merge_pair(view, &current, i, j)?;
    current = merged;
    moves.append(&mut merge_moves);

    if current.used_color_count() >= k as u32 {
        return Err(Error::Invariant(
            "merge did not reduce the number of used colors".into(),
        ));
    }
    Ok((current, moves))
}
