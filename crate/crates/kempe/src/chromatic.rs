//! Exact k-colorability and chromatic number for small graphs.
//!
//! Strategy: greedy largest-degree-first coloring for an upper bound, a
//! greedy maximal clique for a lower bound, then descending-k feasibility
//! checks by backtracking over a degree-sorted vertex order with bitset
//! candidate pruning and first-use color symmetry breaking.

use crate::coloring::Coloring;
use crate::graph::{set_bits, Graph};

/// A proper coloring with at most `k` colors, or `None` if none exists.
pub fn is_k_colorable(g: &Graph, k: u8) -> Option<Coloring> {
    let n = g.n();
    if n == 0 {
        return Some(Coloring::new_unchecked(Vec::new(), k));
    }
    if k == 0 {
        return None;
    }

    // Color high-degree vertices first; map back to input labels at the end.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    // class_mask[c] = vertices already given color c+1.
    let mut class_mask = vec![0u64; k as usize];
    let mut assigned = vec![0u8; n];
    let mut choice = vec![0u8; n]; // last color tried at each depth
    let mut depth = 0usize;
    let mut max_used = 0u8;
    let mut used_at = vec![0u8; n + 1]; // max_used before each depth

    loop {
        let v = order[depth];
        // Try colors above the previous attempt, capped for symmetry: a
        // fresh color beyond max_used+1 is never needed.
        let limit = (used_at[depth] + 1).min(k);
        let mut placed = false;
        let mut c = choice[depth];
        while c < limit {
            c += 1;
            if class_mask[(c - 1) as usize] & g.neighbors(v) == 0 {
                choice[depth] = c;
                assigned[v] = c;
                class_mask[(c - 1) as usize] |= 1u64 << v;
                max_used = max_used.max(c);
                used_at[depth + 1] = max_used;
                placed = true;
                break;
            }
        }
        if placed {
            depth += 1;
            if depth == n {
                return Some(Coloring::new_unchecked(assigned, k));
            }
            choice[depth] = 0;
        } else {
            if depth == 0 {
                return None;
            }
            depth -= 1;
            let v = order[depth];
            class_mask[(assigned[v] - 1) as usize] &= !(1u64 << v);
            assigned[v] = 0;
            max_used = used_at[depth];
        }
    }
}

/// Greedy coloring in decreasing-degree order; an upper bound on chi.
fn greedy_upper_bound(g: &Graph) -> u8 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut color = vec![0u8; n];
    let mut best = 0u8;
    for &v in &order {
        let mut taken = 0u64;
        for u in set_bits(g.neighbors(v)) {
            if color[u] > 0 {
                taken |= 1u64 << (color[u] - 1);
            }
        }
        let c = (!taken).trailing_zeros() as u8 + 1;
        color[v] = c;
        best = best.max(c);
    }
    best
}

/// Greedy maximal clique grown from high-degree vertices; a lower bound
/// on chi.
fn clique_lower_bound(g: &Graph) -> u8 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut best = 0u8;
    for &start in order.iter().take(n.min(8)) {
        let mut clique = 1u8;
        let mut candidates = g.neighbors(start);
        while candidates != 0 {
            // Extend with the candidate of largest remaining degree.
            let v = set_bits(candidates)
                .max_by_key(|&v| ((g.neighbors(v) & candidates).count_ones(), !v))
                .unwrap();
            clique += 1;
            candidates &= g.neighbors(v);
        }
        best = best.max(clique);
    }
    best
}

/// Exact chromatic number; 0 for the empty-vertex graph.
pub fn chromatic_number(g: &Graph) -> u8 {
    if g.n() == 0 {
        return 0;
    }
    let upper = greedy_upper_bound(g);
    let lower = clique_lower_bound(g).max(1);
    let mut chi = upper;
    let mut k = upper.saturating_sub(1);
    while k >= lower {
        match is_k_colorable(g, k) {
            Some(_) => chi = k,
            None => break,
        }
        k -= 1;
    }
    chi
}
