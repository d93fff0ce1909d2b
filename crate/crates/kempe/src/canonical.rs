//! Canonical labeling and nonisomorphic enumeration of very small graphs.
//!
//! This exists so the harness can produce its own canonical graph6 streams
//! (one graph per isomorphism class) when no standard generator is at
//! hand, and so tests can compare graphs up to isomorphism. The canonical
//! form is the lexicographically smallest upper-triangle bit string over
//! all vertex orderings, found by backtracking with prefix pruning; fine
//! for the orders (<= 10) this toolkit works at, and no further.

use crate::error::{Error, Result};
use crate::graph::{set_bits, Graph};

/// Number of isomorphism classes of simple graphs on 0..=8 vertices; used
/// to cross-check generated and externally supplied canonical streams.
pub const GRAPH_COUNTS: [u64; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

/// The canonical upper-triangle bit string of `g` (graph6 bit order),
/// minimal over all vertex relabelings. Equal strings <=> isomorphic.
pub fn canonical_key(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut best: Option<Vec<u8>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u64;
    let mut bits: Vec<u8> = Vec::with_capacity(nbits);

    // Depth-first over partial orderings. `bits` holds the triangle bits
    // contributed by the placed prefix; a partial ordering is abandoned as
    // soon as its bits exceed the best known prefix.
    fn descend(
        g: &Graph,
        perm: &mut Vec<usize>,
        used: &mut u64,
        bits: &mut Vec<u8>,
        best: &mut Option<Vec<u8>>,
    ) {
        let n = g.n();
        let placed = perm.len();
        if placed == n {
            match best {
                Some(b) if bits.as_slice() >= b.as_slice() => {}
                _ => *best = Some(bits.clone()),
            }
            return;
        }
        for v in 0..n {
            if *used >> v & 1 != 0 {
                continue;
            }
            let start = bits.len();
            for &u in perm.iter() {
                bits.push(g.has_edge(u, v) as u8);
            }
            let acceptable = match best {
                None => true,
                Some(b) => bits.as_slice() <= &b[..bits.len()],
            };
            if acceptable {
                perm.push(v);
                *used |= 1 << v;
                descend(g, perm, used, bits, best);
                perm.pop();
                *used &= !(1 << v);
            }
            bits.truncate(start);
        }
    }

    descend(g, &mut perm, &mut used, &mut bits, &mut best);
    best.unwrap_or_default()
}

/// Relabel `g` into its canonical form.
pub fn canonical_form(g: &Graph) -> Graph {
    let key = canonical_key(g);
    let n = g.n();
    let mut out = Graph::empty(n);
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if key[bit] != 0 {
                out.add_edge(u, v);
            }
            bit += 1;
        }
    }
    out
}

pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && canonical_key(a) == canonical_key(b)
}

/// All nonisomorphic graphs on exactly `n` vertices (n <= 10), one
/// canonical representative each, sorted by their graph6 encoding. Grown
/// level by level: every n-graph is some (n-1)-graph plus one vertex with
/// an arbitrary neighborhood, deduplicated canonically.
pub fn generate_nonisomorphic(n: usize) -> Result<Vec<Graph>> {
    generate_nonisomorphic_filtered(n, |_| true)
}

/// As `generate_nonisomorphic`, but prune with `keep` at every level.
/// `keep` must be inherited by induced subgraphs (deleting a vertex of a
/// kept graph stays keepable), or classes will be missed.
pub fn generate_nonisomorphic_filtered(
    n: usize,
    keep: impl Fn(&Graph) -> bool,
) -> Result<Vec<Graph>> {
    if n > 10 {
        return Err(Error::Input(format!(
            "canonical generation at order {n} would be too slow; cap is 10"
        )));
    }
    let mut level: Vec<Graph> = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for parent in &level {
            for mask in 0..1u64 << (size - 1) {
                // The parent keeps vertices 0..size-1; the new vertex
                // size-1 gets neighborhood `mask`.
                let mut g = Graph::empty(size);
                for (u, v) in parent.edges() {
                    g.add_edge(u, v);
                }
                for u in set_bits(mask) {
                    g.add_edge(u, size - 1);
                }
                let canon = canonical_form(&g);
                if keep(&canon) && seen.insert(crate::graph6::encode(&canon)) {
                    next.push(canon);
                }
            }
        }
        level = next;
    }
    let mut keys: Vec<(String, Graph)> = level
        .into_iter()
        .map(|g| (crate::graph6::encode(&g), g))
        .collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keys.into_iter().map(|(_, g)| g).collect())
}

/// True iff the graph is bipartite; inherited by induced subgraphs, so it
/// is a valid generation filter.
pub fn bipartite_filter(g: &Graph) -> bool {
    g.bipartition_of().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_key_is_isomorphism_invariant() {
        // C5 is self-complementary.
        let c5 = Graph::cycle(5);
        assert!(isomorphic(&c5, &c5.complement()));

        // Two labelings of the same path.
        let a = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]);
        assert!(isomorphic(&a, &b));
        assert!(!isomorphic(&a, &Graph::cycle(4)));

        // Canonical form is idempotent.
        let canon = canonical_form(&a);
        assert_eq!(canonical_form(&canon), canon);
    }

    #[test]
    fn level_counts_match_known_values() {
        for (n, &expected) in GRAPH_COUNTS.iter().enumerate().take(7) {
            let graphs = generate_nonisomorphic(n).unwrap();
            assert_eq!(graphs.len() as u64, expected, "n = {n}");
            // all distinct and canonical
            for g in &graphs {
                assert_eq!(&canonical_form(g), g);
            }
        }
    }

    #[test]
    fn bipartite_counts_match_known_values() {
        // Isomorphism classes of bipartite graphs on n vertices.
        let per_order = [1u64, 1, 2, 3, 7, 13, 35, 88];
        for (n, &expected) in per_order.iter().enumerate() {
            let graphs = generate_nonisomorphic_filtered(n, bipartite_filter).unwrap();
            assert_eq!(graphs.len() as u64, expected, "n = {n}");
        }
    }

    #[test]
    fn generation_cap() {
        assert!(generate_nonisomorphic(11).is_err());
    }
}
