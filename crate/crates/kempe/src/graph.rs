//! Small undirected simple graphs on at most 64 vertices.
//!
//! Each adjacency row is a single `u64` bitset, so neighborhood queries,
//! intersections, and component sweeps are word operations. Every target
//! instance in this toolkit has at most a couple dozen vertices; 64 leaves
//! headroom while keeping rows in one machine word.

use crate::error::{Error, Result};

/// Hard cap on the vertex count; an adjacency row must fit one word.
pub const MAX_VERTICES: usize = 64;

/// Iterate the set bits of a vertex mask in ascending order.
pub fn set_bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

/// Mask with bits `0..n` set.
#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An undirected simple graph with `n <= 64` vertices.
///
/// Invariants maintained by every constructor and operation:
/// adjacency is symmetric, irreflexive, and only bits below `n` are set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n > 64`.
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "graph order {n} exceeds {MAX_VERTICES}");
        Graph { n, adj: vec![0; n] }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        let all = low_mask(n);
        for v in 0..n {
            g.adj[v] = all & !(1u64 << v);
        }
        g
    }

    /// Cycle v0-v1-...-v(n-1)-v0. For n = 2 this is a single edge,
    /// for n < 2 it is edgeless.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Path v0-v1-...-v(n-1).
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Graph from an explicit edge list. Panics on loops or out-of-range
    /// endpoints; repeated edges are fine.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v, "bad edge ({u},{v})");
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbor bitset of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 != 0
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|row| row.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges as (u, v) pairs with u < v, in graph6 bit order
    /// ((0,1), (0,2), (1,2), (0,3), ...) sorted by the larger endpoint.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in 1..self.n {
            for u in set_bits(self.adj[v] & low_mask(v)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Edge complement: uv is an edge of the result iff u != v and uv is
    /// not an edge of `self`.
    pub fn complement(&self) -> Graph {
        let all = low_mask(self.n);
        let adj = (0..self.n)
            .map(|v| all & !self.adj[v] & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Induced subgraph after removing the vertices in `drop` (bits above
    /// `n` are ignored). Remaining vertices are renumbered in increasing
    /// order of their old indices.
    pub fn delete_vertices(&self, drop: u64) -> Graph {
        let drop = drop & low_mask(self.n);
        let keep: Vec<usize> = (0..self.n).filter(|v| drop >> v & 1 == 0).collect();
        let mut g = Graph::empty(keep.len());
        for (new_u, &old_u) in keep.iter().enumerate() {
            for (new_v, &old_v) in keep.iter().enumerate().skip(new_u + 1) {
                if self.has_edge(old_u, old_v) {
                    g.add_edge(new_u, new_v);
                }
            }
        }
        g
    }

    /// Disjoint union of `self` and `other` plus all edges between the two
    /// vertex sets. `self` keeps indices `0..n1`, `other` is shifted to
    /// `n1..n1+n2`. Errors when the union would exceed 64 vertices.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Input(format!(
                "join of orders {} and {} exceeds {MAX_VERTICES} vertices",
                self.n, other.n
            )));
        }
        let mut g = Graph::empty(n);
        let other_mask = low_mask(n) & !low_mask(self.n);
        for v in 0..self.n {
            g.adj[v] = self.adj[v] | other_mask;
        }
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n | low_mask(self.n);
        }
        Ok(g)
    }

    /// Categorical product of the complete graphs K_m and K_n: vertex
    /// (i, j) with 1-based coordinates sits at index (i-1)*n + (j-1), and
    /// (i1, j1) ~ (i2, j2) iff i1 != i2 and j1 != j2.
    pub fn categorical_product_complete(m: usize, n: usize) -> Result<Graph> {
        if m < 1 || n < 1 {
            return Err(Error::Input("product factors must be at least 1".into()));
        }
        if m.saturating_mul(n) > MAX_VERTICES {
            return Err(Error::Input(format!(
                "product order {}*{} exceeds {MAX_VERTICES} vertices",
                m, n
            )));
        }
        let mut g = Graph::empty(m * n);
        for i1 in 0..m {
            for j1 in 0..n {
                for i2 in (i1 + 1)..m {
                    for j2 in 0..n {
                        if j1 != j2 {
                            g.add_edge(i1 * n + j1, i2 * n + j2);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// True when the invariants hold (used by decoders and tests).
    pub fn check_invariants(&self) -> bool {
        let all = low_mask(self.n);
        for v in 0..self.n {
            if self.adj[v] & !all != 0 || self.adj[v] >> v & 1 != 0 {
                return false;
            }
            for u in set_bits(self.adj[v]) {
                if self.adj[u] >> v & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Vertices connected to `start` inside the vertex mask `within`
    /// (start must be in `within`). Pure bitset BFS.
    pub(crate) fn component_of(&self, start: usize, within: u64) -> u64 {
        debug_assert!(within >> start & 1 != 0);
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in set_bits(frontier) {
                next |= self.adj[v] & within & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Whether every vertex is reachable from vertex 0 (vacuously true for
    /// the empty graph).
    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0, low_mask(self.n)) == low_mask(self.n)
    }

    /// A deterministic bipartition if the graph is bipartite, else `None`.
    /// Components are rooted at their lowest-index vertex via BFS; the root
    /// (and with it every isolated vertex) lands on side S.
    pub fn bipartition_of(&self) -> Option<(u64, u64)> {
        let mut side_s = 0u64;
        let mut side_t = 0u64;
        let mut seen = 0u64;
        for root in 0..self.n {
            if seen >> root & 1 != 0 {
                continue;
            }
            side_s |= 1u64 << root;
            seen |= 1u64 << root;
            let mut frontier = 1u64 << root;
            let mut frontier_on_s = true;
            while frontier != 0 {
                let mut next = 0u64;
                for v in set_bits(frontier) {
                    next |= self.adj[v] & !seen;
                }
                seen |= next;
                if frontier_on_s {
                    side_t |= next;
                } else {
                    side_s |= next;
                }
                frontier = next;
                frontier_on_s = !frontier_on_s;
            }
        }
        // Proper bipartition iff no edge stays inside a side.
        for v in 0..self.n {
            let own_side = if side_s >> v & 1 != 0 { side_s } else { side_t };
            if self.adj[v] & own_side != 0 {
                return None;
            }
        }
        Some((side_s, side_t))
    }

    /// View this graph as a bipartite graph plus extra within-side edges,
    /// for an arbitrary side assignment (bit set in `side_s` = side S).
    pub fn view_as_almost_bipartite(&self, side_s: u64) -> AlmostBipartiteView {
        AlmostBipartiteView::new(self.clone(), side_s)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A graph together with a two-sided split of its vertices and the list of
/// edges that stay inside a side. Removing the extra edges always leaves a
/// bipartite graph with bipartition (S, T).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostBipartiteView {
    graph: Graph,
    side_s: u64,
    extra_edges: Vec<(usize, usize)>,
}

impl AlmostBipartiteView {
    pub fn new(graph: Graph, side_s: u64) -> AlmostBipartiteView {
        let side_s = side_s & low_mask(graph.n());
        let extra_edges = graph
            .edges()
            .into_iter()
            .filter(|&(u, v)| (side_s >> u & 1) == (side_s >> v & 1))
            .collect();
        AlmostBipartiteView {
            graph,
            side_s,
            extra_edges,
        }
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn side_s(&self) -> u64 {
        self.side_s
    }

    #[inline]
    pub fn side_t(&self) -> u64 {
        low_mask(self.graph.n()) & !self.side_s
    }

    #[inline]
    pub fn on_s(&self, v: usize) -> bool {
        self.side_s >> v & 1 != 0
    }

    /// The within-side edges, each listed once with u < v.
    pub fn extra_edges(&self) -> &[(usize, usize)] {
        &self.extra_edges
    }

    /// Number of within-side edges.
    #[inline]
    pub fn ell(&self) -> usize {
        self.extra_edges.len()
    }

    /// The graph with the within-side edges erased; always bipartite.
    pub fn cross_graph(&self) -> Graph {
        let n = self.graph.n();
        let mut g = Graph::empty(n);
        for v in 0..n {
            let other = if self.on_s(v) {
                self.side_t()
            } else {
                self.side_s
            };
            g.adj[v] = self.graph.adj[v] & other;
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involution_and_edge_counts_add_up() {
        for g in [
            Graph::complete(3),
            Graph::cycle(5),
            Graph::path(7),
            Graph::empty(4),
        ] {
            let n = g.n();
            let co = g.complement();
            assert!(co.check_invariants());
            assert_eq!(co.complement(), g);
            assert_eq!(g.edge_count() + co.edge_count(), n * (n - 1) / 2);
        }
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
    }

    #[test]
    fn product_of_cliques_matches_definition() {
        let g = Graph::categorical_product_complete(3, 4).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(g.edge_count(), 36);
        assert!((0..12).all(|v| g.degree(v) == 6));
        assert!(g.check_invariants());

        // One factor trivial: no pair of distinct first coordinates exists.
        let e = Graph::categorical_product_complete(1, 5).unwrap();
        assert_eq!(e.edge_count(), 0);
        assert_eq!(e.n(), 5);

        // K2 x K2 is a perfect matching.
        let m = Graph::categorical_product_complete(2, 2).unwrap();
        assert_eq!(m.n(), 4);
        assert_eq!(m.edges(), vec![(1, 2), (0, 3)]);

        assert!(Graph::categorical_product_complete(9, 8).is_err());
    }

    #[test]
    fn delete_vertices_compacts_indices() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.delete_vertices(1 << 2), Graph::complete(2));
        assert_eq!(k3.delete_vertices(0), k3);

        let h = Graph::categorical_product_complete(3, 4).unwrap();
        let pruned = h.delete_vertices(1 << 0 | 1 << 5 | 1 << 10);
        assert_eq!(pruned.n(), 9);
        assert_eq!(pruned.edge_count(), 21);
    }

    #[test]
    fn join_adds_all_cross_edges() {
        let a = Graph::empty(1);
        assert_eq!(a.join(&a).unwrap(), Graph::complete(2));

        let g = Graph::cycle(5);
        let joined = Graph::empty(1).join(&g).unwrap();
        assert_eq!(joined.degree(0), 5);
        assert!(joined.check_invariants());

        assert!(Graph::complete(40).join(&Graph::complete(30)).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(Graph::empty(0).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::cycle(6).is_connected());
        let mut two_parts = Graph::path(4);
        two_parts.add_edge(0, 2);
        assert!(two_parts.is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).is_connected());
    }

    #[test]
    fn bipartition_respects_tie_rules() {
        let (s, t) = Graph::cycle(6).bipartition_of().unwrap();
        assert_eq!(s, 0b010101);
        assert_eq!(t, 0b101010);

        assert!(Graph::complete(3).bipartition_of().is_none());

        // Isolated vertices all go to S.
        let (s, t) = Graph::empty(3).bipartition_of().unwrap();
        assert_eq!(s, 0b111);
        assert_eq!(t, 0);
    }

    #[test]
    fn almost_bipartite_view_counts_within_side_edges() {
        // K4 split 2/2 leaves one edge inside each side.
        let view = Graph::complete(4).view_as_almost_bipartite(0b0011);
        assert_eq!(view.ell(), 2);
        assert_eq!(view.extra_edges(), &[(0, 1), (2, 3)]);
        assert!(view.cross_graph().bipartition_of().is_some());

        // A bipartite graph viewed along its own bipartition has ell = 0.
        let g = Graph::cycle(8);
        let (s, _) = g.bipartition_of().unwrap();
        assert_eq!(g.view_as_almost_bipartite(s).ell(), 0);

        // ell equals edge count minus cross-side edges for any split.
        let g = Graph::cycle(5);
        for side in 0u64..32 {
            let view = g.view_as_almost_bipartite(side);
            assert_eq!(view.ell(), g.edge_count() - view.cross_graph().edge_count());
        }
    }
}
