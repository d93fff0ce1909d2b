//! The exact graphs, colorings, and closed-form quantities behind the
//! counterexample family.
//!
//! The family grows from a fixed 9-vertex core `hhat` with a frozen
//! 4-coloring: the categorical product K3 x K4 minus the three "diagonal"
//! vertices (1,1), (2,2), (3,3). Joining the core with a clique K_{k-4}
//! yields `gk`, a (k-1)-colorable graph on k+5 vertices whose k-coloring
//! space splits into at least two Kempe classes.
//!
//! Index layout (a documented convention; all checks are layout-free):
//! K3 x K4 puts vertex (i, j) at 4*(i-1) + (j-1). After deleting the
//! diagonal, `hhat`'s vertices 0..9 are (1,2), (1,3), (1,4), (2,1), (2,3),
//! (2,4), (3,1), (3,2), (3,4) in that order. In `gk`, `hhat` keeps indices
//! 0..9 and the clique occupies 9..k+5.

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::{low_mask, AlmostBipartiteView, Graph};

/// 1 if x is odd, 0 if x is even.
#[inline]
pub fn indicator_odd(x: u64) -> u64 {
    x % 2
}

/// f(x) = C(ceil(x/2), 2) + C(floor(x/2), 2): the most within-side pairs a
/// balanced split of x vertices can avoid crossing. Equals
/// (x^2 - 2x + odd(x)) / 4.
pub fn f_bound(x: u64) -> u64 {
    let value = choose2(x.div_ceil(2)) + choose2(x / 2);
    // x^2 - 2x + odd(x) is nonnegative, so reassociate to stay in u64.
    debug_assert_eq!(value, (x * x + indicator_odd(x) - 2 * x) / 4);
    value
}

/// Threshold of the revised conjecture: (k^2 + 8k - 45 + odd(k-1)) / 4.
/// For k >= 12 this equals the balanced within-side edge count of `gk`.
pub fn hm_revised_bound(k: u64) -> Result<u64> {
    if k < 4 {
        return Err(Error::Input(format!("revised bound needs k >= 4, got {k}")));
    }
    Ok((k * k + 8 * k - 45 + indicator_odd(k - 1)) / 4)
}

/// K3 x K4: 12 vertices, 36 edges, chromatic number 3.
pub fn build_k3xk4() -> Graph {
    Graph::categorical_product_complete(3, 4).expect("3*4 <= 64")
}

/// The 9-vertex, 21-edge core: K3 x K4 minus (1,1), (2,2), (3,3).
pub fn build_hhat() -> Graph {
    // Diagonal indices under the product layout: 0, 5, 10.
    build_k3xk4().delete_vertices(1 << 0 | 1 << 5 | 1 << 10)
}

/// The frozen 4-coloring of `hhat`: each vertex keeps its second product
/// coordinate. Class sizes are {2, 2, 2, 3}.
pub fn frozen_coloring_hhat() -> Coloring {
    // Second coordinates of (1,2) (1,3) (1,4) (2,1) (2,3) (2,4) (3,1)
    // (3,2) (3,4).
    Coloring::new(vec![2, 3, 4, 1, 3, 4, 1, 2, 4], 4).expect("colors in 1..=4")
}

/// The counterexample graph for budget k with both of its almost-bipartite
/// accountings and its frozen k-coloring.
#[derive(Clone, Debug)]
pub struct GkBundle {
    pub k: u8,
    /// Join of `hhat` (indices 0..9) and K_{k-4} (indices 9..k+5).
    pub graph: Graph,
    /// Sides of sizes 9 and k-4: the core versus the clique.
    pub naive_view: AlmostBipartiteView,
    /// Balanced sides ceil((k+5)/2) / floor((k+5)/2) with the whole core
    /// in the larger side; only defined for k >= 12.
    pub balanced_view: Option<AlmostBipartiteView>,
    /// Within-side edges of the naive split: C(k-4, 2) + 21.
    pub ell_naive: u64,
    /// Within-side edges of the balanced split, when it exists:
    /// (k^2 + 8k - 45 + odd(k-1)) / 4 = f(k+5) - 15.
    pub ell_balanced: Option<u64>,
    /// Frozen coloring using all k colors: the four core classes plus k-4
    /// singletons on the clique.
    pub frozen: Coloring,
}

/// Build the counterexample bundle for k >= 8.
pub fn build_gk(k: u8) -> Result<GkBundle> {
    if k < 8 {
        return Err(Error::Input(format!("gk requires k >= 8, got {k}")));
    }
    let k_usize = k as usize;
    if k_usize + 5 > crate::graph::MAX_VERTICES {
        return Err(Error::Input(format!(
            "gk has k+5 = {} vertices, exceeding {}",
            k_usize + 5,
            crate::graph::MAX_VERTICES
        )));
    }
    let hhat = build_hhat();
    let clique = Graph::complete(k_usize - 4);
    let graph = hhat.join(&clique)?;

    let core_mask = low_mask(9);
    let naive_view = graph.view_as_almost_bipartite(core_mask);
    let ell_naive = choose2(k as u64 - 4) + 21;
    debug_assert_eq!(naive_view.ell() as u64, ell_naive);

    let (balanced_view, ell_balanced) = if k >= 12 {
        let big = (k_usize + 5).div_ceil(2);
        // The core plus the lowest-index clique vertices fill the big side.
        let side = low_mask(big);
        let view = graph.view_as_almost_bipartite(side);
        let ell = view.ell() as u64;
        debug_assert_eq!(ell, f_bound(k as u64 + 5) - 15);
        (Some(view), Some(ell))
    } else {
        (None, None)
    };

    let mut colors = frozen_coloring_hhat().colors().to_vec();
    for t in 0..(k - 4) {
        colors.push(5 + t);
    }
    let frozen = Coloring::new(colors, k)?;

    Ok(GkBundle {
        k,
        graph,
        naive_view,
        balanced_view,
        ell_naive,
        ell_balanced,
        frozen,
    })
}

#[inline]
fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}
