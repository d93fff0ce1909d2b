//! Kempe equivalence classes of the labeled k-coloring space.
//!
//! Kc(G, k) is computed over labeled colorings: colors are the names
//! 1..=k and colorings that use fewer than k colors are included. The
//! traversal is an iterative flood fill with an explicit frontier over the
//! one-swap neighborhood, with a visited set keyed by colorings packed at
//! ceil(log2 k) bits per vertex. The `cap` bounds the number of distinct
//! colorings touched; exceeding it is a reported resource error, never a
//! wrong answer.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{neighbors, Coloring};
use crate::enumerate::enumerate_colorings;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on the number of colorings touched per instance.
pub const DEFAULT_CAP: u64 = 50_000_000;

/// Result of a full Kempe-class enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KcReport {
    /// Number of Kempe equivalence classes.
    pub kc: u64,
    /// Distinct proper colorings per class, in first-seen order.
    pub class_sizes: Vec<u64>,
    /// First coloring of each class in enumeration order.
    pub representatives: Vec<Coloring>,
    /// Flag per class: all members share one partition into color classes.
    pub frozen_classes: Vec<bool>,
    /// Total proper colorings enumerated; equals the sum of class sizes.
    pub total_colorings: u64,
}

impl KcReport {
    pub fn frozen_class_count(&self) -> u64 {
        self.frozen_classes.iter().filter(|&&f| f).count() as u64
    }
}

/// Visited-set key: a coloring packed into fixed-width color words.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Packed(u128),
    Wide(Box<[u8]>),
}

struct Packer {
    bits: u32,
    packable: bool,
}

impl Packer {
    fn new(n: usize, k: u8) -> Packer {
        let bits = 8 - (k.max(2) - 1).leading_zeros(); // ceil(log2 k), min 1
        Packer {
            bits,
            packable: bits as usize * n <= 128,
        }
    }

    fn key(&self, c: &Coloring) -> Key {
        if self.packable {
            let mut word = 0u128;
            for &color in c.colors() {
                word = word << self.bits | (color - 1) as u128;
            }
            Key::Packed(word)
        } else {
            Key::Wide(c.colors().to_vec().into_boxed_slice())
        }
    }
}

/// Partition all proper k-colorings of `g` into Kempe equivalence classes.
pub fn kempe_classes(g: &Graph, k: u8, cap: u64) -> Result<KcReport> {
    if k > crate::coloring::MAX_COLORS {
        return Err(Error::Input(format!(
            "color budget {k} exceeds the supported maximum of {}",
            crate::coloring::MAX_COLORS
        )));
    }
    let packer = Packer::new(g.n(), k);
    let mut visited: HashSet<Key> = HashSet::new();
    let mut class_sizes = Vec::new();
    let mut representatives = Vec::new();
    let mut frozen_classes = Vec::new();

    for seed in enumerate_colorings(g, k, cap) {
        let seed = seed?;
        if !visited.insert(packer.key(&seed)) {
            continue;
        }
        let seed_partition = seed.canonical();
        let mut frozen = true;
        let mut size = 0u64;
        let mut frontier = vec![seed.clone()];
        while let Some(current) = frontier.pop() {
            size += 1;
            if frozen && current.canonical() != seed_partition {
                frozen = false;
            }
            for nb in neighbors(g, &current) {
                if visited.insert(packer.key(&nb)) {
                    if visited.len() as u64 > cap {
                        return Err(Error::CapExceeded { visited: cap, cap });
                    }
                    frontier.push(nb);
                }
            }
        }
        class_sizes.push(size);
        representatives.push(seed);
        frozen_classes.push(frozen);
    }

    let total_colorings = visited.len() as u64;
    if class_sizes.iter().sum::<u64>() != total_colorings {
        return Err(Error::Invariant(
            "class sizes do not sum to the number of colorings".into(),
        ));
    }
    Ok(KcReport {
        kc: class_sizes.len() as u64,
        class_sizes,
        representatives,
        frozen_classes,
        total_colorings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;

    /// Independent class-count oracle: brute-force the proper colorings by
    /// filtering all k^n assignments, then union-find over single swaps
    /// computed by the union-find neighbor oracle.
    pub(crate) fn kc_brute(g: &Graph, k: u8) -> (u64, u64) {
        let n = g.n();
        let mut all: Vec<Vec<u8>> = Vec::new();
        if n == 0 {
            all.push(Vec::new());
        } else {
            let mut colors = vec![1u8; n];
            if k >= 1 {
                loop {
                    let c = Coloring::new(colors.clone(), k).unwrap();
                    if is_proper(g, &c).unwrap() {
                        all.push(colors.clone());
                    }
                    let mut pos = 0;
                    while pos < n && colors[pos] == k {
                        colors[pos] = 1;
                        pos += 1;
                    }
                    if pos == n {
                        break;
                    }
                    colors[pos] += 1;
                }
            }
        }
        let index: std::collections::HashMap<&Vec<u8>, usize> =
            all.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut parent: Vec<usize> = (0..all.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for (i, colors) in all.iter().enumerate() {
            let c = Coloring::new(colors.clone(), k).unwrap();
            for nb in crate::coloring::test_support::neighbors_oracle(g, &c) {
                let j = index[&nb];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
        let roots: std::collections::HashSet<usize> =
            (0..all.len()).map(|i| find(&mut parent, i)).collect();
        (roots.len() as u64, all.len() as u64)
    }

    #[test]
    fn small_exact_cases() {
        // All 24 colorings of K4 with k = 4 are connected by swaps.
        let report = kempe_classes(&Graph::complete(4), 4, 1 << 20).unwrap();
        assert_eq!(report.kc, 1);
        assert_eq!(report.total_colorings, 24);

        // Bipartite graphs have one class.
        for (g, k) in [
            (Graph::cycle(6), 2u8),
            (Graph::cycle(6), 3),
            (Graph::path(5), 3),
            (Graph::empty(4), 3),
        ] {
            let report = kempe_classes(&g, k, 1 << 22).unwrap();
            assert_eq!(report.kc, 1, "bipartite law for {g:?} k={k}");
        }

        // K2 with k = 2: two colorings, one class.
        let report = kempe_classes(&Graph::complete(2), 2, 100).unwrap();
        assert_eq!((report.kc, report.total_colorings), (1, 2));

        // Degenerate inputs.
        let report = kempe_classes(&Graph::empty(0), 3, 100).unwrap();
        assert_eq!((report.kc, report.total_colorings), (1, 1));
        let report = kempe_classes(&Graph::complete(3), 2, 100).unwrap();
        assert_eq!((report.kc, report.total_colorings), (0, 0));
    }

    #[test]
    fn agrees_with_union_find_oracle() {
        for (g, k) in [
            (Graph::cycle(5), 3u8),
            (Graph::cycle(5), 4),
            (Graph::cycle(4), 3),
            (Graph::complete(4), 4),
            (Graph::path(4), 3),
            (
                Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]),
                3,
            ),
        ] {
            let report = kempe_classes(&g, k, 1 << 22).unwrap();
            let (kc, total) = kc_brute(&g, k);
            assert_eq!(report.kc, kc, "{g:?} k={k}");
            assert_eq!(report.total_colorings, total, "{g:?} k={k}");
            assert_eq!(report.class_sizes.iter().sum::<u64>(), total);
        }
    }

    #[test]
    fn global_color_transpositions_stay_in_class() {
        // Swapping every (i, j)-component in sequence realizes the global
        // transposition, so the permuted coloring is k-equivalent.
        let g = Graph::cycle(5);
        let report = kempe_classes(&g, 3, 1 << 20).unwrap();
        for rep in &report.representatives {
            let permuted: Vec<u8> = rep
                .colors()
                .iter()
                .map(|&c| match c {
                    1 => 2,
                    2 => 1,
                    other => other,
                })
                .collect();
            let mut current = rep.clone();
            let comps = crate::coloring::kempe_components(&g, &current, 1, 2).unwrap();
            for comp in comps {
                let anchor = crate::graph::set_bits(comp).next().unwrap();
                current = crate::coloring::apply_swap(
                    &g,
                    &current,
                    &crate::coloring::KempeMove { i: 1, j: 2, anchor },
                )
                .unwrap();
            }
            assert_eq!(current.colors(), permuted.as_slice());
        }
    }

    #[test]
    fn cap_is_a_resource_error() {
        let err = kempe_classes(&Graph::empty(6), 3, 50).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 50, .. }));
    }

    #[test]
    fn packer_handles_degenerate_budgets() {
        let p = Packer::new(4, 1);
        let c = Coloring::new(vec![1, 1, 1, 1], 1).unwrap();
        assert!(matches!(p.key(&c), Key::Packed(0b0000)));
        let p = Packer::new(64, 16);
        assert!(!p.packable || p.bits == 4);
    }
}
