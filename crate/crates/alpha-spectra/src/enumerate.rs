//! Deterministic enumeration of small digraph search spaces.

use crate::digraph::Digraph;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("digraph enumeration supports 1 <= n <= {max}, got {n}")]
    OrderOutOfRange { n: usize, max: usize },
}

pub const MAX_EXHAUSTIVE_ORDER: usize = 5;
pub const MAX_TREE_ORDER: usize = 7;

/// Number of labeled simple digraphs on `n` vertices: 2^(n(n-1)).
pub fn digraph_count(n: usize) -> u64 {
    1u64 << (n * (n - 1))
}

/// Streams all 2^(n(n-1)) labeled digraphs in increasing order of their
/// off-diagonal bit encoding. Supported for 1 <= n <= 5.
pub fn all_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>, EnumerateError> {
    if n == 0 || n > MAX_EXHAUSTIVE_ORDER {
        return Err(EnumerateError::OrderOutOfRange { n, max: MAX_EXHAUSTIVE_ORDER });
    }
    Ok((0..digraph_count(n)).map(move |code| Digraph::decode(n, code).expect("code in range")))
}

/// Decodes a Pruefer sequence over labels 0..n into the tree's edge list.
/// Every labeled tree on n vertices corresponds to exactly one sequence of
/// length n - 2.
pub fn prufer_to_edges(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    assert!(n >= 2);
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let mut last = (0..n).filter(|&u| degree[u] == 1);
    let u = last.next().expect("two vertices remain");
    let v = last.next().expect("two vertices remain");
    edges.push((u, v));
    edges
}

/// Streams every labeled oriented tree on `n` vertices: each of the
/// n^(n-2) labeled trees (via the Pruefer bijection) combined with each of
/// the 2^(n-1) orientations of its edges. Orientation mask bit k reverses
/// the k-th edge of the decoded edge list. Isomorphic digraphs appear once
/// per labeling. Supported for 2 <= n <= 7.
pub fn all_oriented_trees(n: usize) -> Result<impl Iterator<Item = Digraph>, EnumerateError> {
    if !(2..=MAX_TREE_ORDER).contains(&n) {
        return Err(EnumerateError::OrderOutOfRange { n, max: MAX_TREE_ORDER });
    }
    let tree_count = (n as u64).pow(n as u32 - 2);
    let mask_count = 1u64 << (n - 1);
    Ok((0..tree_count).flat_map(move |t| {
        // Digits of t in base n form the Pruefer sequence.
        let mut seq = vec![0usize; n - 2];
        let mut rest = t;
        for d in seq.iter_mut() {
            *d = (rest % n as u64) as usize;
            rest /= n as u64;
        }
        let edges = prufer_to_edges(n, &seq);
        (0..mask_count).map(move |mask| {
            let arcs: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| if (mask >> k) & 1 == 1 { (v, u) } else { (u, v) })
                .collect();
            Digraph::from_arcs(n, &arcs).expect("tree edges are loop-free and distinct")
        })
    }))
}

/// Total number of labeled oriented trees on `n` vertices.
pub fn oriented_tree_count(n: usize) -> u64 {
    (n as u64).pow(n as u32 - 2) * (1u64 << (n - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn digraph_stream_counts() {
        assert_eq!(all_digraphs(2).unwrap().count(), 4);
        assert_eq!(all_digraphs(3).unwrap().count(), 64);
        assert_eq!(all_digraphs(4).unwrap().count(), 4096);
        assert!(all_digraphs(0).is_err());
        assert!(all_digraphs(6).is_err());
    }

    #[test]
    fn digraph_stream_order_and_distinctness() {
        let all: Vec<_> = all_digraphs(3).unwrap().collect();
        assert!(all[0].classify_structure().is_discrete);
        assert_eq!(all.last().unwrap().arc_count(), 6);
        let codes: HashSet<u64> = all.iter().map(|g| g.encode()).collect();
        assert_eq!(codes.len(), 64);
        for (i, g) in all.iter().enumerate() {
            assert_eq!(g.encode(), i as u64);
        }
    }

    #[test]
    fn n2_stream_is_the_four_digraphs() {
        let all: Vec<_> = all_digraphs(2).unwrap().collect();
        assert_eq!(all[0].arc_count(), 0);
        assert!(all[1].arc(0, 1) && all[1].arc_count() == 1);
        assert!(all[2].arc(1, 0) && all[2].arc_count() == 1);
        assert_eq!(all[3].arc_count(), 2);
    }

    #[test]
    fn prufer_decodes_known_trees() {
        assert_eq!(prufer_to_edges(2, &[]), vec![(0, 1)]);
        // Sequence [c] on three vertices is the star centered at c.
        for c in 0..3 {
            let edges = prufer_to_edges(3, &[c]);
            assert!(edges.iter().all(|&(u, v)| u == c || v == c));
        }
        // A constant sequence yields a star on n vertices.
        let edges = prufer_to_edges(6, &[2, 2, 2, 2]);
        assert!(edges.iter().all(|&(u, v)| u == 2 || v == 2));
    }

    #[test]
    fn oriented_tree_counts() {
        assert_eq!(all_oriented_trees(2).unwrap().count(), 2);
        assert_eq!(all_oriented_trees(3).unwrap().count(), 12);
        assert_eq!(all_oriented_trees(4).unwrap().count(), 128);
        assert_eq!(oriented_tree_count(4), 128);
        assert!(all_oriented_trees(1).is_err());
        assert!(all_oriented_trees(8).is_err());
    }

    #[test]
    fn oriented_trees_are_trees_and_distinct() {
        let all: Vec<_> = all_oriented_trees(4).unwrap().collect();
        let mut seen = HashSet::new();
        for g in &all {
            assert!(g.classify_structure().is_oriented_tree);
            seen.insert(g.encode());
        }
        // (tree, mask) pairs map to distinct digraphs.
        assert_eq!(seen.len(), 128);
    }

    #[test]
    fn n2_oriented_trees_are_both_single_arcs() {
        let all: Vec<_> = all_oriented_trees(2).unwrap().collect();
        assert!(all[0].arc(0, 1));
        assert!(all[1].arc(1, 0));
    }
}
