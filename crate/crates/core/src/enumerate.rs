//! Exhaustive enumeration of height-(0,0)/(0,1) signed posets via their
//! labeled relation graphs.

use crate::graph::RelationGraph;
use crate::poset::{Family, SignedPoset};

/// Slots of the canonical bitmask: vertex pairs `(i, j)` in lexicographic
/// order, with `i ≤ j` in type C (diagonal pairs are self-loops) and `i < j`
/// in types B and D.
pub fn slots(family: Family, n: usize) -> Vec<(i64, i64)> {
    let n = n as i64;
    let loops = family == Family::C;
    (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| loops || i != j)
        .collect()
}

pub fn graph_from_mask(family: Family, n: usize, mask: u64) -> RelationGraph {
    let mut g = RelationGraph::new(n);
    for (k, &(i, j)) in slots(family, n).iter().enumerate() {
        if mask >> k & 1 == 1 {
            g.add_edge(i, j);
        }
    }
    g
}

pub fn mask_of_graph(family: Family, g: &RelationGraph) -> u64 {
    slots(family, g.vertices.len())
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| g.has_edge(i, j))
        .fold(0u64, |acc, (k, _)| acc | 1 << k)
}

pub fn poset_from_mask(family: Family, n: usize, mask: u64) -> SignedPoset {
    graph_from_mask(family, n, mask)
        .to_poset(family)
        .expect("every labeled graph encodes a valid height-(0,1) poset")
}

pub fn corpus_size(family: Family, n: usize) -> u64 {
    1u64 << slots(family, n).len()
}

/// Every height-(0,0)/(0,1) poset of the family on `±{1..n}`, one per
/// labeled graph, in increasing bitmask order.
pub fn enumerate_h01(family: Family, n: usize) -> impl Iterator<Item = (u64, SignedPoset)> {
    assert!(family.is_signed(), "type A posets have no relation graph");
    assert!(slots(family, n).len() < 63, "corpus too large to enumerate");
    (0..corpus_size(family, n)).map(move |mask| (mask, poset_from_mask(family, n, mask)))
}

/// Smallest mask among all relabelings of the graph, for reporting up to
/// isomorphism. Brute force over permutations, so only for small `n`.
pub fn canonical_mask(family: Family, g: &RelationGraph) -> u64 {
    let n = g.vertices.len();
    let mut perm: Vec<i64> = (1..=n as i64).collect();
    let mut best = u64::MAX;
    loop {
        let mut h = RelationGraph::new(n);
        for &(a, b) in &g.edges {
            h.add_edge(perm[a as usize - 1], perm[b as usize - 1]);
        }
        for &v in &g.self_loops {
            h.add_edge(perm[v as usize - 1], perm[v as usize - 1]);
        }
        best = best.min(mask_of_graph(family, &h));
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All connected height-one type-A posets on `1..=m` with `⪯ ⊂ ≤`.
pub fn enumerate_type_a_height_one(m: usize) -> Vec<SignedPoset> {
    let pairs: Vec<(i64, i64)> =
        (1..=m as i64).flat_map(|i| (i + 1..=m as i64).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let chosen: Vec<(i64, i64)> =
            pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
        // height one: no element is both above and below something
        let chain2 = chosen.iter().any(|&(_, b)| chosen.iter().any(|&(c, _)| c == b));
        if chosen.is_empty() || chain2 {
            continue;
        }
        let p = SignedPoset::build(Family::A, m, &chosen).expect("respects the integer order");
        if p.order().is_connected() {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_counts() {
        assert_eq!(enumerate_h01(Family::C, 1).count(), 2);
        assert_eq!(enumerate_h01(Family::C, 2).count(), 8);
        assert_eq!(enumerate_h01(Family::D, 2).count(), 2);
        for n in 1..=4 {
            assert_eq!(corpus_size(Family::C, n), 1 << (n * (n + 1) / 2));
            assert_eq!(corpus_size(Family::D, n), 1 << (n * (n - 1) / 2));
        }
    }

    #[test]
    fn c1_corpus() {
        let all: Vec<_> = enumerate_h01(Family::C, 1).map(|(_, p)| p).collect();
        assert!(all[0].strict_relations().is_empty());
        assert!(all[1].leq(-1, 1));
    }

    #[test]
    fn every_poset_is_height_01_and_round_trips() {
        for family in [Family::B, Family::C, Family::D] {
            for n in 1..=3 {
                for (mask, p) in enumerate_h01(family, n) {
                    assert!(p.height().at_most_h01());
                    assert!(p.zero_isolated());
                    let g = p.relation_graph().unwrap();
                    assert_eq!(mask_of_graph(family, &g), mask);
                }
            }
        }
    }

    #[test]
    fn closure_adds_nothing_for_pm_generators() {
        for (_, p) in enumerate_h01(Family::C, 3) {
            let g = p.relation_graph().unwrap();
            let expected = 2 * g.edges.len() + g.self_loops.len();
            assert_eq!(p.strict_relations().len(), expected);
        }
    }

    #[test]
    fn canonical_masks_identify_isomorphic_graphs() {
        let a = graph_from_mask(Family::C, 3, 0b000011);
        let classes: std::collections::BTreeSet<u64> =
            (0..corpus_size(Family::D, 3)).map(|m| canonical_mask(Family::D, &graph_from_mask(Family::D, 3, m))).collect();
        // graphs on 3 labeled vertices up to isomorphism: 0, 1, 2, 3 edges
        assert_eq!(classes.len(), 4);
        assert!(canonical_mask(Family::C, &a) <= 0b000011);
    }

    #[test]
    fn type_a_height_one_counts() {
        // on two elements only the chain 1 ⪯ 2
        assert_eq!(enumerate_type_a_height_one(2).len(), 1);
        for p in enumerate_type_a_height_one(4) {
            assert_eq!(p.height().total_height, 1);
            assert!(p.order().is_connected());
        }
    }
}
