//! Relation graphs of height-(0,1) signed posets.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Family, MirrorMode, SignedPoset};

/// Vertex `i` stands for the pair `±i`; an edge `{i, j}` for the mirror pair
/// `-i ⪯ j`, `-j ⪯ i`; a self-loop at `i` for `-i ⪯ i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationGraph {
    pub vertices: Vec<i64>,
    /// Unordered edges stored as `(min, max)`.
    pub edges: BTreeSet<(i64, i64)>,
    pub self_loops: BTreeSet<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<i64>,
    pub vertex_count: usize,
    /// Edges inside the component, self-loops included.
    pub edge_count: usize,
    pub has_odd_cycle: bool,
    pub is_unicyclic: bool,
}

impl RelationGraph {
    pub fn new(n: usize) -> Self {
        RelationGraph { vertices: (1..=n as i64).collect(), edges: BTreeSet::new(), self_loops: BTreeSet::new() }
    }

    pub fn add_edge(&mut self, i: i64, j: i64) {
        if i == j {
            self.self_loops.insert(i);
        } else {
            self.edges.insert((i.min(j), i.max(j)));
        }
    }

    pub fn remove_edge(&mut self, i: i64, j: i64) -> bool {
        if i == j {
            self.self_loops.remove(&i)
        } else {
            self.edges.remove(&(i.min(j), i.max(j)))
        }
    }

    pub fn has_edge(&self, i: i64, j: i64) -> bool {
        if i == j {
            self.self_loops.contains(&i)
        } else {
            self.edges.contains(&(i.min(j), i.max(j)))
        }
    }

    /// Edge count with self-loops included.
    pub fn edge_count(&self) -> usize {
        self.edges.len() + self.self_loops.len()
    }

    /// Neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: i64) -> Vec<i64> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    pub fn degree(&self, v: i64) -> usize {
        self.neighbors(v).len()
    }

    pub fn graph_components(&self) -> Vec<Component> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if seen.contains(&start) {
                continue;
            }
            // 2-colouring BFS; a conflict means an odd cycle
            let mut colour: BTreeMap<i64, bool> = BTreeMap::new();
            colour.insert(start, false);
            seen.insert(start);
            let mut queue = std::collections::VecDeque::from([start]);
            let mut bipartite = true;
            while let Some(v) = queue.pop_front() {
                let cv = colour[&v];
                for w in self.neighbors(v) {
                    match colour.get(&w) {
                        Some(&cw) => bipartite &= cw != cv,
                        None => {
                            colour.insert(w, !cv);
                            seen.insert(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            let vertices: Vec<i64> = colour.keys().copied().collect();
            let in_comp = |v: &i64| colour.contains_key(v);
            let loops = self.self_loops.iter().filter(|v| in_comp(v)).count();
            let edges = self.edges.iter().filter(|(a, _)| in_comp(a)).count();
            let edge_count = edges + loops;
            out.push(Component {
                vertex_count: vertices.len(),
                vertices,
                edge_count,
                has_odd_cycle: loops > 0 || !bipartite,
                is_unicyclic: edge_count == colour.len(),
            });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.graph_components().len() <= 1
    }

    /// Simple cycles on more than one vertex, each as `(i1, ..., ik)` with `i1`
    /// the smallest vertex and the orientation chosen so that the tuple is
    /// lexicographically least.
    pub fn simple_cycles(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for &start in &self.vertices {
            let mut path = vec![start];
            self.extend_cycles(start, &mut path, &mut out);
        }
        out.sort();
        out
    }

    fn extend_cycles(&self, start: i64, path: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let last = *path.last().unwrap();
        for w in self.neighbors(last) {
            if w == start && path.len() >= 3 {
                // each undirected cycle is seen twice; keep the orientation with path[1] < path[k-1]
                if path[1] < path[path.len() - 1] {
                    out.push(path.clone());
                }
            } else if w > start && !path.contains(&w) {
                path.push(w);
                self.extend_cycles(start, path, out);
                path.pop();
            }
        }
    }

    /// The poset this graph encodes (0 isolated in type B).
    pub fn to_poset(&self, family: Family) -> Result<SignedPoset> {
        if !self.self_loops.is_empty() && family != Family::C {
            return Err(Error::UnsupportedPoset(format!("self-loops are only possible in type C, not {family}")));
        }
        let n = self.vertices.len();
        if self.vertices != (1..=n as i64).collect::<Vec<_>>() {
            return Err(Error::UnsupportedPoset("relation graph vertices must be 1..=n".into()));
        }
        let mut gens = Vec::new();
        for &(i, j) in &self.edges {
            gens.push((-i, j));
            gens.push((-j, i));
        }
        for &i in &self.self_loops {
            gens.push((-i, i));
        }
        SignedPoset::build_with(family, n, &gens, MirrorMode::Strict)
    }
}

impl SignedPoset {
    /// The relation graph; defined for height (0,0) and (0,1) only.
    pub fn relation_graph(&self) -> Result<RelationGraph> {
        let h = self.height();
        if self.family() == Family::A || !h.at_most_h01() {
            return Err(Error::UnsupportedHeight { plus: h.plus_height, total: h.total_height });
        }
        let mut g = RelationGraph::new(self.n());
        for (x, y) in self.rel_pm() {
            g.add_edge(-x, y);
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(i64, i64)]) -> RelationGraph {
        let mut g = RelationGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    #[test]
    fn looped_path_relation_graph() {
        let p = SignedPoset::build(Family::C, 3, &[(-2, 1), (-2, 2), (-2, 3), (-3, 2), (-1, 2)]).unwrap();
        let g = p.relation_graph().unwrap();
        assert_eq!(g.vertices, vec![1, 2, 3]);
        assert_eq!(g.edges, [(1, 2), (2, 3)].into_iter().collect());
        assert_eq!(g.self_loops, [2].into_iter().collect());

        let comps = g.graph_components();
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!((c.vertex_count, c.edge_count, c.has_odd_cycle, c.is_unicyclic), (3, 3, true, true));
    }

    #[test]
    fn path3_relation_graph() {
        let p = SignedPoset::build(Family::C, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)]).unwrap();
        let g = p.relation_graph().unwrap();
        assert_eq!(g.edges, [(1, 2), (2, 3)].into_iter().collect());
        assert!(g.self_loops.is_empty());
        let c = &g.graph_components()[0];
        assert_eq!((c.edge_count, c.has_odd_cycle, c.is_unicyclic), (2, false, false));
    }

    #[test]
    fn antichain_has_isolated_vertices() {
        let p = SignedPoset::build(Family::C, 2, &[]).unwrap();
        let g = p.relation_graph().unwrap();
        assert_eq!(g.graph_components().len(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn triangle_and_even_cycle() {
        let t = graph(3, &[(1, 2), (2, 3), (1, 3)]);
        let c = &t.graph_components()[0];
        assert!(c.has_odd_cycle && c.is_unicyclic);
        assert_eq!(t.simple_cycles(), vec![vec![1, 2, 3]]);

        let sq = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let c = &sq.graph_components()[0];
        assert!(!c.has_odd_cycle && c.is_unicyclic);
        assert_eq!(sq.simple_cycles(), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn cycles_of_k4() {
        let k4 = graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let cycles = k4.simple_cycles();
        // four triangles and three 4-cycles
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
        assert!(cycles.contains(&vec![1, 2, 4, 3]));
    }

    #[test]
    fn higher_posets_have_no_relation_graph() {
        let p = SignedPoset::build(Family::C, 2, &[(-2, -1)]).unwrap();
        assert!(matches!(p.relation_graph(), Err(Error::UnsupportedHeight { plus: 1, total: 1 })));
    }

    #[test]
    fn graph_poset_round_trip() {
        let g = graph(3, &[(1, 2), (2, 3), (2, 2)]);
        let p = g.to_poset(Family::C).unwrap();
        assert_eq!(p.relation_graph().unwrap(), g);
        assert!(g.to_poset(Family::D).is_err());
    }
}
