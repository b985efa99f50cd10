//! Rank-preserving row reduction of the block `B(P)` guided by the relation
//! graph, for connected height-(0,1) type-C posets.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BasisElement, LiePosetAlgebra};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, Rational};
use crate::graph::RelationGraph;
use crate::index::{BBlock, FunctionalPoint};
use crate::poset::SignedPoset;

/// Evaluation points tried before giving up on a degenerate pivot.
pub const MAX_ATTEMPTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Initial,
    SelfLoopElim,
    OddCycleElim,
    EvenCycleElim,
    PathSweep,
}

/// What a row of the working matrix currently represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowLabel {
    Edge(i64, i64),
    Loop(i64),
    Zero,
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Edge(i, j) => write!(f, "{{{i},{j}}}"),
            RowLabel::Loop(i) => write!(f, "loop {i}"),
            RowLabel::Zero => write!(f, "0"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionStep {
    pub kind: StepKind,
    pub note: String,
    pub graph: RelationGraph,
    pub rows: Vec<RowLabel>,
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: ExactMatrix,
    pub rank: usize,
}

fn serialize_matrix<S: serde::Serializer>(m: &ExactMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<String>> = (0..m.rows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect();
    rows.serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionTrace {
    pub seed: u64,
    /// Evaluation points used, counting the successful one.
    pub attempts: usize,
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn initial_rank(&self) -> usize {
        self.steps[0].rank
    }

    pub fn final_rank(&self) -> usize {
        self.steps.last().unwrap().rank
    }

    pub fn final_graph(&self) -> &RelationGraph {
        &self.steps.last().unwrap().graph
    }

    pub fn rank_preserved(&self) -> bool {
        self.steps.iter().all(|s| s.rank == self.initial_rank())
    }

    pub fn kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }

    pub fn render(&self) -> String {
        let mut out = format!("seed {} (attempts {})\n", self.seed, self.attempts);
        for (k, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {k}: {:?} {}\n", s.kind, s.note));
            let edges: Vec<String> = s.graph.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            let loops: Vec<String> = s.graph.self_loops.iter().map(ToString::to_string).collect();
            out.push_str(&format!("  edges [{}] loops [{}] rank {}\n", edges.join(" "), loops.join(" "), s.rank));
            for (r, label) in s.rows.iter().enumerate() {
                let cells: Vec<String> = s.matrix.row(r).iter().map(ToString::to_string).collect();
                out.push_str(&format!("  {:>8}: [{}]\n", label.to_string(), cells.join(", ")));
            }
        }
        out
    }

    /// One DOT digraph per step, as `subgraph cluster_k`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph reduction {\n");
        for (k, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_{k} {{\n    label=\"{k}: {:?}\";\n", s.kind));
            for v in &s.graph.vertices {
                out.push_str(&format!("    s{k}_{v} [label=\"{v}\"];\n"));
            }
            for (a, b) in &s.graph.edges {
                out.push_str(&format!("    s{k}_{a} -- s{k}_{b};\n"));
            }
            for v in &s.graph.self_loops {
                out.push_str(&format!("    s{k}_{v} -- s{k}_{v};\n"));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
        out
    }
}

/// Rank of the reduced matrix predicted by the graph: `|V|` with an odd
/// cycle (a self-loop counts), else `|V| − 1`.
pub fn expected_rank(g: &RelationGraph) -> usize {
    let comps = g.graph_components();
    let n = g.vertices.len();
    if comps.iter().any(|c| c.has_odd_cycle) {
        n
    } else {
        n - 1
    }
}

pub fn reduce(p: &SignedPoset, seed: u64) -> Result<ReductionTrace> {
    let alg = LiePosetAlgebra::new(p)?;
    let block = BBlock::new(&alg)?;
    let g = p.relation_graph()?;
    if !g.is_connected() {
        return Err(Error::UnsupportedPoset("the reduction needs a connected relation graph".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let point = FunctionalPoint::random(alg.dim(), &mut rng);
        match Reducer::new(&block, &g, &point).run() {
            Ok(steps) => return Ok(ReductionTrace { seed, attempts: attempt, steps }),
            Err(Error::DegenerateEvaluation { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateEvaluation { attempts: MAX_ATTEMPTS })
}

struct Reducer {
    m: ExactMatrix,
    rows: Vec<RowLabel>,
    g: RelationGraph,
    steps: Vec<ReductionStep>,
}

fn degenerate() -> Error {
    Error::DegenerateEvaluation { attempts: 1 }
}

impl Reducer {
    fn new(block: &BBlock, g: &RelationGraph, point: &FunctionalPoint) -> Self {
        let rows = block
            .rows
            .iter()
            .map(|b| match *b {
                BasisElement::Y(i, j) => RowLabel::Edge(i, j),
                BasisElement::Z(i) => RowLabel::Loop(i),
                other => unreachable!("B(P) row {other}"),
            })
            .collect();
        Reducer { m: block.evaluate(point), rows, g: g.clone(), steps: Vec::new() }
    }

    fn col(v: i64) -> usize {
        v as usize - 1
    }

    fn row_of(&self, label: RowLabel) -> usize {
        let label = match label {
            RowLabel::Edge(i, j) => RowLabel::Edge(i.min(j), i.max(j)),
            l => l,
        };
        self.rows.iter().position(|&r| r == label).expect("graph and row labels agree")
    }

    fn entry(&self, r: usize, v: i64) -> Rational {
        self.m.get(r, Self::col(v)).clone()
    }

    fn support(&self, r: usize) -> Vec<i64> {
        (0..self.m.cols()).filter(|&c| !self.m.get(r, c).is_zero()).map(|c| c as i64 + 1).collect()
    }

    fn record(&mut self, kind: StepKind, note: String) {
        let rank = self.m.rank();
        self.steps.push(ReductionStep {
            kind,
            note,
            graph: self.g.clone(),
            rows: self.rows.clone(),
            matrix: self.m.clone(),
            rank,
        });
    }

    /// Clears column `v` of row `target` using `source`, whose entry there is the pivot.
    fn eliminate(&mut self, target: usize, source: usize, v: i64) -> Result<()> {
        let pivot = self.entry(source, v);
        if pivot.is_zero() {
            return Err(degenerate());
        }
        let factor = -self.entry(target, v) / pivot;
        self.m.add_row_multiple(target, source, &factor);
        Ok(())
    }

    fn run(mut self) -> Result<Vec<ReductionStep>> {
        self.record(StepKind::Initial, String::new());
        loop {
            if let Some((i, j)) = self.loop_edge() {
                self.self_loop_step(i, j)?;
                continue;
            }
            if !self.g.self_loops.is_empty() {
                break;
            }
            if let Some(cycle) = self.largest_cycle(true) {
                self.cycle_step(&cycle, true)?;
                continue;
            }
            if let Some(cycle) = self.largest_cycle(false) {
                self.cycle_step(&cycle, false)?;
                continue;
            }
            self.path_sweep()?;
            break;
        }
        Ok(self.steps)
    }

    fn loop_edge(&self) -> Option<(i64, i64)> {
        self.g.self_loops.iter().find_map(|&i| self.g.neighbors(i).into_iter().min().map(|j| (i, j)))
    }

    fn self_loop_step(&mut self, i: i64, j: i64) -> Result<()> {
        let r = self.row_of(RowLabel::Edge(i, j));
        self.eliminate(r, self.row_of(RowLabel::Loop(i)), i)?;
        self.g.remove_edge(i, j);
        if self.g.self_loops.contains(&j) {
            self.eliminate(r, self.row_of(RowLabel::Loop(j)), j)?;
            if !self.support(r).is_empty() {
                return Err(degenerate());
            }
            self.rows[r] = RowLabel::Zero;
        } else {
            if self.support(r) != vec![j] {
                return Err(degenerate());
            }
            self.rows[r] = RowLabel::Loop(j);
            self.g.add_edge(j, j);
        }
        self.record(StepKind::SelfLoopElim, format!("loop at {i}, edge {{{i},{j}}}"));
        Ok(())
    }

    fn largest_cycle(&self, odd: bool) -> Option<Vec<i64>> {
        let cycles = self.g.simple_cycles();
        let len = cycles.iter().map(Vec::len).filter(|l| (l % 2 == 1) == odd).max()?;
        cycles.into_iter().find(|c| c.len() == len)
    }

    /// `row(i1, ik) + Σ (−1)^j (v₁ₖ / v_{j,j+1}) row(ij, ij+1)`: an odd cycle
    /// leaves a multiple of `e_{ik}`, an even cycle leaves zero.
    fn cycle_step(&mut self, cycle: &[i64], odd: bool) -> Result<()> {
        let k = cycle.len();
        let (first, last) = (cycle[0], cycle[k - 1]);
        let t = self.row_of(RowLabel::Edge(first, last));
        let a = self.entry(t, first);
        if a.is_zero() {
            return Err(degenerate());
        }
        for j in 0..k - 1 {
            let r = self.row_of(RowLabel::Edge(cycle[j], cycle[j + 1]));
            let b = self.entry(r, cycle[j]);
            if b.is_zero() {
                return Err(degenerate());
            }
            let mut factor = &a / &b;
            if j % 2 == 0 {
                factor = -factor;
            }
            self.m.add_row_multiple(t, r, &factor);
        }
        self.g.remove_edge(first, last);
        let tuple: Vec<String> = cycle.iter().map(ToString::to_string).collect();
        if odd {
            if self.support(t) != vec![last] {
                return Err(degenerate());
            }
            self.rows[t] = RowLabel::Loop(last);
            self.g.add_edge(last, last);
            self.record(StepKind::OddCycleElim, format!("cycle ({})", tuple.join(",")));
        } else {
            if !self.support(t).is_empty() {
                return Err(degenerate());
            }
            self.rows[t] = RowLabel::Zero;
            self.record(StepKind::EvenCycleElim, format!("cycle ({})", tuple.join(",")));
        }
        Ok(())
    }

    /// On a tree rooted at the smallest leaf `i1`, turns the row of the last
    /// edge of every root path into a combination of `e_{i1}` and the path's end.
    fn path_sweep(&mut self) -> Result<()> {
        if self.g.edges.is_empty() {
            return Ok(());
        }
        let root = *self.g.vertices.iter().find(|&&v| self.g.degree(v) == 1).expect("a tree has a leaf");
        let mut parent = BTreeMap::new();
        let mut depth = BTreeMap::from([(root, 0usize)]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in self.g.neighbors(v) {
                if !depth.contains_key(&w) {
                    depth.insert(w, depth[&v] + 1);
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        let mut ends: Vec<i64> = depth.keys().copied().filter(|v| depth[v] >= 2).collect();
        ends.sort_by_key(|v| (std::cmp::Reverse(depth[v]), *v));
        for &end in &ends {
            let mut path = vec![end];
            while let Some(&p) = parent.get(path.last().unwrap()) {
                path.push(p);
            }
            // path runs end, ..., root
            let t = self.row_of(RowLabel::Edge(path[0], path[1]));
            let a = self.entry(t, path[1]);
            if a.is_zero() {
                return Err(degenerate());
            }
            for k in 1..path.len() - 1 {
                let r = self.row_of(RowLabel::Edge(path[k], path[k + 1]));
                let b = self.entry(r, path[k]);
                if b.is_zero() {
                    return Err(degenerate());
                }
                let mut factor = &a / &b;
                if k % 2 == 1 {
                    factor = -factor;
                }
                self.m.add_row_multiple(t, r, &factor);
            }
            let s = self.support(t);
            if !s.contains(&end) || s.iter().any(|&v| v != end && v != root) {
                return Err(degenerate());
            }
        }
        self.record(StepKind::PathSweep, format!("root {root}"));
        Ok(())
    }
}
