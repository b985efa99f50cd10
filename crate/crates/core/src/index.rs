//! The index of a Lie poset algebra: commutator matrices, their generic rank,
//! and the combinatorial formulas for the height-(0,0), height-(0,1) and
//! separable cases.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{BasisElement, LiePosetAlgebra, LinearForm};
use crate::error::{Error, Result};
use crate::exact::{rat, ExactMatrix, Rational};
use crate::poset::{Family, SignedPoset};

pub const DEFAULT_TRIALS: usize = 5;
pub const DEFAULT_SEED: u64 = 0;
/// Sample points are nonzero integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1000;

/// The matrix `([x_i, x_j])` with entries written as linear forms in the
/// basis symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorMatrix {
    labels: Vec<String>,
    entries: Vec<LinearForm>,
}

impl CommutatorMatrix {
    pub fn new(alg: &LiePosetAlgebra) -> Self {
        let d = alg.dim();
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                entries.push(alg.bracket_indices(i, j));
            }
        }
        CommutatorMatrix { labels: alg.names(), entries }
    }

    pub fn of(p: &SignedPoset) -> Result<Self> {
        Ok(Self::new(&LiePosetAlgebra::new(p)?))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &LinearForm {
        &self.entries[i * self.dim() + j]
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| *self.entry(i, j) == self.entry(j, i).neg()))
    }

    /// The Kirillov form `B_F(x_i, x_j) = F([x_i, x_j])` at a point.
    pub fn evaluate(&self, point: &FunctionalPoint) -> Result<ExactMatrix> {
        let d = self.dim();
        if point.values.len() != d {
            return Err(Error::Dimension(format!("functional has {} values for {d} symbols", point.values.len())));
        }
        let mut m = ExactMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let e = self.entry(i, j);
                if !e.is_zero() {
                    m.set(i, j, e.evaluate(&point.values));
                }
            }
        }
        Ok(m)
    }

    /// Maximum exact rank over `trials` seeded evaluations at nonzero
    /// integer points.
    pub fn generic_rank(&self, trials: usize, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        for _ in 0..trials.max(1) {
            let point = FunctionalPoint::random(self.dim(), &mut rng);
            let rank = self.evaluate(&point).expect("point has one value per symbol").rank();
            best = best.max(rank);
            if best == self.dim() {
                break;
            }
        }
        best
    }

    pub fn render(&self) -> String {
        let d = self.dim();
        let cells: Vec<String> = self.entries.iter().map(|e| e.render(&self.labels)).collect();
        let width = cells.iter().chain(self.labels.iter()).map(|c| c.chars().count()).max().unwrap_or(1);
        let mut s = format!("{:>width$}", "");
        for l in &self.labels {
            s.push_str(&format!(" | {l:>width$}"));
        }
        s.push('\n');
        for i in 0..d {
            s.push_str(&format!("{:>width$}", self.labels[i]));
            for j in 0..d {
                s.push_str(&format!(" | {:>width$}", cells[i * d + j]));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let d = self.dim();
        let rows: Vec<Vec<String>> =
            (0..d).map(|i| (0..d).map(|j| self.entry(i, j).render(&self.labels)).collect()).collect();
        serde_json::json!({ "labels": self.labels, "entries": rows })
    }
}

/// An assignment of one rational to every basis symbol, i.e. a linear
/// functional written in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalPoint {
    pub values: Vec<Rational>,
}

impl FunctionalPoint {
    pub fn zero(dim: usize) -> Self {
        FunctionalPoint { values: vec![Rational::zero(); dim] }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        FunctionalPoint { values: values.iter().map(|&v| rat(v)).collect() }
    }

    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        FunctionalPoint { values: (0..dim).map(|_| rat(sample_nonzero(rng))).collect() }
    }
}

/// Uniform on the nonzero integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub fn sample_nonzero(rng: &mut impl Rng) -> i64 {
    let v = rng.random_range(1..=2 * SAMPLE_BOUND);
    if v > SAMPLE_BOUND {
        v - 2 * SAMPLE_BOUND - 1
    } else {
        v
    }
}

/// `dim − generic_rank` of the commutator matrix.
pub fn index_oracle(p: &SignedPoset, trials: usize, seed: u64) -> Result<usize> {
    let c = CommutatorMatrix::of(p)?;
    Ok(c.dim() - c.generic_rank(trials, seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormulaRule {
    /// `|P⁺|`
    Height00,
    /// `|E| − |V| + 2η`
    Height01,
    /// `ind 𝔤_A(P⁺) + 1`, with the type-A index from the height-one formula
    Separable,
    /// `ind 𝔤_A(P⁺) + 1`, with the type-A index from the rank oracle
    SeparableViaOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FormulaIndex {
    pub value: usize,
    pub rule: FormulaRule,
}

/// Number of relation-graph components without an odd cycle.
pub fn eta(p: &SignedPoset) -> Result<usize> {
    Ok(p.relation_graph()?.graph_components().iter().filter(|c| !c.has_odd_cycle).count())
}

/// Index from the combinatorial formulas; never falls back to the oracle
/// except for the type-A index inside the separable case.
pub fn index_formula(p: &SignedPoset) -> Result<FormulaIndex> {
    if p.family() == Family::A {
        return Err(Error::UnsupportedPoset("type-A posets: use the height-one formula".into()));
    }
    let h = p.height();
    if h.is_h00() {
        return Ok(FormulaIndex { value: p.n(), rule: FormulaRule::Height00 });
    }
    if h.is_h01() {
        let g = p.relation_graph()?;
        let value = g.edge_count() as i64 - g.vertices.len() as i64 + 2 * eta(p)? as i64;
        return Ok(FormulaIndex { value: value as usize, rule: FormulaRule::Height01 });
    }
    if p.is_separable() {
        let a = p.positive_type_a();
        return Ok(match type_a_height_one_index(&a) {
            Ok(v) => FormulaIndex { value: v + 1, rule: FormulaRule::Separable },
            Err(_) => FormulaIndex {
                value: index_oracle(&a, DEFAULT_TRIALS, DEFAULT_SEED)? + 1,
                rule: FormulaRule::SeparableViaOracle,
            },
        });
    }
    Err(Error::UnsupportedPoset(format!("non-separable poset of height {h}")))
}

/// `|E(Hasse)| − |V| + 1` for a connected height-one type-A poset.
pub fn type_a_height_one_index(p: &SignedPoset) -> Result<usize> {
    if p.family() != Family::A {
        return Err(Error::UnsupportedPoset("expected a type-A poset".into()));
    }
    if p.height().total_height != 1 || !p.order().is_connected() {
        return Err(Error::UnsupportedPoset("expected a connected height-one poset".into()));
    }
    Ok(p.covering_relations().len() + 1 - p.n())
}

/// The block `B(P)` of the commutator matrix of a height-(0,1) type-C poset:
/// rows Y/Z elements, columns H elements, entries `[row, col]`.
#[derive(Debug, Clone)]
pub struct BBlock {
    pub rows: Vec<BasisElement>,
    pub cols: Vec<BasisElement>,
    /// Basis positions of the row and column elements in the full algebra.
    pub row_index: Vec<usize>,
    pub col_index: Vec<usize>,
    pub entries: Vec<Vec<LinearForm>>,
    labels: Vec<String>,
}

impl BBlock {
    pub fn new(alg: &LiePosetAlgebra) -> Result<Self> {
        let p = alg.poset();
        let h = p.height();
        if p.family() != Family::C || !h.at_most_h01() {
            return Err(Error::UnsupportedPoset(format!("B(P) needs a type-C height-(0,1) poset, got type {} height {h}", p.family())));
        }
        let is_h = |b: &BasisElement| matches!(b, BasisElement::H(_));
        let col_index: Vec<usize> = (0..alg.dim()).filter(|&k| is_h(&alg.basis()[k])).collect();
        let row_index: Vec<usize> = (0..alg.dim()).filter(|&k| !is_h(&alg.basis()[k])).collect();
        let entries = row_index
            .iter()
            .map(|&r| col_index.iter().map(|&c| alg.bracket_indices(r, c)).collect())
            .collect();
        Ok(BBlock {
            rows: row_index.iter().map(|&k| alg.basis()[k]).collect(),
            cols: col_index.iter().map(|&k| alg.basis()[k]).collect(),
            row_index,
            col_index,
            entries,
            labels: alg.names(),
        })
    }

    pub fn evaluate(&self, point: &FunctionalPoint) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows.len(), self.cols.len());
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                m.set(r, c, e.evaluate(&point.values));
            }
        }
        m
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for (r, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|e| e.render(&self.labels)).collect();
            s.push_str(&format!("{}: [{}]\n", self.rows[r], cells.join(", ")));
        }
        s
    }
}
