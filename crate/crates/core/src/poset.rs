//! Finite posets and signed posets of types A, B, C and D.
//!
//! All posets here are embedded in the integers with `x ⪯ y ⇒ x ≤ y`, so the
//! natural integer order is always a linear extension.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn is_signed(self) -> bool {
        self != Family::A
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse { line: 0, message: format!("unknown family {other:?}") }),
        }
    }
}

/// A finite poset on distinct integer labels, stored as a dense closed
/// relation matrix over the labels in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    elements: Vec<i64>,
    leq: Vec<bool>,
}

impl Poset {
    /// Reflexive-transitive closure of `relations` on `elements`. Fails on
    /// unknown labels or cycles.
    pub fn from_relations(elements: &[i64], relations: &[(i64, i64)]) -> Result<Poset> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let m = elements.len();
        let mut p = Poset { elements, leq: vec![false; m * m] };
        for i in 0..m {
            p.leq[i * m + i] = true;
        }
        for &(x, y) in relations {
            let (a, b) = (p.position(x), p.position(y));
            match (a, b) {
                (Some(a), Some(b)) => p.leq[a * m + b] = true,
                (None, _) => return Err(Error::BadElement { family: Family::A, n: m, element: x }),
                (_, None) => return Err(Error::BadElement { family: Family::A, n: m, element: y }),
            }
        }
        p.close();
        p.check_antisymmetric()?;
        Ok(p)
    }

    fn close(&mut self) {
        let m = self.elements.len();
        for k in 0..m {
            for i in 0..m {
                if !self.leq[i * m + k] {
                    continue;
                }
                for j in 0..m {
                    if self.leq[k * m + j] {
                        self.leq[i * m + j] = true;
                    }
                }
            }
        }
    }

    fn check_antisymmetric(&self) -> Result<()> {
        let m = self.elements.len();
        for i in 0..m {
            for j in i + 1..m {
                if self.leq[i * m + j] && self.leq[j * m + i] {
                    return Err(Error::AntisymmetryViolation { x: self.elements[i], y: self.elements[j] });
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: i64) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.position(x).is_some()
    }

    /// `x ⪯ y`; false when either label is absent.
    pub fn leq(&self, x: i64, y: i64) -> bool {
        match (self.position(x), self.position(y)) {
            (Some(a), Some(b)) => self.leq[a * self.len() + b],
            _ => false,
        }
    }

    /// All pairs `(x, y)` with `x ⪯ y`, reflexive pairs included.
    pub fn relations(&self) -> BTreeSet<(i64, i64)> {
        self.strict_or_all(true)
    }

    pub fn strict_relations(&self) -> BTreeSet<(i64, i64)> {
        self.strict_or_all(false)
    }

    fn strict_or_all(&self, reflexive: bool) -> BTreeSet<(i64, i64)> {
        let m = self.len();
        let mut out = BTreeSet::new();
        for i in 0..m {
            for j in 0..m {
                if self.leq[i * m + j] && (reflexive || i != j) {
                    out.insert((self.elements[i], self.elements[j]));
                }
            }
        }
        out
    }

    /// Covering relations `x ⋖ y`: the edges of the Hasse diagram.
    pub fn covering_relations(&self) -> BTreeSet<(i64, i64)> {
        let m = self.len();
        let mut out = BTreeSet::new();
        for i in 0..m {
            for j in 0..m {
                if i == j || !self.leq[i * m + j] {
                    continue;
                }
                let between = (0..m).any(|k| k != i && k != j && self.leq[i * m + k] && self.leq[k * m + j]);
                if !between {
                    out.insert((self.elements[i], self.elements[j]));
                }
            }
        }
        out
    }

    pub fn induced(&self, subset: &[i64]) -> Poset {
        let mut elements: Vec<i64> = subset.iter().copied().filter(|&x| self.contains(x)).collect();
        elements.sort_unstable();
        elements.dedup();
        let m = elements.len();
        let mut leq = vec![false; m * m];
        for (a, &x) in elements.iter().enumerate() {
            for (b, &y) in elements.iter().enumerate() {
                leq[a * m + b] = self.leq(x, y);
            }
        }
        Poset { elements, leq }
    }

    /// Same ground set, order reversed.
    pub fn dual(&self) -> Poset {
        let m = self.len();
        let mut leq = vec![false; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[j * m + i] = self.leq[i * m + j];
            }
        }
        Poset { elements: self.elements.clone(), leq }
    }

    /// Largest chain cardinality. Longest path over the covering DAG, which is
    /// processed in integer order.
    pub fn longest_chain(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let covers = self.covering_relations();
        let m = self.len();
        let mut best = vec![1usize; m];
        for j in 0..m {
            for i in 0..m {
                if covers.contains(&(self.elements[i], self.elements[j])) {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// One less than the largest chain cardinality (0 for an empty poset).
    pub fn height(&self) -> usize {
        self.longest_chain().saturating_sub(1)
    }

    /// Whether the Hasse diagram is connected.
    pub fn is_connected(&self) -> bool {
        if self.len() <= 1 {
            return true;
        }
        let m = self.len();
        let mut seen = vec![false; m];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if !seen[j] && (self.leq[i * m + j] || self.leq[j * m + i]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Order-preserving relabelling onto `1..=len` that keeps the integer order.
    pub fn relabel_consecutive(&self) -> Poset {
        Poset {
            elements: (1..=self.len() as i64).collect(),
            leq: self.leq.clone(),
        }
    }

    /// Is `f` an order isomorphism from `self` onto `other`?
    pub fn is_isomorphism(&self, other: &Poset, f: impl Fn(i64) -> i64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let image: BTreeSet<i64> = self.elements.iter().map(|&x| f(x)).collect();
        if image.len() != self.len() || image.iter().any(|&y| !other.contains(y)) {
            return false;
        }
        self.elements
            .iter()
            .all(|&x| self.elements.iter().all(|&y| self.leq(x, y) == other.leq(f(x), f(y))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightPair {
    pub plus_height: usize,
    pub total_height: usize,
}

impl HeightPair {
    pub fn is_h00(self) -> bool {
        self.plus_height == 0 && self.total_height == 0
    }

    pub fn is_h01(self) -> bool {
        self.plus_height == 0 && self.total_height == 1
    }

    pub fn at_most_h01(self) -> bool {
        self.plus_height == 0 && self.total_height <= 1
    }
}

impl fmt::Display for HeightPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plus_height, self.total_height)
    }
}

/// How `SignedPoset::build` treats mirror pairs missing from the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MirrorMode {
    #[default]
    Complete,
    Strict,
}

/// A validated type-A/B/C/D poset.
///
/// Ground sets: `{1..n}` (A), `{-n..-1, 0, 1..n}` (B), `{-n..-1, 1..n}` (C, D).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPoset {
    family: Family,
    n: usize,
    order: Poset,
}

pub fn ground_set(family: Family, n: usize) -> Vec<i64> {
    let n = n as i64;
    match family {
        Family::A => (1..=n).collect(),
        Family::B => (-n..=n).collect(),
        Family::C | Family::D => (-n..=n).filter(|&x| x != 0).collect(),
    }
}

impl SignedPoset {
    pub fn build(family: Family, n: usize, generators: &[(i64, i64)]) -> Result<SignedPoset> {
        Self::build_with(family, n, generators, MirrorMode::Complete)
    }

    /// Closes `generators` reflexively and transitively (adding condition-2
    /// mirrors in `Complete` mode) and validates the result.
    pub fn build_with(family: Family, n: usize, generators: &[(i64, i64)], mode: MirrorMode) -> Result<SignedPoset> {
        if n == 0 {
            return Err(Error::UnsupportedPoset("n must be at least 1".into()));
        }
        let elements = ground_set(family, n);
        let in_ground = |x: i64| elements.binary_search(&x).is_ok();
        for &(x, y) in generators {
            for e in [x, y] {
                if !in_ground(e) {
                    return Err(Error::BadElement { family, n, element: e });
                }
            }
        }
        let mut rels: BTreeSet<(i64, i64)> = generators.iter().copied().filter(|(x, y)| x != y).collect();
        if family.is_signed() {
            let mirrors: Vec<(i64, i64)> = rels.iter().filter(|(x, y)| *x != -*y).map(|&(x, y)| (-y, -x)).collect();
            for (mx, my) in mirrors {
                if !rels.contains(&(mx, my)) {
                    if mode == MirrorMode::Strict {
                        return Err(Error::MissingMirror { x: -my, y: -mx, mx, my });
                    }
                    rels.insert((mx, my));
                }
            }
        }
        let rels: Vec<(i64, i64)> = rels.into_iter().collect();
        let order = Poset::from_relations(&elements, &rels)?;
        if let Some(&(x, y)) = generators.iter().find(|(x, y)| x > y) {
            return Err(Error::Condition1Violation { x, y });
        }
        let poset = SignedPoset { family, n, order };
        poset.validate()?;
        Ok(poset)
    }

    /// Checks condition 1 (all families), condition 2 (B/C/D) and
    /// condition 3 (B/D).
    pub fn validate(&self) -> Result<()> {
        for (x, y) in self.order.strict_relations() {
            if x > y {
                return Err(Error::Condition1Violation { x, y });
            }
        }
        if self.family.is_signed() {
            for (x, y) in self.order.strict_relations() {
                if x != -y && !self.leq(-y, -x) {
                    return Err(Error::MissingMirror { x, y, mx: -y, my: -x });
                }
            }
        }
        if matches!(self.family, Family::B | Family::D) {
            for i in 1..=self.n as i64 {
                if self.covers(-i, i) {
                    return Err(Error::Condition3Violation { family: self.family, i, neg: -i });
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn elements(&self) -> &[i64] {
        self.order.elements()
    }

    pub fn leq(&self, x: i64, y: i64) -> bool {
        self.order.leq(x, y)
    }

    /// `y` covers `x`.
    pub fn covers(&self, x: i64, y: i64) -> bool {
        x != y
            && self.leq(x, y)
            && !self.elements().iter().any(|&z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
    }

    pub fn relations(&self) -> BTreeSet<(i64, i64)> {
        self.order.relations()
    }

    pub fn strict_relations(&self) -> BTreeSet<(i64, i64)> {
        self.order.strict_relations()
    }

    pub fn covering_relations(&self) -> BTreeSet<(i64, i64)> {
        self.order.covering_relations()
    }

    pub fn induced_subposet(&self, subset: &[i64]) -> Poset {
        self.order.induced(subset)
    }

    pub fn dual(&self) -> Poset {
        self.order.dual()
    }

    /// `P⁺`, induced on the positive elements.
    pub fn positive_part(&self) -> Poset {
        let pos: Vec<i64> = self.elements().iter().copied().filter(|&x| x > 0).collect();
        self.order.induced(&pos)
    }

    /// `P⁻`, induced on the negative elements.
    pub fn negative_part(&self) -> Poset {
        let neg: Vec<i64> = self.elements().iter().copied().filter(|&x| x < 0).collect();
        self.order.induced(&neg)
    }

    /// Plus-height from `P⁺`, total height from `P`. For type A both entries
    /// equal the ordinary height.
    pub fn height(&self) -> HeightPair {
        let total_height = self.order.height();
        let plus_height = if self.family.is_signed() { self.positive_part().height() } else { total_height };
        HeightPair { plus_height, total_height }
    }

    /// `Rel±(P)`: relations from a negative to a positive element.
    pub fn rel_pm(&self) -> BTreeSet<(i64, i64)> {
        self.strict_relations().into_iter().filter(|&(x, y)| x < 0 && y > 0).collect()
    }

    /// True iff `Rel±(P)` is empty. Relations touching 0 (type B) are not
    /// counted themselves; note that `-j ⪯ 0` forces `0 ⪯ j` and hence
    /// `-j ⪯ j`, so any such relation makes the poset non-separable anyway.
    pub fn is_separable(&self) -> bool {
        self.rel_pm().is_empty()
    }

    /// Whether element 0 is comparable to nothing else (always true outside B).
    pub fn zero_isolated(&self) -> bool {
        self.family != Family::B || self.elements().iter().all(|&x| x == 0 || (!self.leq(x, 0) && !self.leq(0, x)))
    }

    /// The type-A poset on `P⁺` relabelled to `1..=|P⁺|`.
    pub fn positive_type_a(&self) -> SignedPoset {
        let order = self.positive_part().relabel_consecutive();
        SignedPoset { family: Family::A, n: order.len(), order }
    }

    /// Type-A poset from an arbitrary poset, relabelled to `1..=len`.
    pub fn type_a(order: &Poset) -> Result<SignedPoset> {
        let order = order.relabel_consecutive();
        let p = SignedPoset { family: Family::A, n: order.len(), order };
        p.validate()?;
        Ok(p)
    }

    /// Restriction to the pairs `±v` for `v` in `vertices` (plus 0 in type B),
    /// relabelled so that the chosen vertices become `1..=k` in order.
    pub fn restrict_to_vertices(&self, vertices: &[i64]) -> Result<SignedPoset> {
        let mut vs: Vec<i64> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let relabel = |x: i64| -> Option<i64> {
            if x == 0 {
                return Some(0);
            }
            vs.iter().position(|&v| v == x.abs()).map(|p| x.signum() * (p as i64 + 1))
        };
        let gens: Vec<(i64, i64)> = self
            .strict_relations()
            .into_iter()
            .filter_map(|(x, y)| Some((relabel(x)?, relabel(y)?)))
            .collect();
        SignedPoset::build_with(self.family, vs.len(), &gens, MirrorMode::Strict)
    }

    /// The same relation set read in another family (e.g. a D poset as C).
    pub fn with_family(&self, family: Family) -> Result<SignedPoset> {
        let gens: Vec<(i64, i64)> = self.strict_relations().into_iter().collect();
        SignedPoset::build_with(family, self.n, &gens, MirrorMode::Strict)
    }

    /// `P₀ = P ∖ {0}` read as a type-D poset.
    pub fn without_zero(&self) -> Result<SignedPoset> {
        let gens: Vec<(i64, i64)> =
            self.strict_relations().into_iter().filter(|&(x, y)| x != 0 && y != 0).collect();
        SignedPoset::build_with(Family::D, self.n, &gens, MirrorMode::Strict)
    }

    /// Adds an isolated 0 to a type-C/D poset.
    pub fn with_zero(&self) -> Result<SignedPoset> {
        let gens: Vec<(i64, i64)> = self.strict_relations().into_iter().collect();
        SignedPoset::build_with(Family::B, self.n, &gens, MirrorMode::Strict)
    }
}

impl fmt::Display for SignedPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};", self.family, self.n)?;
        let covers: Vec<String> = self.covering_relations().iter().map(|(x, y)| format!("{x}<={y}")).collect();
        f.write_str(&covers.join(","))
    }
}
