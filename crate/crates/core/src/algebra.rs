//! Bases, matrix realizations and structure constants of Lie poset algebras.
//!
//! Matrices are indexed by the signed labels of the ground set, so a type-C
//! algebra on `±{1..n}` lives in `2n × 2n` matrices with rows and columns
//! `-n..-1, 1..n` (and a middle row/column 0 in type B).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::poset::{Family, SignedPoset};

/// One symbolic basis vector. Indices are positive labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisElement {
    /// `E₋ᵢ,₋ᵢ − Eᵢ,ᵢ`
    H(i64),
    /// `E₋ᵢ,₋ⱼ − Eⱼ,ᵢ` with `i > j`
    X(i64, i64),
    /// Type C: `E₋ᵢ,ⱼ + E₋ⱼ,ᵢ` with `i < j`. Types B/D: `E₋ᵢ,ⱼ − E₋ⱼ,ᵢ` with `i > j`.
    Y(i64, i64),
    /// `E₋ᵢ,ᵢ`, type C only
    Z(i64),
    /// `E₋ⱼ,₀ − E₀,ⱼ`, type B only
    U(i64),
    /// `Eᵢ,ᵢ − Eᵢ₊₁,ᵢ₊₁`, type A
    DiagA(i64),
    /// `Eᵢ,ⱼ` with `i ≺ j`, type A
    EijA(i64, i64),
}

impl BasisElement {
    /// The entry whose value is this element's coefficient in any algebra
    /// element; no two basis elements of one algebra share it.
    fn lead(self) -> (i64, i64) {
        match self {
            BasisElement::H(i) => (-i, -i),
            BasisElement::X(i, j) => (-i, -j),
            BasisElement::Y(i, j) => (-i, j),
            BasisElement::Z(i) => (-i, i),
            BasisElement::U(j) => (-j, 0),
            BasisElement::DiagA(i) => (i, i),
            BasisElement::EijA(i, j) => (i, j),
        }
    }

    /// Exact sparse matrix of this element in the family's defining
    /// representation.
    pub fn realize(self, family: Family) -> SparseMatrixQ {
        let one = Rational::one;
        let entries: Vec<((i64, i64), Rational)> = match self {
            BasisElement::H(i) => vec![((-i, -i), one()), ((i, i), -one())],
            BasisElement::X(i, j) => vec![((-i, -j), one()), ((j, i), -one())],
            BasisElement::Y(i, j) => {
                let s = if family == Family::C { one() } else { -one() };
                vec![((-i, j), one()), ((-j, i), s)]
            }
            BasisElement::Z(i) => vec![((-i, i), one())],
            BasisElement::U(j) => vec![((-j, 0), one()), ((0, j), -one())],
            BasisElement::DiagA(i) => vec![((i, i), one()), ((i + 1, i + 1), -one())],
            BasisElement::EijA(i, j) => vec![((i, j), one())],
        };
        let mut m = SparseMatrixQ::default();
        for (pos, v) in entries {
            m.add(pos, v);
        }
        m
    }

    /// Y written with the other index order normalizes to the stored
    /// orientation; the sign flips in types B/D where `Y` is antisymmetric.
    pub fn normalized_y(family: Family, i: i64, j: i64) -> (BasisElement, Rational) {
        let stored_c = family == Family::C && i < j;
        let stored_bd = family != Family::C && i > j;
        if stored_c || stored_bd {
            (BasisElement::Y(i, j), Rational::one())
        } else if family == Family::C {
            (BasisElement::Y(j, i), Rational::one())
        } else {
            (BasisElement::Y(j, i), -Rational::one())
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::H(i) => write!(f, "H({i})"),
            BasisElement::X(i, j) => write!(f, "X({i},{j})"),
            BasisElement::Y(i, j) => write!(f, "Y({i},{j})"),
            BasisElement::Z(i) => write!(f, "Z({i})"),
            BasisElement::U(j) => write!(f, "U({j})"),
            BasisElement::DiagA(i) => write!(f, "D({i})"),
            BasisElement::EijA(i, j) => write!(f, "E({i},{j})"),
        }
    }
}

/// Sparse matrix over the rationals keyed by signed `(row, col)` labels.
/// Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SparseMatrixQ {
    entries: BTreeMap<(i64, i64), Rational>,
}

impl SparseMatrixQ {
    pub fn get(&self, pos: (i64, i64)) -> Rational {
        self.entries.get(&pos).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&mut self, pos: (i64, i64), v: Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry(pos).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&pos);
        }
    }

    pub fn entries(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_scaled(&mut self, other: &SparseMatrixQ, factor: &Rational) {
        for (&pos, v) in &other.entries {
            self.add(pos, v * factor);
        }
    }

    pub fn mul(&self, other: &SparseMatrixQ) -> SparseMatrixQ {
        let mut out = SparseMatrixQ::default();
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in other.entries.range((k, i64::MIN)..=(k, i64::MAX)) {
                out.add((i, j), a * b);
            }
        }
        out
    }

    /// `[a, b] = ab − ba`
    pub fn commutator(&self, other: &SparseMatrixQ) -> SparseMatrixQ {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &-Rational::one());
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries.keys().all(|&(r, c)| r <= c)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(r, c)| r == c)
    }

    /// Membership in sp(2n) (`N = N̂`) or so(2n), so(2n+1) (`N = −N̂`) in the
    /// antidiagonal convention. Trace zero for type A.
    pub fn has_classical_shape(&self, family: Family) -> bool {
        match family {
            Family::A => self
                .entries
                .iter()
                .filter(|((r, c), _)| r == c)
                .fold(Rational::zero(), |acc, (_, v)| acc + v)
                .is_zero(),
            Family::C => self.entries.keys().chain(self.mirror_keys().iter()).all(|&(x, y)| {
                let sign = if (x < 0) == (y < 0) { -Rational::one() } else { Rational::one() };
                self.get((x, y)) == sign * self.get((-y, -x))
            }),
            Family::B | Family::D => self
                .entries
                .keys()
                .chain(self.mirror_keys().iter())
                .all(|&(x, y)| self.get((x, y)) == -self.get((-y, -x))),
        }
    }

    fn mirror_keys(&self) -> Vec<(i64, i64)> {
        self.entries.keys().map(|&(x, y)| (-y, -x)).collect()
    }
}

/// Formal linear combination of basis elements, keyed by basis position.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LinearCombination {
    terms: BTreeMap<usize, Rational>,
}

/// Entries of a commutator matrix are linear forms in the basis symbols.
pub type LinearForm = LinearCombination;

impl LinearCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: usize) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: usize, c: Rational) -> Self {
        let mut lc = Self::default();
        lc.add_term(k, c);
        lc
    }

    pub fn add_term(&mut self, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add_scaled(&mut self, other: &LinearCombination, factor: &Rational) {
        for (&k, c) in &other.terms {
            self.add_term(k, c * factor);
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = Self::default();
        out.add_scaled(self, factor);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<usize, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at a point given by one rational per basis symbol.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&k, c)| acc + c * &point[k])
    }

    /// Human-readable form using the algebra's symbol names.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (&k, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag}*"));
            }
            s.push_str(&names[k]);
        }
        s
    }
}

/// Canonical basis of the Lie poset algebra of `P`: H by increasing `i`,
/// then X, Y, Z, U in lexicographic order (Y keyed by `(min, max)`). Type A:
/// the `DiagA` then `EijA` elements.
pub fn build_basis(p: &SignedPoset) -> Vec<BasisElement> {
    let n = p.n() as i64;
    let mut out = Vec::new();
    if p.family() == Family::A {
        out.extend((1..n).map(BasisElement::DiagA));
        out.extend(p.strict_relations().into_iter().map(|(i, j)| BasisElement::EijA(i, j)));
        return out;
    }
    out.extend((1..=n).map(BasisElement::H));
    for i in 1..=n {
        for j in 1..i {
            if p.leq(-i, -j) {
                out.push(BasisElement::X(i, j));
            }
        }
    }
    for lo in 1..=n {
        for hi in lo + 1..=n {
            if p.leq(-lo, hi) && p.leq(-hi, lo) {
                out.push(if p.family() == Family::C { BasisElement::Y(lo, hi) } else { BasisElement::Y(hi, lo) });
            }
        }
    }
    if p.family() == Family::C {
        out.extend((1..=n).filter(|&i| p.leq(-i, i)).map(BasisElement::Z));
    }
    if p.family() == Family::B {
        out.extend((1..=n).filter(|&j| p.leq(-j, 0)).map(BasisElement::U));
    }
    out
}

/// Positions that may be nonzero in elements of the algebra: `(i, j)` with
/// `i ⪯ j`, minus `(−i, i)` in types B/D and the forced-zero `(0, 0)` in B.
pub fn matrix_form(p: &SignedPoset) -> BTreeSet<(i64, i64)> {
    p.relations()
        .into_iter()
        .filter(|&(x, y)| match p.family() {
            Family::B | Family::D => !(x == -y && x != 0) && !(x == 0 && y == 0),
            _ => true,
        })
        .collect()
}

/// A Lie poset algebra with its basis, realizations and cached structure
/// constants. Immutable after construction.
#[derive(Debug, Clone)]
pub struct LiePosetAlgebra {
    poset: SignedPoset,
    basis: Vec<BasisElement>,
    realized: Vec<SparseMatrixQ>,
    lead_index: BTreeMap<(i64, i64), usize>,
    /// `[x_k, x_l]` for `k < l`, nonzero entries only.
    constants: BTreeMap<(usize, usize), LinearCombination>,
}

impl LiePosetAlgebra {
    pub fn new(poset: &SignedPoset) -> Result<Self> {
        let basis = build_basis(poset);
        let family = poset.family();
        let realized: Vec<SparseMatrixQ> = basis.iter().map(|b| b.realize(family)).collect();
        let lead_index = basis.iter().enumerate().map(|(k, b)| (b.lead(), k)).collect();
        let mut alg = LiePosetAlgebra { poset: poset.clone(), basis, realized, lead_index, constants: BTreeMap::new() };
        let mut constants = BTreeMap::new();
        for k in 0..alg.dim() {
            for l in k + 1..alg.dim() {
                let c = alg.realized[k].commutator(&alg.realized[l]);
                let lc = alg.decompose(&c).ok_or_else(|| Error::NotInSpan {
                    left: alg.basis[k].to_string(),
                    right: alg.basis[l].to_string(),
                })?;
                if !lc.is_zero() {
                    constants.insert((k, l), lc);
                }
            }
        }
        alg.constants = constants;
        Ok(alg)
    }

    pub fn poset(&self) -> &SignedPoset {
        &self.poset
    }

    pub fn family(&self) -> Family {
        self.poset.family()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn names(&self) -> Vec<String> {
        self.basis.iter().map(ToString::to_string).collect()
    }

    pub fn index_of(&self, b: BasisElement) -> Option<usize> {
        self.basis.iter().position(|&x| x == b)
    }

    pub fn realize(&self, k: usize) -> &SparseMatrixQ {
        &self.realized[k]
    }

    pub fn realize_combination(&self, lc: &LinearCombination) -> SparseMatrixQ {
        let mut m = SparseMatrixQ::default();
        for (&k, c) in lc.terms() {
            m.add_scaled(&self.realized[k], c);
        }
        m
    }

    /// Coordinates of `m` in the basis by reading each element's leading
    /// entry, or `None` if a residual remains.
    pub fn decompose(&self, m: &SparseMatrixQ) -> Option<LinearCombination> {
        let mut lc = LinearCombination::zero();
        if self.family() == Family::A {
            let n = self.poset.n() as i64;
            let mut prefix = Rational::zero();
            for i in 1..n {
                prefix += m.get((i, i));
                lc.add_term(self.lead_index[&(i, i)], prefix.clone());
            }
            for (&(r, c), v) in m.entries() {
                if r != c {
                    lc.add_term(*self.lead_index.get(&(r, c))?, v.clone());
                }
            }
        } else {
            for (&pos, v) in m.entries() {
                if let Some(&k) = self.lead_index.get(&pos) {
                    lc.add_term(k, v.clone());
                }
            }
        }
        let mut residual = m.clone();
        residual.add_scaled(&self.realize_combination(&lc), &-Rational::one());
        residual.is_zero().then_some(lc)
    }

    /// Cached `[x_k, x_l]`.
    pub fn bracket_indices(&self, k: usize, l: usize) -> LinearCombination {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => self.constants.get(&(k, l)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self.constants.get(&(l, k)).map(|c| c.neg()).unwrap_or_default(),
            std::cmp::Ordering::Equal => LinearCombination::zero(),
        }
    }

    /// `[a, b]` for two basis elements, computed afresh from the matrix
    /// commutator.
    pub fn bracket(&self, a: BasisElement, b: BasisElement) -> Result<LinearCombination> {
        let unknown = |e: BasisElement| Error::NotInSpan { left: a.to_string(), right: format!("{e} (not in basis)") };
        let ka = self.index_of(a).ok_or_else(|| unknown(a))?;
        let kb = self.index_of(b).ok_or_else(|| unknown(b))?;
        let c = self.realized[ka].commutator(&self.realized[kb]);
        self.decompose(&c).ok_or_else(|| Error::NotInSpan { left: a.to_string(), right: b.to_string() })
    }

    /// Bilinear extension of the cached structure constants.
    pub fn bracket_combinations(&self, a: &LinearCombination, b: &LinearCombination) -> LinearCombination {
        let mut out = LinearCombination::zero();
        for (&k, ca) in a.terms() {
            for (&l, cb) in b.terms() {
                let c = self.bracket_indices(k, l);
                if !c.is_zero() {
                    out.add_scaled(&c, &(ca * cb));
                }
            }
        }
        out
    }

    /// Nonzero structure constants `c^m_{kl}` for `k < l`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.constants.iter().flat_map(|(&(k, l), lc)| lc.terms().iter().map(move |(&m, c)| (k, l, m, c)))
    }

    /// Plain-text table of nonzero brackets.
    pub fn structure_table(&self) -> String {
        let names = self.names();
        let mut s = String::new();
        for (&(k, l), lc) in &self.constants {
            s.push_str(&format!("[{}, {}] = {}\n", names[k], names[l], lc.render(&names)));
        }
        s
    }

    pub fn structure_json(&self) -> serde_json::Value {
        let names = self.names();
        let brackets: Vec<serde_json::Value> = self
            .constants
            .iter()
            .map(|(&(k, l), lc)| {
                let terms: serde_json::Map<String, serde_json::Value> =
                    lc.terms().iter().map(|(&m, c)| (names[m].clone(), c.to_string().into())).collect();
                serde_json::json!({ "left": names[k], "right": names[l], "result": terms })
            })
            .collect();
        serde_json::json!({
            "family": self.family().to_string(),
            "n": self.poset.n(),
            "basis": names,
            "brackets": brackets,
        })
    }
}

/// Matrix form rendered as a `*`/`0` table with signed labels.
pub fn render_matrix_form(p: &SignedPoset) -> String {
    let form = matrix_form(p);
    let labels = p.elements();
    let width = labels.iter().map(|l| l.to_string().len()).max().unwrap_or(1).max(1);
    let mut s = format!("{:>width$}", "");
    for l in labels {
        s.push_str(&format!(" {l:>width$}"));
    }
    s.push('\n');
    for &r in labels {
        s.push_str(&format!("{r:>width$}"));
        for &c in labels {
            let cell = if form.contains(&(r, c)) { "*" } else { "0" };
            s.push_str(&format!(" {cell:>width$}"));
        }
        s.push('\n');
    }
    s
}

pub fn rat_lc(pairs: &[(usize, i64)]) -> LinearCombination {
    let mut lc = LinearCombination::zero();
    for &(k, c) in pairs {
        lc.add_term(k, rat(c));
    }
    lc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_h01;
    use BasisElement::*;

    fn path3(family: Family) -> SignedPoset {
        SignedPoset::build(family, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)]).unwrap()
    }

    fn looped_path() -> SignedPoset {
        SignedPoset::build(Family::C, 3, &[(-2, 1), (-2, 2), (-2, 3), (-3, 2), (-1, 2)]).unwrap()
    }

    #[test]
    fn bases() {
        let p = SignedPoset::build(Family::C, 1, &[(-1, 1)]).unwrap();
        assert_eq!(build_basis(&p), vec![H(1), Z(1)]);
        assert_eq!(build_basis(&looped_path()), vec![H(1), H(2), H(3), Y(1, 2), Y(2, 3), Z(2)]);
        assert_eq!(build_basis(&path3(Family::D)), vec![H(1), H(2), H(3), Y(2, 1), Y(3, 2)]);
    }

    #[test]
    fn realizations() {
        let h = H(1).realize(Family::C);
        assert_eq!(h.entries().len(), 2);
        assert_eq!(h.get((-1, -1)), rat(1));
        assert_eq!(h.get((1, 1)), rat(-1));
        let y = Y(1, 2).realize(Family::C);
        assert_eq!(y.get((-1, 2)), rat(1));
        assert_eq!(y.get((-2, 1)), rat(1));
        let yd = Y(2, 1).realize(Family::D);
        assert_eq!(yd.get((-2, 1)), rat(1));
        assert_eq!(yd.get((-1, 2)), rat(-1));
        assert_eq!(BasisElement::normalized_y(Family::D, 1, 2), (Y(2, 1), rat(-1)));
        assert_eq!(BasisElement::normalized_y(Family::C, 2, 1), (Y(1, 2), rat(1)));
    }

    #[test]
    fn brackets() {
        let p = SignedPoset::build(Family::C, 1, &[(-1, 1)]).unwrap();
        let alg = LiePosetAlgebra::new(&p).unwrap();
        assert_eq!(alg.bracket(H(1), Z(1)).unwrap(), rat_lc(&[(1, 2)]));

        let q = SignedPoset::build(Family::C, 2, &[]).unwrap();
        let alg = LiePosetAlgebra::new(&q).unwrap();
        assert!(alg.bracket(H(1), H(2)).unwrap().is_zero());

        let alg = LiePosetAlgebra::new(&looped_path()).unwrap();
        let y12 = alg.index_of(Y(1, 2)).unwrap();
        assert_eq!(alg.bracket(H(1), Y(1, 2)).unwrap(), rat_lc(&[(y12, 1)]));
        assert_eq!(alg.bracket_indices(0, y12), rat_lc(&[(y12, 1)]));
    }

    #[test]
    fn path3_matrix_form_follows_relations() {
        let mut expected: BTreeSet<(i64, i64)> = [(-2, 1), (-1, 2), (-2, 3), (-3, 2)].into_iter().collect();
        expected.extend([-3, -2, -1, 1, 2, 3].map(|r| (r, r)));
        for family in [Family::C, Family::D] {
            assert_eq!(matrix_form(&path3(family)), expected);
        }
        // the relation -3 ⪯ 1 is absent, so its entry is forced to zero
        assert!(!matrix_form(&path3(Family::C)).contains(&(-3, 1)));
    }

    #[test]
    fn forked_chain_matrix_form() {
        let p = SignedPoset::build(Family::A, 4, &[(1, 2), (2, 3), (2, 4)]).unwrap();
        let expected: BTreeSet<(i64, i64)> = [
            (1, 1), (1, 2), (1, 3), (1, 4),
            (2, 2), (2, 3), (2, 4),
            (3, 3),
            (4, 4),
        ]
        .into_iter()
        .collect();
        assert_eq!(matrix_form(&p), expected);
    }

    #[test]
    fn antichain_form_is_diagonal() {
        let p = SignedPoset::build(Family::C, 1, &[]).unwrap();
        assert_eq!(matrix_form(&p), [(-1, -1), (1, 1)].into_iter().collect());
    }

    #[test]
    fn type_b_zero_entry_and_u_elements() {
        let p = SignedPoset::build(Family::B, 2, &[(-1, 0)]).unwrap();
        let basis = build_basis(&p);
        assert!(basis.contains(&U(1)));
        let alg = LiePosetAlgebra::new(&p).unwrap();
        let form = matrix_form(&p);
        assert!(form.contains(&(-1, 0)) && form.contains(&(0, 1)));
        assert!(!form.contains(&(0, 0)) && !form.contains(&(-1, 1)));
        for k in 0..alg.dim() {
            assert!(alg.realize(k).has_classical_shape(Family::B));
        }
    }

    #[test]
    fn type_a_bracket_decomposition() {
        let p = SignedPoset::build(Family::A, 3, &[(1, 2), (2, 3)]).unwrap();
        let alg = LiePosetAlgebra::new(&p).unwrap();
        assert_eq!(alg.dim(), 2 + 3);
        // [D(1), E(1,2)] = (1 - (-1)) E(1,2) = 2 E(1,2)
        let e12 = alg.index_of(EijA(1, 2)).unwrap();
        assert_eq!(alg.bracket(DiagA(1), EijA(1, 2)).unwrap(), rat_lc(&[(e12, 2)]));
        let e13 = alg.index_of(EijA(1, 3)).unwrap();
        assert_eq!(alg.bracket(EijA(1, 2), EijA(2, 3)).unwrap(), rat_lc(&[(e13, 1)]));
    }

    fn check_antisymmetry_and_jacobi(alg: &LiePosetAlgebra) {
        let d = alg.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = alg.bracket_indices(a, b);
                let ba = alg.bracket_indices(b, a);
                assert_eq!(ab, ba.neg());
                for c in 0..d {
                    let basis = LinearCombination::basis;
                    let mut sum = alg.bracket_combinations(&basis(a), &alg.bracket_indices(b, c));
                    sum.add_scaled(&alg.bracket_combinations(&basis(b), &alg.bracket_indices(c, a)), &rat(1));
                    sum.add_scaled(&alg.bracket_combinations(&basis(c), &alg.bracket_indices(a, b)), &rat(1));
                    assert!(sum.is_zero(), "Jacobi fails on {:?} for {a},{b},{c}", alg.poset());
                }
            }
        }
    }

    #[test]
    fn shape_and_triangularity_on_corpora() {
        for family in [Family::B, Family::C, Family::D] {
            for n in 1..=3 {
                for (_, p) in enumerate_h01(family, n) {
                    let alg = LiePosetAlgebra::new(&p).unwrap();
                    for k in 0..alg.dim() {
                        let m = alg.realize(k);
                        assert!(m.is_upper_triangular());
                        assert!(m.has_classical_shape(family));
                        for pos in m.entries().keys() {
                            assert!(matrix_form(&p).contains(pos));
                        }
                    }
                    check_antisymmetry_and_jacobi(&alg);
                }
            }
        }
    }

    #[test]
    fn non_h01_algebra_is_closed() {
        // chain -3 ⪯ -2 ⪯ -1 ⪯ 1 ⪯ 2 ⪯ 3 closes to the full Borel of sp(6)
        let p = SignedPoset::build(Family::C, 3, &[(-3, -2), (-2, -1), (-1, 1)]).unwrap();
        let alg = LiePosetAlgebra::new(&p).unwrap();
        assert_eq!(alg.dim(), 3 + 9);
        check_antisymmetry_and_jacobi(&alg);
        let q = SignedPoset::build(Family::D, 3, &[(-3, -2), (-2, -1), (-2, 1)]).unwrap();
        let alg = LiePosetAlgebra::new(&q).unwrap();
        check_antisymmetry_and_jacobi(&alg);
    }

    #[test]
    fn render_linear_combination() {
        let names = vec!["H(1)".to_string(), "Z(1)".to_string()];
        assert_eq!(rat_lc(&[(1, 2)]).render(&names), "2*Z(1)");
        assert_eq!(rat_lc(&[(0, -1), (1, 1)]).render(&names), "-H(1) + Z(1)");
        assert_eq!(LinearCombination::zero().render(&names), "0");
    }
}
