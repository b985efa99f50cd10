//! Frobenius functionals, principal elements and spectra.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{matrix_form, BasisElement, LiePosetAlgebra, LinearCombination};
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, ExactMatrix, Rational};
use crate::index::{index_formula, sample_nonzero, CommutatorMatrix, FunctionalPoint};
use crate::poset::SignedPoset;

/// A linear functional `Σ c · E*_{x,y}` on matrices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Functional {
    pub coefficients: BTreeMap<(i64, i64), Rational>,
}

impl Functional {
    pub fn add(&mut self, pos: (i64, i64), c: Rational) {
        let v = self.coefficients.entry(pos).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.coefficients.remove(&pos);
        }
    }

    pub fn is_supported_on(&self, p: &SignedPoset) -> bool {
        let form = matrix_form(p);
        self.coefficients.keys().all(|pos| form.contains(pos))
    }

    /// `F(x_k)` for every basis element.
    pub fn point(&self, alg: &LiePosetAlgebra) -> FunctionalPoint {
        let values = (0..alg.dim())
            .map(|k| {
                alg.realize(k)
                    .entries()
                    .iter()
                    .filter_map(|(pos, v)| self.coefficients.get(pos).map(|c| c * v))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect();
        FunctionalPoint { values }
    }

    pub fn render(&self) -> String {
        if self.coefficients.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .map(|(&(x, y), c)| if c.is_one() { format!("E*({x},{y})") } else { format!("{c}*E*({x},{y})") })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Every relation-graph component is unicyclic and its cycle is odd.
pub fn is_frobenius_by_graph(p: &SignedPoset) -> Result<bool> {
    let g = p.relation_graph()?;
    Ok(g.graph_components().iter().all(|c| c.is_unicyclic && c.has_odd_cycle))
}

/// `Σ_{−i⪯j, i<j} E*₋ᵢ,ⱼ + Σ_{−i⪯i} E*₋ᵢ,ᵢ`.
pub fn frobenius_functional(p: &SignedPoset) -> Result<Functional> {
    if !is_frobenius_by_graph(p)? {
        let index = index_formula(p)?.value;
        return Err(Error::NotFrobenius { index });
    }
    let mut f = Functional::default();
    for (x, y) in p.rel_pm() {
        let i = -x;
        if i <= y {
            f.add((x, y), Rational::one());
        }
    }
    Ok(f)
}

/// A functional with random nonzero coefficients on every allowed position.
pub fn random_functional(p: &SignedPoset, seed: u64) -> Functional {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Functional::default();
    for pos in matrix_form(p) {
        f.add(pos, rat(sample_nonzero(&mut rng)));
    }
    f
}

pub fn kirillov_form(alg: &LiePosetAlgebra, f: &Functional) -> ExactMatrix {
    CommutatorMatrix::new(alg).evaluate(&f.point(alg)).expect("point matches the basis")
}

pub fn kernel_dim(p: &SignedPoset, f: &Functional) -> Result<usize> {
    let alg = LiePosetAlgebra::new(p)?;
    let b = kirillov_form(&alg, f);
    Ok(alg.dim() - b.rank())
}

/// Which printed closed form a diagonal principal element agrees with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SignConvention {
    /// `cᵢ = ½` on `P⁺`, `cᵢ = −½` on `P⁻`
    PositiveHalf,
    /// `c₋ⱼ = ½`, `cⱼ = −½` for `j ∈ P⁺`
    NegativeHalf,
}

#[derive(Debug, Clone)]
pub struct PrincipalElement {
    pub coefficients: LinearCombination,
    names: Vec<String>,
    /// `cᵢ` for every ground-set element, when the element is diagonal.
    pub diagonal: Option<BTreeMap<i64, Rational>>,
}

impl PrincipalElement {
    pub fn render(&self) -> String {
        self.coefficients.render(&self.names)
    }

    /// Entries are `±½` off zero and `c₋ᵢ = −cᵢ`.
    pub fn has_half_pattern(&self) -> bool {
        let Some(d) = &self.diagonal else { return false };
        let half = ratio(1, 2);
        d.iter().all(|(&i, c)| {
            let mirror = d.get(&-i).cloned().unwrap_or_else(Rational::zero);
            *c == -mirror && (i == 0 || c.abs() == half)
        })
    }

    pub fn convention(&self) -> Option<SignConvention> {
        let d = self.diagonal.as_ref()?;
        let half = ratio(1, 2);
        let pos = d.iter().filter(|(&i, _)| i > 0);
        let neg = d.iter().filter(|(&i, _)| i < 0);
        if pos.clone().all(|(_, c)| *c == half) && neg.clone().all(|(_, c)| *c == -&half) {
            Some(SignConvention::PositiveHalf)
        } else if pos.clone().all(|(_, c)| *c == -&half) && neg.clone().all(|(_, c)| *c == half) {
            Some(SignConvention::NegativeHalf)
        } else {
            None
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: BTreeMap<String, String> =
            self.coefficients.terms().iter().map(|(&k, c)| (self.names[k].clone(), c.to_string())).collect();
        let diagonal = self
            .diagonal
            .as_ref()
            .map(|d| d.iter().map(|(i, c)| (i.to_string(), c.to_string())).collect::<BTreeMap<_, _>>());
        serde_json::json!({
            "coefficients": coeffs,
            "diagonal": diagonal,
            "half_pattern": self.has_half_pattern(),
            "convention": self.convention(),
        })
    }
}

/// Solves `F([F̂, x_k]) = F(x_k)` for every basis element `x_k`.
pub fn principal_element(alg: &LiePosetAlgebra, f: &Functional) -> Result<PrincipalElement> {
    let point = f.point(alg);
    let b = kirillov_form(alg, f);
    let kernel_dim = alg.dim() - b.rank();
    if kernel_dim > 0 {
        return Err(Error::SingularForm { kernel_dim });
    }
    let a = b.transpose().solve(&point.values)?.ok_or(Error::SingularForm { kernel_dim: 0 })?;
    let mut coefficients = LinearCombination::zero();
    for (k, c) in a.into_iter().enumerate() {
        coefficients.add_term(k, c);
    }
    let m = alg.realize_combination(&coefficients);
    let diagonal = m.is_diagonal().then(|| alg.poset().elements().iter().map(|&i| (i, m.get((i, i)))).collect());
    Ok(PrincipalElement { coefficients, names: alg.names(), diagonal })
}

/// `F([F̂, x_k]) = F(x_k)` for every `k`, exactly.
pub fn is_fixed_point(alg: &LiePosetAlgebra, f: &Functional, fhat: &PrincipalElement) -> bool {
    let point = f.point(alg);
    (0..alg.dim()).all(|k| {
        let br = alg.bracket_combinations(&fhat.coefficients, &LinearCombination::basis(k));
        br.evaluate(&point.values) == point.values[k]
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub eigenvalues: BTreeMap<Rational, usize>,
    /// Every basis element was an eigenvector.
    pub from_eigenbasis: bool,
}

impl SpectrumReport {
    pub fn dim(&self) -> usize {
        self.eigenvalues.values().sum()
    }

    pub fn count(&self, v: i64) -> usize {
        self.eigenvalues.get(&rat(v)).copied().unwrap_or(0)
    }

    pub fn zero_count(&self) -> usize {
        self.count(0)
    }

    pub fn one_count(&self) -> usize {
        self.count(1)
    }

    pub fn is_binary(&self) -> bool {
        self.zero_count() == self.one_count() && self.zero_count() + self.one_count() == self.dim()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ev: BTreeMap<String, usize> = self.eigenvalues.iter().map(|(v, c)| (v.to_string(), *c)).collect();
        serde_json::json!({
            "eigenvalues": ev,
            "dim": self.dim(),
            "zero_count": self.zero_count(),
            "one_count": self.one_count(),
            "binary": self.is_binary(),
            "from_eigenbasis": self.from_eigenbasis,
        })
    }
}

impl fmt::Display for SpectrumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.eigenvalues.iter().map(|(v, c)| format!("{v}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Eigenvalues of `ad(F̂)`, read off an eigenbasis or a triangular
/// reordering of the ad-matrix.
pub fn spectrum(alg: &LiePosetAlgebra, fhat: &PrincipalElement) -> Result<SpectrumReport> {
    let d = alg.dim();
    let columns: Vec<LinearCombination> =
        (0..d).map(|k| alg.bracket_combinations(&fhat.coefficients, &LinearCombination::basis(k))).collect();
    let mut eigenvalues = BTreeMap::new();
    let eigenbasis = columns.iter().enumerate().all(|(k, c)| c.terms().keys().all(|&r| r == k));
    if !eigenbasis && !triangular_by_permutation(&columns) {
        return Err(Error::NonEigenbasis);
    }
    for (k, c) in columns.iter().enumerate() {
        *eigenvalues.entry(c.coeff(k)).or_insert(0) += 1;
    }
    Ok(SpectrumReport { eigenvalues, from_eigenbasis: eigenbasis })
}

/// The off-diagonal support of the ad-matrix, as a digraph `k → r`, is acyclic.
fn triangular_by_permutation(columns: &[LinearCombination]) -> bool {
    let d = columns.len();
    let mut indegree = vec![0usize; d];
    for (k, c) in columns.iter().enumerate() {
        for &r in c.terms().keys().filter(|&&r| r != k) {
            indegree[r] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..d).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(k) = queue.pop_front() {
        seen += 1;
        for &r in columns[k].terms().keys().filter(|&&r| r != k) {
            indegree[r] -= 1;
            if indegree[r] == 0 {
                queue.push_back(r);
            }
        }
    }
    seen == d
}

/// Functional, principal element and spectrum of a Frobenius poset.
#[derive(Debug, Clone)]
pub struct FrobeniusAnalysis {
    pub functional: Functional,
    pub kernel_dim: usize,
    pub principal: PrincipalElement,
    pub spectrum: SpectrumReport,
}

pub fn analyze(p: &SignedPoset) -> Result<FrobeniusAnalysis> {
    let alg = LiePosetAlgebra::new(p)?;
    let functional = frobenius_functional(p)?;
    let kernel_dim = alg.dim() - kirillov_form(&alg, &functional).rank();
    let principal = principal_element(&alg, &functional)?;
    let spectrum = spectrum(&alg, &principal)?;
    Ok(FrobeniusAnalysis { functional, kernel_dim, principal, spectrum })
}

/// Spectrum from a random Frobenius functional, trying successive seeds.
pub fn spectrum_from_random_functional(alg: &LiePosetAlgebra, seed: u64, attempts: usize) -> Result<SpectrumReport> {
    for k in 0..attempts as u64 {
        let f = random_functional(alg.poset(), seed.wrapping_add(k));
        match principal_element(alg, &f) {
            Ok(fhat) => return spectrum(alg, &fhat),
            Err(Error::SingularForm { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateEvaluation { attempts })
}

/// The principal element is a combination of H elements only.
pub fn is_toral(alg: &LiePosetAlgebra, fhat: &PrincipalElement) -> bool {
    fhat.coefficients.terms().keys().all(|&k| matches!(alg.basis()[k], BasisElement::H(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Family;
    use crate::enumerate::enumerate_h01;
    use crate::graph::RelationGraph;

    fn from_graph(family: Family, n: usize, edges: &[(i64, i64)]) -> SignedPoset {
        let mut g = RelationGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g.to_poset(family).unwrap()
    }

    fn looped_path() -> SignedPoset {
        from_graph(Family::C, 3, &[(1, 2), (2, 3), (2, 2)])
    }

    #[test]
    fn graph_criterion_examples() {
        assert!(is_frobenius_by_graph(&looped_path()).unwrap());
        assert!(!is_frobenius_by_graph(&from_graph(Family::C, 3, &[(1, 2), (2, 3)])).unwrap());
        assert!(!is_frobenius_by_graph(&from_graph(Family::C, 4, &[(1, 2), (2, 3), (3, 4), (1, 4)])).unwrap());
        assert!(is_frobenius_by_graph(&from_graph(Family::D, 3, &[(1, 2), (2, 3), (1, 3)])).unwrap());
    }

    #[test]
    fn single_loop() {
        let p = from_graph(Family::C, 1, &[(1, 1)]);
        let alg = LiePosetAlgebra::new(&p).unwrap();
        let f = frobenius_functional(&p).unwrap();
        assert_eq!(f.render(), "E*(-1,1)");
        assert_eq!(kirillov_form(&alg, &f).rank(), 2);
        let fhat = principal_element(&alg, &f).unwrap();
        assert_eq!(fhat.render(), "1/2*H(1)");
        let d = fhat.diagonal.clone().unwrap();
        assert_eq!(d[&-1], ratio(1, 2));
        assert_eq!(d[&1], ratio(-1, 2));
        assert_eq!(fhat.convention(), Some(SignConvention::NegativeHalf));
        let s = spectrum(&alg, &fhat).unwrap();
        assert_eq!(s.to_string(), "{0:1, 1:1}");
        assert!(s.is_binary() && s.from_eigenbasis);
    }

    #[test]
    fn looped_path_functional() {
        let p = looped_path();
        let f = frobenius_functional(&p).unwrap();
        assert_eq!(f.render(), "E*(-2,2) + E*(-2,3) + E*(-1,2)");
        let a = analyze(&p).unwrap();
        assert_eq!(a.kernel_dim, 0);
        assert!(a.principal.has_half_pattern());
        assert_eq!(a.principal.convention(), Some(SignConvention::NegativeHalf));
        assert_eq!(a.spectrum.to_string(), "{0:3, 1:3}");
    }

    #[test]
    fn triangle_spectrum() {
        let p = from_graph(Family::C, 3, &[(1, 2), (2, 3), (1, 3)]);
        let a = analyze(&p).unwrap();
        assert_eq!(a.functional.coefficients.len(), 3);
        assert!(a.principal.has_half_pattern());
        assert!(a.spectrum.is_binary());
        assert_eq!((a.spectrum.zero_count(), a.spectrum.one_count()), (3, 3));
    }

    #[test]
    fn non_frobenius() {
        let p = from_graph(Family::C, 3, &[(1, 2), (2, 3)]);
        assert_eq!(frobenius_functional(&p), Err(Error::NotFrobenius { index: 1 }));
        let mut f = Functional::default();
        f.add((-2, 1), rat(1));
        f.add((-3, 2), rat(1));
        assert_eq!(kernel_dim(&p, &f).unwrap(), 1);
        assert_eq!(kernel_dim(&p, &Functional::default()).unwrap(), 5);
        let alg = LiePosetAlgebra::new(&p).unwrap();
        assert_eq!(principal_element(&alg, &f).unwrap_err(), Error::SingularForm { kernel_dim: 1 });
    }

    #[test]
    fn type_d_triangle() {
        let p = from_graph(Family::D, 3, &[(1, 2), (2, 3), (1, 3)]);
        let a = analyze(&p).unwrap();
        assert_eq!(a.kernel_dim, 0);
        assert!(a.principal.has_half_pattern());
        assert!(a.spectrum.is_binary());
    }

    #[test]
    fn frobenius_corpus_c3() {
        for (_, p) in enumerate_h01(Family::C, 3) {
            if !is_frobenius_by_graph(&p).unwrap() {
                continue;
            }
            let alg = LiePosetAlgebra::new(&p).unwrap();
            let a = analyze(&p).unwrap();
            assert!(a.functional.is_supported_on(&p));
            assert!(is_fixed_point(&alg, &a.functional, &a.principal));
            assert!(is_toral(&alg, &a.principal));
            assert!(a.principal.has_half_pattern(), "{p}");
            assert_eq!(a.spectrum.dim(), alg.dim());
            let other = spectrum_from_random_functional(&alg, 9, 4).unwrap();
            assert_eq!(other.eigenvalues, a.spectrum.eigenvalues, "{p}");
        }
    }

    #[test]
    fn random_functional_principal_element_is_not_diagonal() {
        let p = looped_path();
        let alg = LiePosetAlgebra::new(&p).unwrap();
        let f = random_functional(&p, 4);
        assert!(f.is_supported_on(&p));
        let fhat = principal_element(&alg, &f).unwrap();
        assert!(is_fixed_point(&alg, &f, &fhat));
        let s = spectrum(&alg, &fhat).unwrap();
        assert!(s.is_binary());
    }
}
