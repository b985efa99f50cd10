//! Structure-constant checks of the isomorphisms `g_D(P) ≅ g_C(P)` and
//! `g_B(P) ≅ g_D(P∖{0})`.

use std::collections::BTreeMap;

use crate::algebra::{BasisElement, LiePosetAlgebra, LinearCombination};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poset::{Family, SignedPoset};

/// A sign per type-D basis element; rescaling the type-D basis by these
/// signs reproduces the type-C structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignRescaling {
    pub basis: Vec<BasisElement>,
    pub signs: Vec<i8>,
}

impl SignRescaling {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .basis
            .iter()
            .zip(&self.signs)
            .map(|(b, s)| format!("{b}:{}", if *s > 0 { "+" } else { "-" }))
            .collect();
        parts.join(" ")
    }
}

fn c_partner(b: BasisElement) -> BasisElement {
    match b {
        BasisElement::Y(i, j) => BasisElement::Y(j, i),
        other => other,
    }
}

fn constants(alg: &LiePosetAlgebra) -> BTreeMap<(usize, usize, usize), Rational> {
    alg.structure_constants().map(|(k, l, m, c)| ((k, l, m), c.clone())).collect()
}

pub fn verify_cd_isomorphism(p: &SignedPoset) -> Result<SignRescaling> {
    if p.family() != Family::D {
        return Err(Error::UnsupportedPoset("expected a type-D poset".into()));
    }
    if let Some(i) = (1..=p.n() as i64).find(|&i| p.leq(-i, i)) {
        return Err(Error::UnsupportedPoset(format!("-{i} <= {i} has no type-C counterpart")));
    }
    let d = LiePosetAlgebra::new(p)?;
    let c = LiePosetAlgebra::new(&p.with_family(Family::C)?)?;
    let to_c: Vec<usize> = d
        .basis()
        .iter()
        .map(|&b| c.index_of(c_partner(b)).ok_or(Error::NoSignRescaling))
        .collect::<Result<_>>()?;
    if c.dim() != d.dim() {
        return Err(Error::NoSignRescaling);
    }
    let cd = constants(&d);
    let cc = constants(&c);

    // s_k + s_l + s_m = [signs differ] over GF(2), in type-D indices
    let mut equations: Vec<(Vec<bool>, bool)> = Vec::new();
    let mut matched = 0;
    for (&(k, l, m), v) in &cd {
        let (ck, cl, cm) = (to_c[k], to_c[l], to_c[m]);
        let target = if ck < cl {
            cc.get(&(ck, cl, cm)).cloned()
        } else {
            cc.get(&(cl, ck, cm)).map(|x| -x)
        };
        let Some(target) = target else { return Err(Error::NoSignRescaling) };
        if target != *v && target != -v.clone() {
            return Err(Error::NoSignRescaling);
        }
        let mut row = vec![false; d.dim()];
        for x in [k, l, m] {
            row[x] ^= true;
        }
        equations.push((row, target != *v));
        matched += 1;
    }
    if matched != cc.len() {
        return Err(Error::NoSignRescaling);
    }
    let bits = solve_gf2(equations, d.dim()).ok_or(Error::NoSignRescaling)?;
    let signs: Vec<i8> = bits.iter().map(|&b| if b { -1 } else { 1 }).collect();

    // direct re-check of the rescaled constants
    for (&(k, l, m), v) in &cd {
        let s = Rational::from_integer((signs[k] * signs[l] * signs[m]).into());
        let lhs = v * s;
        let rhs = c.bracket_indices(to_c[k], to_c[l]).coeff(to_c[m]);
        if lhs != rhs {
            return Err(Error::NoSignRescaling);
        }
    }
    Ok(SignRescaling { basis: d.basis().to_vec(), signs })
}

/// Gaussian elimination over GF(2); free variables are set to zero.
fn solve_gf2(mut eqs: Vec<(Vec<bool>, bool)>, vars: usize) -> Option<Vec<bool>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..vars {
        let Some(p) = (r..eqs.len()).find(|&i| eqs[i].0[c]) else { continue };
        eqs.swap(r, p);
        let (pivot_row, pivot_rhs) = eqs[r].clone();
        for (i, (row, rhs)) in eqs.iter_mut().enumerate() {
            if i != r && row[c] {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x ^= y;
                }
                *rhs ^= pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if eqs[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; vars];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = eqs[i].1;
    }
    Some(x)
}

/// Structure constants of `g_B(P)` and `g_D(P∖{0})` agree element for element.
pub fn verify_b_reduction(p: &SignedPoset) -> Result<bool> {
    if p.family() != Family::B {
        return Err(Error::UnsupportedPoset("expected a type-B poset".into()));
    }
    if !p.zero_isolated() {
        return Err(Error::UnsupportedPoset("0 must be unrelated to every other element".into()));
    }
    let b = LiePosetAlgebra::new(p)?;
    let d = LiePosetAlgebra::new(&p.without_zero()?)?;
    if b.basis() != d.basis() {
        return Ok(false);
    }
    let same = (0..b.dim()).all(|k| {
        (k + 1..b.dim()).all(|l| {
            let x: LinearCombination = b.bracket_indices(k, l);
            x == d.bracket_indices(k, l)
        })
    });
    Ok(same)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_h01;

    #[test]
    fn path3_as_type_d() {
        let p = SignedPoset::build(Family::D, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)]).unwrap();
        let s = verify_cd_isomorphism(&p).unwrap();
        assert_eq!(s.signs.len(), 5);
    }

    #[test]
    fn single_edge() {
        let p = SignedPoset::build(Family::D, 2, &[(-2, 1), (-1, 2)]).unwrap();
        let s = verify_cd_isomorphism(&p).unwrap();
        assert_eq!(s.basis, vec![BasisElement::H(1), BasisElement::H(2), BasisElement::Y(2, 1)]);
        assert_eq!(s.render(), "H(1):+ H(2):+ Y(2,1):+");
    }

    #[test]
    fn antichain_is_trivial() {
        let p = SignedPoset::build(Family::D, 3, &[]).unwrap();
        assert_eq!(verify_cd_isomorphism(&p).unwrap().signs, vec![1, 1, 1]);
    }

    #[test]
    fn d_corpus_n3() {
        for (_, p) in enumerate_h01(Family::D, 3) {
            verify_cd_isomorphism(&p).unwrap();
        }
    }

    #[test]
    fn separable_d_poset() {
        let p = SignedPoset::build(Family::D, 3, &[(-3, -1), (-1, 2)]).unwrap();
        assert_eq!(p.height().total_height, 2);
        verify_cd_isomorphism(&p).unwrap();
        let q = SignedPoset::build(Family::D, 3, &[(-3, -1), (-2, -1), (-1, 2)]).unwrap();
        assert!(q.leq(-2, 2));
        assert!(matches!(verify_cd_isomorphism(&q), Err(Error::UnsupportedPoset(_))));
    }

    #[test]
    fn b_reduction_examples() {
        let edge = SignedPoset::build(Family::B, 2, &[(-2, 1), (-1, 2)]).unwrap();
        assert!(verify_b_reduction(&edge).unwrap());
        let anti = SignedPoset::build(Family::B, 1, &[]).unwrap();
        assert!(verify_b_reduction(&anti).unwrap());
        let path3 = SignedPoset::build(Family::B, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)]).unwrap();
        assert!(verify_b_reduction(&path3).unwrap());
        for (_, p) in enumerate_h01(Family::B, 3) {
            assert!(verify_b_reduction(&p).unwrap());
        }
    }

    #[test]
    fn b_reduction_needs_isolated_zero() {
        let p = SignedPoset::build(Family::B, 1, &[(-1, 0)]).unwrap();
        assert!(verify_b_reduction(&p).is_err());
    }

    #[test]
    fn gf2_inconsistent() {
        let eqs = vec![(vec![true, false], true), (vec![true, false], false)];
        assert_eq!(solve_gf2(eqs, 2), None);
        let eqs = vec![(vec![true, true], true), (vec![false, true], true)];
        assert_eq!(solve_gf2(eqs, 2), Some(vec![false, true]));
    }
}
