//! Lie poset algebras of types A, B, C and D: construction, index,
//! Frobenius functionals and spectra, with exact rational arithmetic.

pub mod algebra;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod frobenius;
pub mod graph;
pub mod harness;
pub mod index;
pub mod io;
pub mod isomorphism;
pub mod poset;
pub mod reduction;

pub use algebra::{BasisElement, LiePosetAlgebra, LinearCombination, LinearForm};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, Rational};
pub use frobenius::{Functional, PrincipalElement, SpectrumReport};
pub use graph::{Component, RelationGraph};
pub use index::{index_formula, index_oracle, CommutatorMatrix, FunctionalPoint};
pub use poset::{Family, HeightPair, MirrorMode, SignedPoset};
pub use reduction::{reduce, ReductionTrace};
