//! Finite MV-algebras, threshold terms, filters, semi-states and tense
//! operators, with exhaustive checkers for their axioms.
//!
//! Every computation is exact. Algebras are finite products of Łukasiewicz
//! chains `{0, 1/m, ..., 1}`; the standard algebra `[0,1]` is modelled over a
//! rational scalar type.

pub mod dyadic;
pub mod error;
pub mod filters;
pub mod frames;
pub mod mv;
pub mod report;
pub mod repr;
pub mod scalar;
pub mod states;
pub mod suite;
pub mod terms;
pub mod valuation;

pub use dyadic::{BitSequence, DyadicRational};
pub use error::{Error, Result};
pub use mv::{BinaryOp, Element, FiniteMvAlgebra, MvOps};
pub use report::{AxiomCheck, AxiomReport};
pub use scalar::{Scalar, StandardMv};
pub use terms::Term;
pub use valuation::{MvMorphism, ValuationTable};

/// Exact rationals with machine-word numerators.
pub type Rat = num_rational::Ratio<i64>;
/// Exact rationals with unbounded numerators.
pub type BigRat = num_rational::Ratio<num_bigint::BigInt>;
/// Valuation table into `[0,1] ∩ ℚ`.
pub type Valuation = ValuationTable<Rat>;
/// MV-morphism into `[0,1] ∩ ℚ`.
pub type Morphism = MvMorphism<Rat>;
