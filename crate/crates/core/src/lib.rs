//! Finite combinatorics around lattices of elementary substructures:
//! finite lattices and their classification, ranked lattices with the Blass
//! and Gaifman conditions, representations into equivalence-relation lattices
//! with canonical partition properties, canonical Ramsey search for pair
//! functions, congruence lattices of finite algebras, and reasonableness of
//! equivalenced lattices.
//!
//! Every search here is exhaustive and bounded by a [`Budget`]; exceeding a
//! bound is an error, never an approximation.

pub mod budget;
pub mod congruence;
pub mod constructions;
pub mod diversity;
pub mod dot;
pub mod embed;
pub mod eqrel;
pub mod error;
pub mod format;
pub mod lattice;
pub mod ramsey;
pub mod ranked;
pub mod representation;

pub use budget::Budget;
pub use congruence::FiniteAlgebra;
pub use constructions::StandardKind;
pub use diversity::EquivalencedLattice;
pub use embed::LatticeEmbedding;
pub use eqrel::EquivalenceRelation;
pub use error::{Error, Result};
pub use lattice::FiniteLattice;
pub use ramsey::PairFunction;
pub use ranked::RankedLattice;
pub use representation::Representation;

/// Lattice elements are dense indices `0..size`.
pub type Element = usize;

/// A yes/no answer together with the counterexample (or certificate) that
/// justifies it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Verdict<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn pass_with(witness: W) -> Self {
        Verdict {
            holds: true,
            witness: Some(witness),
        }
    }

    pub fn fail(witness: W) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}
