use serde::{Deserialize, Serialize};

/// Upper bounds on the exhaustive searches. Every search checks its relevant
/// dimension up front and fails with [`crate::Error::SizeLimit`] instead of
/// approximating.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Elements produced by lattice constructors (products, doublings, Cg lattices).
    pub max_elements: usize,
    /// Target size for sublattice and isomorphism search.
    pub max_search_target: usize,
    /// Lattice size for raw rank-map enumeration.
    pub max_rank_lattice: usize,
    /// Lattice size for the linear-order search behind reasonableness.
    pub max_reasonable_lattice: usize,
    /// Ground size for CPP exhaustion and representation isomorphism.
    pub max_cpp_ground: usize,
    /// Ground size for power representations.
    pub max_power_ground: usize,
    /// Number of kernels visited by a canonical Ramsey survey.
    pub max_survey_kernels: usize,
    /// Base-set size for canonical subset search.
    pub max_ramsey_base: usize,
    /// Number of join-irreducibles for the down-set construction.
    pub max_join_irreducibles: usize,
    /// Carrier size for congruence-lattice computation.
    pub max_carrier: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_elements: 4096,
            max_search_target: 64,
            max_rank_lattice: 8,
            max_reasonable_lattice: 8,
            max_cpp_ground: 9,
            max_power_ground: 4096,
            max_survey_kernels: 200_000,
            max_ramsey_base: 64,
            max_join_irreducibles: 20,
            max_carrier: 64,
        }
    }
}
