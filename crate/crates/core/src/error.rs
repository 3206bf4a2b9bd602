use crate::Element;

/// Which bound failed to exist when closing an order into a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl std::fmt::Display for Bound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Bound::Meet => f.write_str("meet"),
            Bound::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("not a partial order: {x} <= {y} and {y} <= {x} with {x} != {y}")]
    NotAPartialOrder { x: Element, y: Element },

    #[error("not a lattice: elements {x} and {y} have no unique {bound}")]
    NotALattice { x: Element, y: Element, bound: Bound },

    #[error("lattice axiom violated: {0}")]
    AxiomViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size limit exceeded for {dimension}: requested {requested}, limit {limit}")]
    SizeLimit {
        dimension: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("ground set mismatch: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("subset has {size} points, at least {min} required")]
    SubsetTooSmall { size: usize, min: usize },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_limit(dimension: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        Err(Error::SizeLimit {
            dimension,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
