use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice is not saturated: quotient has torsion {torsion:?}")]
    NotSaturated { torsion: Vec<String> },

    #[error("enumeration bound exceeded: {what} has size {size}, bound is {bound}")]
    TooLarge {
        what: String,
        size: u128,
        bound: u128,
    },

    #[error("subgroup does not live in the given group")]
    NotSubgroup,

    #[error("generator {index} is not an automorphism of the group")]
    NotAutomorphism { index: usize },

    #[error("permutation {perm:?} is not an automorphism of the Dynkin diagram of {ty}")]
    NotDiagramAutomorphism { ty: String, perm: Vec<usize> },

    #[error("bad modulus: {0}")]
    BadModulus(String),

    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("group is not solvable")]
    NotSolvable,

    #[error("criterion {criterion} disagrees with structure: formula says {formula}, structure says {structural}")]
    CriterionMismatch {
        criterion: &'static str,
        formula: bool,
        structural: bool,
    },

    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),

    #[error("invalid datum: {0}")]
    InvalidDatum(String),
}

impl Error {
    /// True for errors caused by a resource or enumeration bound.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
