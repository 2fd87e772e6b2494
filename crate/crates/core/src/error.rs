use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generators have gcd {gcd}, so they do not generate a numerical semigroup")]
    NotNumerical { gcd: u64 },

    #[error("generator list must be non-empty and contain only positive integers")]
    EmptyGenerators,

    #[error("tuple is not in the Kunz polyhedron: {0}")]
    NotInPolyhedron(String),

    #[error("{n} is not an element of the semigroup")]
    NotAnElement { n: u64 },

    #[error("input rows do not cut a face of the group cone: {0}")]
    NotAFace(String),

    #[error("invalid cover relations: {0}")]
    InvalidCovers(String),

    #[error("operation requires a trivial Kunz subgroup, found subgroup {subgroup:?}")]
    NotSemigroupFace { subgroup: Vec<usize> },

    #[error("Kunz tuple does not lie in the relative interior of the face: {0}")]
    NotOnFace(String),

    #[error("tuple gives a semigroup of multiplicity {actual}, smaller than m = {m}")]
    MultiplicityBelow { m: usize, actual: u64 },

    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not an element of the poset ground set")]
    NotInGround(usize),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
