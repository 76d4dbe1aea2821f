use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    NotPrime(u64),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("matrix is singular over F_{0}")]
    SingularMatrix(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator {index} is not homogeneous")]
    Inhomogeneous { index: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("group closure exceeds {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("the action is modular (p divides |G| = {order})")]
    ModularAction { order: usize },
    #[error("the action is non-modular (p does not divide |G| = {order})")]
    NonModular { order: usize },
    #[error("polynomial is not in the computed subalgebra (raise the degree bound)")]
    NotInSubalgebra,
    #[error("the ideal generates the unit ideal of the presentation ring")]
    UnitIdeal,
    #[error("invalid cyclic module: {0}")]
    InvalidModule(String),
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("hilbert certificate failed at degree {degree}: presentation gives {presented}, invariants give {expected}")]
    CertificateFailed {
        degree: u32,
        presented: u64,
        expected: u64,
    },
    #[error("diagnostic inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit(_) | Error::GroupTooLarge { .. })
    }
}
