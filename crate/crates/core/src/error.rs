use thiserror::Error;

/// Errors raised by the group engine and the decision procedures built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree must be positive")]
    EmptyDegree,
    #[error("group order cap {cap} exceeded (enumerated {reached} elements)")]
    OrderCapExceeded { cap: usize, reached: usize },
    #[error("subgroup lattice cap {cap} exceeded (found {reached} subgroups)")]
    LatticeCapExceeded { cap: usize, reached: usize },
    #[error("element is not a member of the parent group")]
    NotInParent,
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not contained in the ambient subgroup")]
    NotContained,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} is listed in more than one block")]
    OverlappingBlocks(u64),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("unknown block index {0}")]
    UnknownBlock(usize),
    #[error("subgroup is not sigma-subnormal in the ambient group")]
    NotSigmaSubnormal,
}

pub type Result<T> = std::result::Result<T, GroupError>;
