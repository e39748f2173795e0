use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what}: search budget of {budget} exceeded")]
    BudgetExceeded { what: &'static str, budget: usize },
    #[error("group order {order} exceeds bound {bound}")]
    BoundExceeded { order: BigUint, bound: u64 },
    #[error("generator assignment does not extend to a homomorphism")]
    NotHomomorphism,
    #[error("action rule is not a permutation of the new domain")]
    NotBijectiveAction,
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("group is not Fitting-free: {0}")]
    NotFittingFree(String),
    #[error("group is not simple")]
    NotSimple,
    #[error("no simple group of order {0} in the name table")]
    UnknownOrder(BigUint),
    #[error("name ambiguous at order {0}: {1}")]
    Ambiguous(BigUint, String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("recognition hint required: {0}")]
    HintRequired(String),
    #[error("inconsistent hint: {0}")]
    BadHint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
