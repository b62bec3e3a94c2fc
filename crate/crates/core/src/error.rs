use thiserror::Error;

/// Errors surfaced by the library. Shape and precondition violations on
/// user-supplied data are errors, never panics; programmer errors on
/// internal indices still assert.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-isotropic vector: {0}")]
    NonIsotropic(String),

    #[error("dimension {dim} too large, use generators (enumeration guard is {guard})")]
    TooLarge { dim: usize, guard: usize },

    #[error("action not closed on the point set: escaping point {0}")]
    NotClosed(String),

    #[error("orbit label is not invariant: {member} has label {label} but {other} in the same orbit has label {other_label}")]
    MixedLabels {
        member: String,
        label: String,
        other: String,
        other_label: String,
    },

    #[error("matrix is not an isometry of the given form")]
    NotIsometry,

    #[error("covering is not special: value on the fiber class must be 1")]
    NotSpecial,

    #[error("covering does not vanish on the covering kernel (not in the pulled-back family)")]
    NotInduced,

    #[error("does not preserve ker pi_*")]
    KernelNotPreserved,

    #[error("basis is not symplectic")]
    NotSymplecticBasis,

    #[error("wrong host space: {0}")]
    WrongHost(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal defect: {0}")]
    Defect(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
