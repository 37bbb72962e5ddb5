use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A fixed-width scalar could not hold an intermediate value.
    #[error("integer overflow in fixed-width arithmetic")]
    Overflow,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree {degree} outside the computable range {lo}..={hi}")]
    DegreeOutOfRange { degree: usize, lo: usize, hi: usize },

    #[error("truncation (p_max={p_max}, q_max={q_max}) is insufficient for degree {degree}; need both >= {needed} (p_max may stop at the space dimension {dim})")]
    InsufficientTruncation {
        degree: usize,
        p_max: usize,
        q_max: usize,
        needed: usize,
        dim: usize,
    },

    #[error("cochain is not a cocycle: coboundary is nonzero at cell {cell}")]
    NotACocycle { cell: usize },

    #[error("differentials do not compose to zero between degrees {degree} and {next}", next = degree + 1)]
    NotAComplex { degree: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("groupoid morphism does not commute with {0}")]
    MorphismNotFunctorial(String),

    #[error("invalid discrete torsion: {0}")]
    InvalidTorsion(String),

    #[error("invalid loop: {0}")]
    InvalidLoop(String),

    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("index {index} out of range (count {count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
