use alloc::string::String;

/// Errors raised by the core algebra.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },

    #[error("vertex {vertex} is out of range for degree {degree}")]
    VertexOutOfRange { vertex: i64, degree: usize },

    #[error("vertex {vertex} appears in more than one block")]
    DuplicateVertex { vertex: i64 },

    #[error("vertex {vertex} is not covered by any block")]
    MissingVertex { vertex: i64 },

    #[error("element cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("generator list is empty")]
    NoGenerators,

    #[error("product of elements {left} and {right} leaves the element set")]
    NotClosed { left: u32, right: u32 },

    #[error("element {index} is out of range for a monoid of size {size}")]
    IndexOutOfRange { index: u32, size: usize },

    #[error("invalid semilattice: {0}")]
    InvalidSemilattice(String),

    #[error("precondition failed: {0}")]
    State(String),

    #[error("unknown family or semilattice name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
