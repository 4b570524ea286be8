use thiserror::Error;

/// Errors raised by the library.
///
/// `TheoremViolation` is kept apart from input errors: it means a computed
/// object contradicts one of the structural results this crate checks, and
/// carries a serialized witness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {coord} of element {elem:?} is out of range for modulus {modulus}")]
    InvalidElement {
        elem: Vec<u64>,
        coord: usize,
        modulus: u64,
    },

    #[error("{what} of size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u64,
    },

    #[error("operation table is not an abelian p-group: {0}")]
    NotAGroup(String),

    #[error("invalid ring structure: {0}")]
    InvalidStructure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    SpecMismatch(String),

    #[error("regular subgroup is not abelian, so it induces no commutative ring")]
    NonAbelianRegularSubgroup,

    #[error("theorem violation ({theorem}): {witness}")]
    TheoremViolation {
        theorem: &'static str,
        witness: serde_json::Value,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn violation(theorem: &'static str, witness: serde_json::Value) -> Self {
        Error::TheoremViolation { theorem, witness }
    }
}
