use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall in two groups: malformed input (bad shapes, parse
/// failures) and violated mathematical preconditions (a codegenerate
/// polytope, an irregular sequence, a singular cell). The CLI maps the
/// first group to exit status 2 and the second to exit status 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("variable tables differ")]
    VariableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("polytope is not full-dimensional (affine dimension {found}, ambient {ambient})")]
    NotFullDimensional { found: usize, ambient: usize },
    #[error("polytope is not full-dimensional inside its hyperplane")]
    NotFullDimensionalInHyperplane,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,
    #[error("polytope is codegenerate: support value vanishes on ray {ray}")]
    Codegenerate { ray: String },
    #[error("support value vanishes on ray {ray}")]
    ZeroSupportValue { ray: String },
    #[error("sequence is not regular: every support value vanishes on ray {ray}")]
    NotRegular { ray: String },
    #[error("pole: factor {factor} vanishes at the evaluation point")]
    Pole { factor: String },
    #[error("substitution sends denominator factor {factor} to zero")]
    DegenerateSubstitution { factor: String },
    #[error("singular cell geometry: {0}")]
    SingularCellGeometry(String),
    #[error("lifting is not generic after {attempts} attempt(s)")]
    NonGenericLifting { attempts: usize },
    #[error("invalid tiling: {0}")]
    InvalidTiling(String),
    #[error("subset graph is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("dimension {0} is too large for this operation")]
    DimensionTooLarge(usize),
}

impl Error {
    /// True for malformed input, false for mathematical precondition failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::Parse(_)
                | Error::InvalidInput(_)
                | Error::VariableMismatch
                | Error::UnknownVariable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
