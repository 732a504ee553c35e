use thiserror::Error;

use crate::linalg::Field;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("directed cycle through `{0}`")]
    Cycle(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("map is not monotone: {lower} < {upper} but {image_lower} is not <= {image_upper}")]
    NotMonotone {
        lower: String,
        upper: String,
        image_lower: String,
        image_upper: String,
    },

    #[error("simplicial complex description has no simplices")]
    EmptyComplex,

    #[error("shape error: {0}")]
    Shape(String),

    #[error("d∘d is nonzero starting at degree {0}")]
    NotDifferential(i32),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),

    #[error("components do not commute with differentials at degree {0}")]
    NotChainMap(i32),

    #[error("not functorial: composites {from} -> {to} through `{via_a}` and `{via_b}` differ")]
    NotFunctorial {
        from: String,
        to: String,
        via_a: String,
        via_b: String,
    },

    #[error("naturality fails on cover {0} < {1}")]
    NotNatural(String, String),

    #[error("base mismatch: {0}")]
    BaseMismatch(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("bireflection refuted at `{0}`")]
    NotVerified(String),

    #[error("object is not compact: {0}")]
    NotCompact(String),

    #[error("tail strides differ: {0} vs {1}")]
    StrideMismatch(u32, u32),

    #[error("unsupported directed system: {0}")]
    UnsupportedSystem(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{file}:{line}: {message} (at `{token}`)")]
    Parse {
        file: String,
        line: usize,
        token: String,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
