use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{what}: size {size} exceeds the enumeration cap {cap}")]
    SizeCapExceeded { what: String, size: u128, cap: u64 },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{source_field} is not a subfield of {target}")]
    NotASubfield { source_field: String, target: String },

    #[error("all coordinates are zero")]
    ZeroVector,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("terms of unequal total degree ({0} and {1})")]
    NotHomogeneous(u32, u32),

    #[error("generator matrix is empty")]
    EmptyMatrix,

    #[error("minimum distance of the zero code is undefined")]
    ZeroCode,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("point {0} does not lie on the curve")]
    PointNotOnCurve(String),

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("no smooth curve of degree {degree} passes through the {points} given points; try a larger degree")]
    NoCurveFound { degree: u32, points: usize },

    #[error("curve degree {degree} must exceed the twist {twist}")]
    DegreeTooSmall { degree: u32, twist: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::SizeCapExceeded { .. } => "SizeCapExceeded",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotASubfield { .. } => "NotASubfield",
            Error::ZeroVector => "ZeroVector",
            Error::Parse(_) => "ParseError",
            Error::NotHomogeneous(..) => "NotHomogeneous",
            Error::EmptyMatrix => "EmptyMatrix",
            Error::ZeroCode => "ZeroCode",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::PointNotOnCurve(_) => "PointNotOnCurve",
            Error::EmptyPointSet => "EmptyPointSet",
            Error::NoCurveFound { .. } => "NoCurveFound",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::Domain(_) => "DomainError",
            Error::Io(_) => "IoError",
        }
    }

    pub(crate) fn cap(what: impl Into<String>, size: u128, cap: u64) -> Error {
        Error::SizeCapExceeded { what: what.into(), size, cap }
    }
}
