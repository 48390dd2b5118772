use crate::monad::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid monad: {0}")]
    InvalidMonad(ValidationReport),
    #[error("restriction to x{index} = 0 is not a valid monad: {report}")]
    InvalidRestriction { index: usize, report: ValidationReport },
    #[error("unknown gallery item `{0}`")]
    UnknownGallery(String),
    #[error("no valid monad found in {0} tries")]
    ExhaustedTries(usize),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("the cohomology sheaf is not locally free")]
    NotLocallyFree,
    #[error("{0} requires n >= 2")]
    UnsupportedDimension(&'static str),
    #[error("cohomological degree {p} is outside 0..={n}")]
    DegreeOutOfRange { p: usize, n: usize },
    #[error("empty twist window [{k_min}, {k_max}]")]
    EmptyWindow { k_min: i64, k_max: i64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
