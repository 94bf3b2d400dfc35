use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Domain errors carry enough context to be reported as machine-readable
/// objects by the CLI; `kind` gives the stable tag.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("x^2 + ({p})x + ({q}) is not expanding")]
    NotExpanding { p: i64, q: i64 },
    #[error("|q| must be at least 2, got q = {q}")]
    DeterminantTooSmall { q: i64 },
    #[error("jump offset must be at least -1, got m = {m}")]
    BadJump { m: i64 },
    #[error("series tail still above threshold after {cap} terms")]
    TailNotConverged { cap: usize },
    #[error("digit {digit} is not in the difference alphabet")]
    BadDigit { digit: i64 },
    #[error("expansion word has an empty period")]
    EmptyPeriod,
    #[error("search box holds {states} states, over the cap of {cap}")]
    BoxTooLarge { states: u128, cap: u64 },
    #[error("period matrix I - M^-P is singular")]
    SingularPeriodMatrix,
    #[error("closed-form classifier requires |q| >= 3 when m >= 0, got q = {q}")]
    TheoremOutOfScope { q: i64 },
    #[error("{count} points exceed the budget of {budget}")]
    PointBudgetExceeded { count: u128, budget: u64 },
    #[error("raster must have positive pixel and coordinate extent, got {width}x{height}")]
    BadImageSize { width: u32, height: u32 },
}

impl Error {
    /// Stable machine-readable tag for this error.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotExpanding { .. } => "NotExpanding",
            Error::DeterminantTooSmall { .. } => "DeterminantTooSmall",
            Error::BadJump { .. } => "BadJump",
            Error::TailNotConverged { .. } => "TailNotConverged",
            Error::BadDigit { .. } => "BadDigit",
            Error::EmptyPeriod => "EmptyPeriod",
            Error::BoxTooLarge { .. } => "BoxTooLarge",
            Error::SingularPeriodMatrix => "SingularPeriodMatrix",
            Error::TheoremOutOfScope { .. } => "TheoremOutOfScope",
            Error::PointBudgetExceeded { .. } => "PointBudgetExceeded",
            Error::BadImageSize { .. } => "BadImageSize",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
