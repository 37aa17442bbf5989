use thiserror::Error;

/// Errors raised by the toolkit. Each variant carries enough context to
/// identify the offending object without a debugger.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid tableau: {0}")]
    Tableau(String),
    #[error("row index {0} out of range 1..{1}")]
    RowIndex(usize, usize),
    #[error("invalid map: {0}")]
    Map(String),
    #[error("hourglass validation failed: {0}")]
    Hourglass(String),
    #[error("trip walk did not terminate from boundary label {0}")]
    TripWalk(usize),
    #[error("Aexc sets are not nested and graded: {0}")]
    NotGraded(String),
    #[error("no move of this kind matches at the given site: {0}")]
    NoMatch(String),
    #[error("stuck frontier: {0}")]
    StuckFrontier(String),
    #[error("unclassifiable crossing: {0}")]
    Crossing(String),
    #[error("4-row shapes only")]
    FourRowsOnly,
    #[error("invalid web: {0}")]
    Web(String),
    #[error("site is not claw-contractible: {0}")]
    NotContractible(String),
    #[error("boundary size {0} is not divisible by 3")]
    NotDivisibleByThree(usize),
    #[error("invalid dimer data: {0}")]
    Dimer(String),
    #[error("invalid polynomial: {0}")]
    Polynomial(String),
    #[error("inhomogeneous polynomial: {0}")]
    Inhomogeneous(String),
    #[error("matrix shape mismatch: expected {0}x{1}, got {2}x{3}")]
    MatrixShape(usize, usize, usize, usize),
    #[error("catalog entry {0}: {1}")]
    Catalog(String, String),
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
