use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("period must be at least 2, got {0}")]
    InvalidPeriod(usize),
    #[error("entry ({i}, {j}) has row outside 1..={n}")]
    RowOutOfRange { i: i64, j: i64, n: usize },
    #[error("entry ({i}, {j}) must be positive")]
    ZeroEntry { i: i64, j: i64 },
    #[error("entry ({i}, {j}) listed more than once")]
    DuplicateEntry { i: i64, j: i64 },
    #[error("entries must be sorted by (row, column)")]
    UnsortedEntries,
    #[error("matrix has a nonzero diagonal entry in row {0}")]
    NonzeroDiagonal(i64),
    #[error("expected a vector with {expected} parts, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("algebra mismatch: expected (n, r) = ({}, {}), found ({}, {})", .expected.0, .expected.1, .found.0, .found.1)]
    Mismatch {
        expected: (usize, u64),
        found: (usize, u64),
    },
    #[error("matrix has weight {sigma} but the algebra has degree {r}")]
    DegreeMismatch { sigma: u64, r: u64 },
    #[error("invalid coefficient {0:?}")]
    BadCoefficient(String),
    #[error("invalid generator {0:?}")]
    BadGenerator(String),
    #[error("generator index {index} outside 1..={n}")]
    IndexOutOfRange { index: i64, n: usize },
    #[error("the index list must be nonempty")]
    EmptyList,
    #[error("loop index must be nonzero")]
    ZeroLoop,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
