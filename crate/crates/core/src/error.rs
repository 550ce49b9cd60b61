use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("expected a {expected}x{expected} matrix, got {actual}x{actual}")]
    WrongDimension { expected: usize, actual: usize },

    #[error("unit-trace invariant violated: trace = {trace}")]
    NotUnitTrace { trace: f64 },

    #[error("positive-semidefinite invariant violated: eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPsd { min_eigenvalue: f64, tolerance: f64 },

    #[error("unit-norm invariant violated: norm = {norm}")]
    NotNormalized { norm: f64 },

    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    Domain {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("mixer rows are not orthonormal: max deviation {deviation:e}")]
    NotOrthonormal { deviation: f64 },

    #[error("internal defect: {0}")]
    Defect(String),
}
