use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::Gaussian;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),

    #[error("{op}: dimension mismatch ({detail})")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("{op}: matrix is not square ({rows}x{cols})")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("inverse: matrix is singular (rank {rank} < {n})")]
    Singular { rank: usize, n: usize },

    #[error("complete_basis: input vectors are linearly dependent")]
    DependentInput,

    #[error("krylov_annihilator: start vector is zero")]
    ZeroVector,

    #[error("spectrum: factor {factor} has roots outside Q(i)")]
    SpectrumNotRepresentable { factor: Polynomial },

    #[error("spectrum: provided value {0} is not an eigenvalue (A - lambda*I has full rank)")]
    InvalidProvidedEigenvalue(Box<Gaussian>),

    #[error("spectrum: provided value {0} is listed more than once")]
    DuplicateProvidedEigenvalue(Box<Gaussian>),

    #[error("spectrum: provided eigenvalues cover multiplicity {covered}, expected {n}")]
    IncompleteSpectrum { covered: usize, n: usize },

    #[error("stage_ladder: {0} is not an eigenvalue")]
    NotAnEigenvalue(Box<Gaussian>),

    #[error("generate_case: invalid structure ({0})")]
    InvalidStructure(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
